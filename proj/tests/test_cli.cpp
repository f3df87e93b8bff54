#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / ("graphrepair_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  const std::string cmd = std::string(GRAPHREPAIR_CLI) + " " + args + " > " + path.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::filesystem::remove(path);
  return r;
}

bool has(const Run& r, const std::string& text) { return r.out.find(text) != std::string::npos; }

}  // namespace

TEST_CASE("repair on the star prints the totals") {
  const Run ip = run("repair --graph star:4 --code pm --k 3 --protocol ip --seed 1");
  CHECK(ip.code == 0);
  CHECK(has(ip, "beta 5\n"));
  CHECK(has(ip, "recovery OK"));
  CHECK(has(ip, "config seed=1 source=flag"));
  const Run af = run("repair --graph star:4 --code pm --k 3 --protocol af --seed 1");
  CHECK(af.code == 0);
  CHECK(has(af, "beta 7\n"));
}

TEST_CASE("seed falls back to the environment") {
  const Run r = run("repair --graph star:4 --code pm --k 3 --protocol ip --seed 5");
  const Run e = run("repair --graph star:4 --code pm --k 3 --protocol ip");
  CHECK(r.code == 0);
  CHECK(e.code == 0);
  CHECK(has(e, "config seed="));
  ::setenv("GRAPHREPAIR_SEED", "5", 1);
  const Run env = run("repair --graph star:4 --code pm --k 3 --protocol ip");
  ::unsetenv("GRAPHREPAIR_SEED");
  CHECK(has(env, "config seed=5 source=env"));
}

TEST_CASE("lp subcommand reports exact values") {
  const Run r = run("lp --graph fig4 --helpers 1,2,3,4,5,6 --k 5");
  CHECK(r.code == 0);
  CHECK(has(r, "value 27/4"));
  CHECK(has(r, "ip_tree_bound 7"));
  CHECK(has(r, "gap 1/4"));
  const Run c = run("lp --graph complete:7 --helpers auto --d 6 --k 3 --beta 1");
  CHECK(c.code == 0);
  CHECK(has(c, "value 6\n"));
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("repair --graph star:4").code == 2);
  CHECK(run("repair --graph star:4 --code xx --k 3").code == 2);
  CHECK(run("lp --graph fig4 --helpers 1,2 --k 1 --beta 1/0").code == 2);
  CHECK(run("repair --graph /nonexistent/file --k 3").code == 2);
  CHECK(run("repair --graph star:4 --code pm --k 9 --seed 1").code == 3);
  CHECK(run("ensemble --n 10 --p 1.5 --k 2 --d 3 --seed 1").code == 3);
  CHECK(run("lp --graph complete:20 --helpers auto --d 17 --k 2").code == 5);

  const auto path = std::filesystem::temp_directory_path() / "graphrepair_split_graph.txt";
  {
    std::ofstream g(path);
    g << "4 2\n0 1\n2 3\n";
  }
  const Run split = run("lp --graph " + path.string() + " --helpers 1,2,3 --k 2");
  CHECK(split.code == 4);
  CHECK(has(split, "status infeasible"));
  std::filesystem::remove(path);
}

TEST_CASE("appendix and coop subcommands") {
  const Run a = run("appendix --n 6 --k 3 --seed 2");
  CHECK(a.code == 0);
  CHECK(has(a, "total 160 expected 160"));
  const Run c = run("coop --n 5 --k 2 --seed 2");
  CHECK(c.code == 0);
  CHECK(has(c, "helper_traffic 384 bound 384 match"));
}
