#include <doctest.h>

#include <cmath>
#include <sstream>

#include "graphrepair/ensembles.hpp"
#include "graphrepair/errors.hpp"

using namespace graphrepair;

TEST_CASE("G(n,p) sampling is seeded and has the right edge density") {
  CHECK(sample_gnp(60, 0.1, 5) == sample_gnp(60, 0.1, 5));
  CHECK_FALSE(sample_gnp(60, 0.1, 5) == sample_gnp(60, 0.1, 6));
  const std::size_t n = 200;
  const double p = 0.05;
  const double pairs = n * (n - 1) / 2.0;
  const double sd = std::sqrt(pairs * p * (1 - p));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const double m = static_cast<double>(sample_gnp(n, p, seed).edge_count());
    CHECK(std::abs(m - pairs * p) <= 3 * sd);
  }
  // n = 2: a single Bernoulli(p) edge.
  std::size_t hits = 0;
  const std::size_t reps = 4000;
  for (std::size_t i = 0; i < reps; ++i) hits += sample_gnp(2, 0.3, derive_seed(1, i)).edge_count();
  CHECK(std::abs(static_cast<double>(hits) / reps - 0.3) <= 3 * std::sqrt(0.3 * 0.7 / reps));
}

TEST_CASE("regular sampling gives simple r-regular graphs") {
  for (auto [n, r] : {std::pair<std::size_t, std::size_t>{4, 3}, {10, 3}, {50, 4}, {101, 6}}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const Graph g = sample_regular(n, r, seed);
      CHECK(g.vertex_count() == n);
      CHECK(g.edge_count() == n * r / 2);
      for (Vertex v = 0; v < n; ++v) CHECK(g.degree(v) == r);
    }
  }
  CHECK(sample_regular(4, 3, 9) == complete_graph(4));
  CHECK(sample_regular(30, 3, 2) == sample_regular(30, 3, 2));
}

TEST_CASE("spec validation") {
  EnsembleSpec s;
  s.n = 50;
  s.p = 0.2;
  s.k = 3;
  s.d = 5;
  CHECK_NOTHROW(s.validate());
  CHECK(s.param_text() == "0.2");
  auto bad = s;
  bad.p = 1.0;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = s;
  bad.d = 50;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = s;
  bad.family = Family::Regular;
  bad.r = 3;
  bad.n = 51;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad.n = 50;
  CHECK_NOTHROW(bad.validate());
  CHECK(bad.param_text() == "3");
  CHECK(parse_family("regular") == Family::Regular);
  CHECK_THROWS_AS(parse_family("ba"), ParameterError);
}

TEST_CASE("expected ball sizes grow monotonically up to n-1") {
  const auto b = expected_ball_sizes_gnp(500, 0.035, 6);
  CHECK(b[0] == doctest::Approx(0));
  CHECK(b[1] == doctest::Approx(499 * 0.035));
  for (std::size_t i = 1; i < b.size(); ++i) {
    CHECK(b[i] >= b[i - 1]);
    CHECK(b[i] <= 499.0 + 1e-9);
  }
  const auto r = expected_ball_sizes_regular(100, 4, 4);
  CHECK(r[1] == doctest::Approx(4));
  CHECK(r[2] <= 4 + 12 + 1e-9);
}

TEST_CASE("threshold depth and window for the large sparse setting") {
  EnsembleSpec s;
  s.n = 500;
  s.p = 0.035;
  s.k = 149;
  s.d = 150;
  const ThresholdReport rep = check_threshold_conditions(s);
  REQUIRE(rep.depth);
  CHECK(*rep.depth == 2);
  CHECK(rep.in_window);
  REQUIRE(rep.window);
  CHECK(rep.window->first < 0.035);
  CHECK(rep.window->second > 0.035);
  const auto w = gnp_window(500, 150, 2);
  REQUIRE(w);
  CHECK(w->first == doctest::Approx(rep.window->first));

  // Dense graphs put every helper in the first layer.
  s.p = 0.9;
  s.d = 20;
  s.k = 10;
  CHECK(*check_threshold_conditions(s).depth == 1);
  std::ostringstream out;
  write_threshold_report(out, rep);
  CHECK(out.str().find("depth 2") != std::string::npos);
}

TEST_CASE("trials are reproducible and independent of the job count") {
  EnsembleSpec s;
  s.n = 120;
  s.p = 0.06;
  s.k = 20;
  s.d = 25;
  s.trials = 24;
  s.seed = 99;
  s.jobs = 1;
  const EnsembleResult one = run_trials(s);
  s.jobs = 4;
  const EnsembleResult four = run_trials(s);
  std::ostringstream a, b;
  write_csv(a, s, one.records);
  write_csv(b, s, four.records);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("trial,seed,n,param,d,k,t,feasible,beta_af,beta_ip\n", 0) == 0);
  CHECK(one.summary.trials == 24);
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    const TrialRecord& r = one.records[i];
    CHECK(r.seed == derive_seed(99, i));
    if (!r.connected) continue;
    CHECK(*r.beta_ip <= *r.beta_af);
    std::size_t total = 0;
    for (auto x : r.layer_sizes) total += x;
    CHECK(total == s.d);
  }
}

TEST_CASE("dense G(n,p): depth one and both totals equal d") {
  EnsembleSpec s;
  s.n = 40;
  s.p = 0.95;
  s.k = 5;
  s.d = 10;
  s.trials = 10;
  s.seed = 3;
  const EnsembleResult res = run_trials(s);
  for (const auto& r : res.records) {
    REQUIRE(r.connected);
    CHECK(r.t == 1);
    CHECK(*r.beta_af == 10);
    CHECK(*r.beta_ip == 10);
  }
  CHECK(res.summary.ip_below_af == 0);
}

TEST_CASE("Galton-Watson layers and expectations") {
  GwSpec spec;
  spec.p = 0.5;
  spec.t = 3;
  spec.d = 12;
  spec.k = 11;
  spec.trials = 3000;
  spec.seed = 17;
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto sizes = sample_gw_layers(spec, rng);
    REQUIRE(sizes.size() == 3);
    CHECK(sizes[0] >= 1);
    CHECK(sizes[0] <= 2);
    CHECK(sizes[1] >= sizes[0]);
    CHECK(sizes[1] <= 2 * sizes[0]);
    CHECK(sizes[0] + sizes[1] + sizes[2] == 12);
  }
  spec.s = 0;
  const GwReport none = galton_watson_check(spec);
  CHECK(none.mean_gap == 0);
  CHECK(none.expected_gap == 0);
  CHECK(none.af_within());
  double previous = -1;
  for (std::size_t s = 0; s < 3; ++s) {
    spec.s = s;
    const GwReport rep = galton_watson_check(spec);
    CHECK(rep.af_within());
    CHECK(rep.gap_within());
    CHECK(rep.ip_never_worse);
    CHECK(rep.expected_gap >= previous);
    previous = rep.expected_gap;
  }
  spec.s = 3;
  CHECK_THROWS_AS(galton_watson_check(spec), ParameterError);
  spec.s = 1;
  spec.d = 4;
  CHECK_THROWS_AS(galton_watson_check(spec), ParameterError);
}
