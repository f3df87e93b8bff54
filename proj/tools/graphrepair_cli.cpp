// graphrepair: command-line front end.
//
// Exit codes: 0 success, 2 parse error, 3 parameter error, 4 verification failure,
// 5 LP size cap exceeded.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphrepair/bounds.hpp"
#include "graphrepair/codes_coop.hpp"
#include "graphrepair/codes_dm.hpp"
#include "graphrepair/codes_pm.hpp"
#include "graphrepair/cut_lp.hpp"
#include "graphrepair/ensembles.hpp"
#include "graphrepair/errors.hpp"
#include "graphrepair/graphs.hpp"
#include "graphrepair/repair_engine.hpp"

using namespace graphrepair;

namespace {

constexpr int kParseError = 2;
constexpr int kParamError = 3;
constexpr int kMismatch = 4;
constexpr int kSizeCap = 5;

struct SeedOption {
  std::optional<std::uint64_t> flag;

  // --seed, then GRAPHREPAIR_SEED, then fresh entropy.
  std::uint64_t resolve(std::ostream& out) const {
    if (flag) {
      out << "config seed=" << *flag << " source=flag\n";
      return *flag;
    }
    if (const char* env = std::getenv("GRAPHREPAIR_SEED")) {
      try {
        std::size_t used = 0;
        const std::uint64_t s = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        out << "config seed=" << s << " source=env\n";
        return s;
      } catch (const std::exception&) {
        throw ParameterError(std::string("GRAPHREPAIR_SEED is not an unsigned integer: ") + env);
      }
    }
    std::random_device rd;
    const std::uint64_t s = (std::uint64_t{rd()} << 32) ^ rd();
    out << "config seed=" << s << " source=entropy\n";
    return s;
  }
};

void write_transcript_file(const std::string& path, const Transcript& t) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw ParameterError("cannot write transcript file '" + path + "'");
  t.write(f);
}

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoul(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("bad vertex list '" + text + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct RepairArgs {
  std::string graph;
  Vertex failed = 0;
  std::string code = "pm";
  std::size_t k = 0;
  std::optional<std::size_t> d;
  std::string protocol = "ip";
  unsigned field = 8;
  std::string transcript;
  SeedOption seed;
};

int cmd_repair(const RepairArgs& a) {
  std::cout << "config command=repair\n";
  std::cout << "config graph=" << a.graph << " failed=" << a.failed << " code=" << a.code
            << " k=" << a.k << " protocol=" << a.protocol << " field=GF(2^" << a.field << ")\n";
  const std::uint64_t seed = a.seed.resolve(std::cout);
  const Graph g = load_graph(a.graph);
  const Field f = Field::of_degree(a.field);
  const Protocol protocol = a.protocol == "af" ? Protocol::AF : Protocol::IP;

  std::optional<PmCode> pm;
  std::optional<DmCode> dm;
  std::size_t d = 0, l = 0;
  if (a.code == "pm") {
    pm.emplace(f, g.vertex_count(), a.k);
    d = pm->d();
    l = pm->l();
  } else {
    dm.emplace(f, g.vertex_count(), a.k);
    d = dm->d();
    l = dm->l();
  }
  if (a.d && *a.d != d) {
    throw ParameterError("code " + a.code + " with k=" + std::to_string(a.k) + " on n=" +
                         std::to_string(g.vertex_count()) + " has d=" + std::to_string(d));
  }
  const HelperSelection sel = select_helpers(g, a.failed, d);
  const RepairTree tree = build_repair_tree(g, a.failed, sel.helpers);
  std::cout << "config n=" << g.vertex_count() << " d=" << d << " l=" << l << '\n';
  std::cout << "tree";
  for (Vertex v : tree.non_root()) std::cout << ' ' << v << "->" << tree.parent(v);
  std::cout << '\n';

  RepairResult res;
  Column erased;
  if (pm) {
    Rng rng(seed);
    const PmCodeword word = pm->encode(PmMessage::random(f, pm->l(), rng));
    const PmAdapter adapter(*pm, word, a.failed);
    res = run_repair(tree, adapter, protocol);
    erased = adapter.erased();
  } else {
    const DmCodeword word = dm->sample(seed);
    const DmAdapter adapter(*dm, word, a.failed);
    res = run_repair(tree, adapter, protocol);
    erased = adapter.erased();
  }
  const CodeProfile profile{g.vertex_count(), a.k, d, l, 1};
  const Rational reference =
      protocol == Protocol::AF ? af_formula(tree.layers(), profile) : tree_bound(tree, profile);
  const bool recovered = res.column == erased;
  const bool matches = Rational(res.transcript.total()) == reference;
  std::cout << "beta " << res.transcript.total() << '\n';
  std::cout << "reference " << to_string(reference)
            << (protocol == Protocol::AF ? " (accumulate-and-forward closed form)" : " (tree lower bound)")
            << (matches ? " match" : " MISMATCH") << '\n';
  std::cout << "recovery " << (recovered ? "OK" : "FAIL") << '\n';
  write_transcript_file(a.transcript, res.transcript);
  return recovered && matches ? 0 : kMismatch;
}

// ---------------------------------------------------------------------------

struct BoundArgs {
  std::string graph;
  Vertex failed = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  std::optional<std::size_t> l;
};

int cmd_bound(const BoundArgs& a) {
  const Graph g = load_graph(a.graph);
  const std::size_t l = a.l.value_or(a.d - a.k + 1);
  std::cout << "config command=bound\n";
  std::cout << "config graph=" << a.graph << " failed=" << a.failed << " k=" << a.k << " d=" << a.d
            << " l=" << l << '\n';
  const CodeProfile profile{g.vertex_count(), a.k, a.d, l, 1};
  profile.validate();
  const HelperSelection sel = select_helpers(g, a.failed, a.d);
  const RepairTree tree = build_repair_tree(g, a.failed, sel.helpers);
  std::cout << "beta_per_helper " << to_string(profile.beta()) << '\n';
  std::cout << "layers";
  std::vector<std::size_t> sizes;
  for (const auto& layer : sel.layers.layers) {
    sizes.push_back(layer.size());
    std::cout << ' ' << layer.size();
  }
  std::cout << '\n';
  for (std::size_t j = 1; j <= sizes.size(); ++j) {
    std::cout << "layer_bound " << j << ' '
              << to_string(layer_bound(profile, std::span(sizes).subspan(j - 1))) << '\n';
  }
  std::cout << "tree_bound " << to_string(tree_bound(tree, profile)) << '\n';
  std::cout << "af_formula " << to_string(af_formula(sel.layers, profile)) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

struct LpArgs {
  std::string graph;
  Vertex failed = 0;
  std::string helpers = "auto";
  std::size_t k = 0;
  std::optional<std::size_t> d;
  std::string beta = "1";
};

int cmd_lp(const LpArgs& a) {
  const Graph g = load_graph(a.graph);
  const Rational beta = parse_rational(a.beta);
  std::vector<Vertex> helpers;
  if (a.helpers == "auto") {
    if (!a.d) throw ParameterError("--helpers auto needs --d");
    helpers = select_helpers(g, a.failed, *a.d).helpers;
  } else {
    helpers = parse_vertex_list(a.helpers);
    if (a.d && *a.d != helpers.size()) throw ParameterError("--d differs from the helper count");
  }
  std::cout << "config command=lp\n";
  std::cout << "config graph=" << a.graph << " failed=" << a.failed << " k=" << a.k
            << " d=" << helpers.size() << " beta=" << to_string(beta) << '\n';
  const CutLP lp = lp_bound(g, a.failed, helpers, a.k, beta);
  write_lp_report(std::cout, lp);
  if (lp.status != LpStatus::Optimal) return kMismatch;

  // IP total on the BFS repair tree, in the same units.
  const RepairTree tree = build_repair_tree(g, a.failed, lp.helpers);
  const Rational ip = tree_bound(tree, unit_profile(g.vertex_count(), a.k, lp.d())) * beta;
  std::cout << "ip_tree_bound " << to_string(ip) << '\n';
  std::cout << "gap " << to_string(ip - lp.value) << '\n';
  return lp_certificate_check(lp) ? 0 : kMismatch;
}

// ---------------------------------------------------------------------------

struct EnsembleArgs {
  std::string family = "gnp";
  std::size_t n = 0;
  double p = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t trials = 1;
  std::size_t jobs = 1;
  std::string out;
  SeedOption seed;
};

int cmd_ensemble(const EnsembleArgs& a) {
  EnsembleSpec spec;
  spec.family = parse_family(a.family);
  spec.n = a.n;
  spec.p = a.p;
  spec.r = a.r;
  spec.k = a.k;
  spec.d = a.d;
  spec.trials = a.trials;
  spec.jobs = a.jobs;
  std::cout << "config command=ensemble\n";
  std::cout << "config family=" << to_string(spec.family) << " n=" << spec.n
            << (spec.family == Family::Gnp ? " p=" : " r=") << spec.param_text() << " k=" << spec.k
            << " d=" << spec.d << " trials=" << spec.trials << '\n';
  spec.seed = a.seed.resolve(std::cout);
  spec.validate();
  write_threshold_report(std::cout, check_threshold_conditions(spec));
  const EnsembleResult res = run_trials(spec);
  write_summary(std::cout, res.summary);
  if (a.out.empty()) {
    write_csv(std::cout, spec, res.records);
  } else {
    std::ofstream f(a.out);
    if (!f) throw ParameterError("cannot write '" + a.out + "'");
    write_csv(f, spec, res.records);
    std::cout << "csv " << a.out << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct GwArgs {
  GwSpec spec;
  SeedOption seed;
};

int cmd_gw(GwArgs a) {
  std::cout << "config command=gw\n";
  std::cout << "config p=" << a.spec.p << " t=" << a.spec.t << " s=" << a.spec.s << " d=" << a.spec.d
            << " k=" << a.spec.k << " trees=" << a.spec.trials << '\n';
  a.spec.seed = a.seed.resolve(std::cout);
  const GwReport rep = galton_watson_check(a.spec);
  write_gw_report(std::cout, a.spec, rep);
  return rep.af_within() && rep.gap_within() && rep.ip_never_worse ? 0 : kMismatch;
}

// ---------------------------------------------------------------------------

struct AppendixArgs {
  std::size_t n = 6;
  std::size_t k = 3;
  unsigned field = 8;
  std::string transcript;
  SeedOption seed;
};

int cmd_appendix(const AppendixArgs& a) {
  std::cout << "config command=appendix\n";
  std::cout << "config n=" << a.n << " k=" << a.k << " field=GF(2^" << a.field << ")\n";
  const std::uint64_t seed = a.seed.resolve(std::cout);
  const TwoNeighborCode code(Field::of_degree(a.field), a.n, a.k);
  const Graph g = two_neighbor_graph(a.k, a.n);
  const auto word = code.sample(seed);
  const TwoNeighborRepair res = code.repair(word, g);
  const std::size_t expected = (code.d() + 1) * code.beta();
  std::cout << "config d=" << code.d() << " l=" << code.l() << " beta=" << code.beta() << '\n';
  for (const auto& [edge, traffic] : res.transcript.edges())
    std::cout << "edge " << edge.first << ' ' << edge.second << ' ' << traffic.count << '\n';
  std::cout << "total " << res.transcript.total() << " expected " << expected << '\n';
  const bool ok = res.recovered == word[0];
  std::cout << "recovery " << (ok ? "OK" : "FAIL") << '\n';
  write_transcript_file(a.transcript, res.transcript);
  return ok && res.transcript.total() == expected ? 0 : kMismatch;
}

// ---------------------------------------------------------------------------

struct CoopArgs {
  std::size_t n = 5;
  std::size_t k = 2;
  unsigned field = 8;
  std::string transcript;
  SeedOption seed;
};

int cmd_coop(const CoopArgs& a) {
  std::cout << "config command=coop\n";
  std::cout << "config n=" << a.n << " k=" << a.k << " field=GF(2^" << a.field << ")\n";
  const std::uint64_t seed = a.seed.resolve(std::cout);
  const CoopCode code(Field::of_degree(a.field), a.n, a.k);
  const MultiTopology topo = path_topology(a.n, a.k);
  const CoopCodeword word = code.sample(seed);
  const MultiRepairResult res = run_multi_ip(topo, code, word);
  const CodeProfile profile{a.n, a.k, code.d(), code.l(), 2};
  const Rational bound = multi_tree_bound(res.tree, profile);
  std::cout << "config d=" << code.d() << " l=" << code.l() << " w=" << topo.w << '\n';
  for (const auto& [edge, traffic] : res.transcript.edges())
    std::cout << "edge " << edge.first << ' ' << edge.second << ' ' << traffic.count << '\n';
  std::cout << "helper_traffic " << res.helper_traffic << " bound " << to_string(bound)
            << (Rational(res.helper_traffic) == bound ? " match" : " MISMATCH") << '\n';
  std::cout << "total " << res.transcript.total() << '\n';
  const bool ok0 = res.node0 == word.symbols[0], ok1 = res.node1 == word.symbols[1];
  std::cout << "recovery node0 " << (ok0 ? "OK" : "FAIL") << " node1 " << (ok1 ? "OK" : "FAIL") << '\n';
  write_transcript_file(a.transcript, res.transcript);
  return ok0 && ok1 && Rational(res.helper_traffic) == bound ? 0 : kMismatch;
}

void add_seed(CLI::App* app, SeedOption& s) {
  app->add_option_function<std::uint64_t>(
      "--seed", [&s](const std::uint64_t& v) { s.flag = v; },
      "RNG seed (fallback: GRAPHREPAIR_SEED, then entropy)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Node repair of regenerating codes on graphs"};
  app.require_subcommand(1);
  int status = 0;

  RepairArgs repair;
  auto* c_repair = app.add_subcommand("repair", "Run AF or IP repair of one column along the BFS tree");
  c_repair->add_option("--graph", repair.graph, "Graph file or builtin (star:d, path:d, complete:n, fig3:k, fig4)")->required();
  c_repair->add_option("--failed", repair.failed, "Failed vertex");
  c_repair->add_option("--code", repair.code, "pm or dm")->check(CLI::IsMember({"pm", "dm"}));
  c_repair->add_option("--k", repair.k, "Code dimension")->required();
  c_repair->add_option("--d", repair.d, "Number of helpers (checked against the code)");
  c_repair->add_option("--protocol", repair.protocol, "af or ip")->check(CLI::IsMember({"af", "ip"}));
  c_repair->add_option("--field", repair.field, "Field degree m of GF(2^m)")->check(CLI::IsMember({8, 16}));
  c_repair->add_option("--transcript", repair.transcript, "Write the transcript here");
  add_seed(c_repair, repair.seed);
  c_repair->callback([&] { status = cmd_repair(repair); });

  BoundArgs bound;
  auto* c_bound = app.add_subcommand("bound", "Tree, layer and accumulate-and-forward bounds");
  c_bound->add_option("--graph", bound.graph)->required();
  c_bound->add_option("--failed", bound.failed);
  c_bound->add_option("--k", bound.k)->required();
  c_bound->add_option("--d", bound.d)->required();
  c_bound->add_option("--l", bound.l, "Symbols per node (default d-k+1)");
  c_bound->callback([&] { status = cmd_bound(bound); });

  LpArgs lp;
  auto* c_lp = app.add_subcommand("lp", "Solve the cut linear program exactly");
  c_lp->add_option("--graph", lp.graph)->required();
  c_lp->add_option("--failed", lp.failed);
  c_lp->add_option("--helpers", lp.helpers, "Comma-separated helper list or 'auto'");
  c_lp->add_option("--k", lp.k)->required();
  c_lp->add_option("--d", lp.d);
  c_lp->add_option("--beta", lp.beta, "Per-helper download as p/q");
  c_lp->callback([&] { status = cmd_lp(lp); });

  EnsembleArgs ens;
  auto* c_ens = app.add_subcommand("ensemble", "Monte-Carlo repair totals on random graphs");
  c_ens->add_option("--family", ens.family)->check(CLI::IsMember({"gnp", "regular"}));
  c_ens->add_option("--n", ens.n)->required();
  c_ens->add_option("--p", ens.p);
  c_ens->add_option("--r", ens.r);
  c_ens->add_option("--k", ens.k)->required();
  c_ens->add_option("--d", ens.d)->required();
  c_ens->add_option("--trials", ens.trials);
  c_ens->add_option("--jobs", ens.jobs);
  c_ens->add_option("--out", ens.out, "CSV file (default: stdout)");
  add_seed(c_ens, ens.seed);
  c_ens->callback([&] { status = cmd_ensemble(ens); });

  GwArgs gw;
  gw.spec.d = 12;
  gw.spec.k = 11;
  auto* c_gw = app.add_subcommand("gw", "Galton-Watson repair-tree expectations");
  c_gw->add_option("--p", gw.spec.p);
  c_gw->add_option("--t", gw.spec.t);
  c_gw->add_option("--s", gw.spec.s);
  c_gw->add_option("--d", gw.spec.d);
  c_gw->add_option("--k", gw.spec.k);
  c_gw->add_option("--trials", gw.spec.trials);
  add_seed(c_gw, gw.seed);
  c_gw->callback([&] { status = cmd_gw(gw); });

  AppendixArgs app_args;
  auto* c_app = app.add_subcommand("appendix", "Two-neighbor repair with helper exchange");
  c_app->add_option("--n", app_args.n);
  c_app->add_option("--k", app_args.k);
  c_app->add_option("--field", app_args.field)->check(CLI::IsMember({8, 16}));
  c_app->add_option("--transcript", app_args.transcript);
  add_seed(c_app, app_args.seed);
  c_app->callback([&] { status = cmd_appendix(app_args); });

  CoopArgs coop;
  auto* c_coop = app.add_subcommand("coop", "Cooperative repair of two failed nodes");
  c_coop->add_option("--n", coop.n);
  c_coop->add_option("--k", coop.k);
  c_coop->add_option("--field", coop.field)->check(CLI::IsMember({8, 16}));
  c_coop->add_option("--transcript", coop.transcript);
  add_seed(c_coop, coop.seed);
  c_coop->callback([&] { status = cmd_coop(coop); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParseError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const SizeLimitExceeded& e) {
    std::cerr << "size limit: " << e.what() << '\n';
    return kSizeCap;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParamError;
  } catch (const GraphError& e) {
    std::cerr << "graph error: " << e.what() << '\n';
    return kParamError;
  } catch (const DimensionMismatch& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kParamError;
  } catch (const RetriesExhausted& e) {
    std::cerr << "sampling error: " << e.what() << '\n';
    return kParamError;
  }
  std::cout.flush();
  return status;
}
