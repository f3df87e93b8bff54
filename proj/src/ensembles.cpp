#include "graphrepair/ensembles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <thread>

#include "graphrepair/errors.hpp"

namespace graphrepair {

std::string to_string(Family f) { return f == Family::Gnp ? "gnp" : "regular"; }

Family parse_family(const std::string& name) {
  if (name == "gnp") return Family::Gnp;
  if (name == "regular") return Family::Regular;
  throw ParameterError("unknown family '" + name + "' (expected gnp or regular)");
}

void EnsembleSpec::validate() const {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  if (jobs < 1) throw ParameterError("jobs must be at least 1");
  if (n < 2) throw ParameterError("n must be at least 2");
  if (k < 1 || k > d || d > n - 1) throw ParameterError("need 1 <= k <= d <= n-1");
  if (family == Family::Gnp) {
    if (!(p > 0 && p < 1)) throw ParameterError("need 0 < p < 1");
  } else {
    if (r < 3 || r >= n) throw ParameterError("need 3 <= r < n");
    if ((n * r) % 2 != 0) throw ParameterError("n*r must be even");
  }
}

std::string EnsembleSpec::param_text() const {
  if (family == Family::Regular) return std::to_string(r);
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, p);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Sampling

Graph sample_gnp(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

Graph sample_regular(std::size_t n, std::size_t r, std::uint64_t seed) {
  if ((n * r) % 2 != 0 || r >= n) throw ParameterError("need n*r even and r < n");
  constexpr std::size_t kRestarts = 10000;
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < kRestarts; ++attempt) {
    std::vector<Vertex> stubs;
    for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), r, v);
    Graph g(n);
    bool stuck = false;
    while (!stubs.empty() && !stuck) {
      std::size_t misses = 0;
      while (true) {
        const std::size_t i = rng.below(stubs.size());
        std::size_t j = rng.below(stubs.size() - 1);
        if (j >= i) ++j;
        const Vertex u = stubs[i], v = stubs[j];
        if (u != v && !g.has_edge(u, v)) {
          g.add_edge(u, v);
          // Remove the larger index first so the smaller stays valid.
          for (std::size_t idx : {std::max(i, j), std::min(i, j)}) {
            stubs[idx] = stubs.back();
            stubs.pop_back();
          }
          break;
        }
        if (++misses > 50 * stubs.size()) {
          stuck = true;
          break;
        }
      }
    }
    if (!stuck) return g;
  }
  throw RetriesExhausted("no simple " + std::to_string(r) + "-regular graph on " + std::to_string(n) +
                         " vertices after 10000 restarts");
}

// ---------------------------------------------------------------------------
// Depth diagnostics

std::vector<double> expected_ball_sizes_gnp(std::size_t n, double p, std::size_t max_depth) {
  std::vector<double> ball{0.0};
  double visited = 1, frontier = 1;
  for (std::size_t i = 1; i <= max_depth; ++i) {
    frontier = (static_cast<double>(n) - visited) * (1 - std::pow(1 - p, frontier));
    visited += frontier;
    ball.push_back(visited - 1);
  }
  return ball;
}

std::vector<double> expected_ball_sizes_regular(std::size_t n, std::size_t r, std::size_t max_depth) {
  std::vector<double> ball{0.0};
  const double nn = static_cast<double>(n);
  double visited = 1, frontier = 1;
  for (std::size_t i = 1; i <= max_depth; ++i) {
    // The first step uses all r edges; later vertices have r - 1 onward edges.
    const double fanout = i == 1 ? static_cast<double>(r) : static_cast<double>(r - 1);
    frontier = (nn - visited) * (1 - std::pow(1 - fanout / (nn - 1), frontier));
    visited += frontier;
    ball.push_back(visited - 1);
  }
  return ball;
}

namespace {

constexpr double kReach = 1.25;   // E|N_t| >= 1.25 d, capped halfway between d and n - 1
constexpr double kShort = 0.5;    // E|N_{t-1}| <= 0.5 d
constexpr std::size_t kMaxDepth = 64;

// Smallest p in (0, 1) with ball(p)[depth] >= target; ball sizes grow with p.
double bisect_reach(std::size_t n, std::size_t depth, double target) {
  double lo = 0, hi = 1;
  for (int it = 0; it < 200; ++it) {
    const double mid = (lo + hi) / 2;
    if (expected_ball_sizes_gnp(n, mid, depth)[depth] >= target) hi = mid;
    else lo = mid;
  }
  return hi;
}

double reach_target(std::size_t n, std::size_t d) {
  const double dd = static_cast<double>(d);
  return std::min(kReach * dd, (dd + static_cast<double>(n - 1)) / 2);
}

}  // namespace

std::optional<std::pair<double, double>> gnp_window(std::size_t n, std::size_t d, std::size_t t) {
  if (t < 1) return std::nullopt;
  const double dd = static_cast<double>(d);
  const double lo = bisect_reach(n, t, reach_target(n, d));
  const double hi = t == 1 ? 1.0 : bisect_reach(n, t - 1, kShort * dd);
  if (lo > hi) return std::nullopt;
  return std::pair{lo, hi};
}

ThresholdReport check_threshold_conditions(const EnsembleSpec& spec) {
  ThresholdReport out;
  const double n = static_cast<double>(spec.n);
  const double p = spec.family == Family::Gnp ? spec.p : static_cast<double>(spec.r) / n;
  const double target = 2 * std::log(n) + 10;
  for (std::size_t t = 1; t < kMaxDepth; ++t) {
    const double tt = static_cast<double>(t);
    const bool sparse = std::pow(n * p, tt - 1) <= n / 10;
    const bool reach = std::pow(p, tt) * std::pow(n, tt - 1) >= target;
    if (!sparse) break;  // later t only make the first condition worse
    if (reach) {
      out.surrogate_t = t;
      break;
    }
  }
  out.expected_ball = spec.family == Family::Gnp
                          ? expected_ball_sizes_gnp(spec.n, spec.p, kMaxDepth)
                          : expected_ball_sizes_regular(spec.n, spec.r, kMaxDepth);
  const double d = static_cast<double>(spec.d);
  for (std::size_t t = 1; t < out.expected_ball.size(); ++t) {
    if (out.expected_ball[t] >= reach_target(spec.n, spec.d)) {
      out.depth = t;
      out.in_window = out.expected_ball[t - 1] <= kShort * d;
      break;
    }
  }
  if (out.depth) {
    const std::size_t keep = std::min(out.expected_ball.size(), *out.depth + 2);
    out.expected_ball.resize(keep);
    if (spec.family == Family::Gnp) out.window = gnp_window(spec.n, spec.d, *out.depth);
  } else {
    out.expected_ball.resize(std::min<std::size_t>(out.expected_ball.size(), 8));
  }
  return out;
}

void write_threshold_report(std::ostream& out, const ThresholdReport& report) {
  out << "surrogate_t " << (report.surrogate_t ? std::to_string(*report.surrogate_t) : "none") << '\n';
  const auto old_precision = out.precision(6);
  out << "expected_ball";
  for (double b : report.expected_ball) out << ' ' << b;
  out << '\n';
  out << "depth " << (report.depth ? std::to_string(*report.depth) : "none") << '\n';
  out << "in_window " << (report.in_window ? "yes" : "no") << '\n';
  if (report.window) out << "window " << report.window->first << ' ' << report.window->second << '\n';
  out.precision(old_precision);
}

// ---------------------------------------------------------------------------
// Trials

TrialRecord run_trial(const EnsembleSpec& spec, std::size_t index,
                      std::optional<std::size_t> target_depth) {
  TrialRecord rec;
  rec.trial = index;
  rec.seed = derive_seed(spec.seed, index);
  const Graph g = spec.family == Family::Gnp ? sample_gnp(spec.n, spec.p, rec.seed)
                                             : sample_regular(spec.n, spec.r, rec.seed);
  rec.connected = g.connected();
  if (!rec.connected) return rec;
  const HelperSelection sel = select_helpers(g, 0, spec.d);
  const RepairTree tree = build_repair_tree(g, 0, sel.helpers);
  const CodeProfile profile = unit_profile(spec.n, spec.k, spec.d);
  rec.t = sel.layers.depth();
  for (const auto& layer : sel.layers.layers) rec.layer_sizes.push_back(layer.size());
  rec.beta_af = af_formula(sel.layers, profile);
  rec.beta_ip = tree_bound(tree, profile);
  rec.feasible = !target_depth || rec.t <= *target_depth;
  return rec;
}

namespace {

std::array<double, 3> quantiles(std::vector<double> v) {
  std::array<double, 3> out{};
  if (v.empty()) return out;
  std::sort(v.begin(), v.end());
  const double qs[3] = {0.1, 0.5, 0.9};
  for (int i = 0; i < 3; ++i) {
    const auto rank = static_cast<std::size_t>(std::ceil(qs[i] * static_cast<double>(v.size())));
    out[i] = v[std::max<std::size_t>(rank, 1) - 1];
  }
  return out;
}

}  // namespace

EnsembleResult run_trials(const EnsembleSpec& spec) {
  spec.validate();
  const ThresholdReport threshold = check_threshold_conditions(spec);
  EnsembleResult res;
  res.records.resize(spec.trials);
  const std::size_t jobs = std::min(spec.jobs, spec.trials);
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](std::size_t worker) {
    try {
      for (std::size_t i = worker; i < spec.trials; i += jobs) res.records[i] = run_trial(spec, i, threshold.depth);
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  EnsembleSummary& s = res.summary;
  s.trials = spec.trials;
  s.target_depth = threshold.depth;
  std::vector<double> afs, ips;
  for (const auto& r : res.records) {
    if (!r.connected) continue;
    ++s.connected;
    afs.push_back(r.beta_af->convert_to<double>());
    ips.push_back(r.beta_ip->convert_to<double>());
    if (r.feasible) {
      ++s.feasible;
      if (*r.beta_ip < *r.beta_af) ++s.ip_below_af;
    }
  }
  if (!afs.empty()) {
    for (double x : afs) s.mean_af += x;
    for (double x : ips) s.mean_ip += x;
    s.mean_af /= static_cast<double>(afs.size());
    s.mean_ip /= static_cast<double>(ips.size());
  }
  s.af_quantiles = quantiles(afs);
  s.ip_quantiles = quantiles(ips);
  return res;
}

void write_csv(std::ostream& out, const EnsembleSpec& spec, const std::vector<TrialRecord>& records) {
  out << "trial,seed,n,param,d,k,t,feasible,beta_af,beta_ip\n";
  const std::string param = spec.param_text();
  for (const auto& r : records) {
    out << r.trial << ',' << r.seed << ',' << spec.n << ',' << param << ',' << spec.d << ','
        << spec.k << ',' << r.t << ',' << (r.feasible ? 1 : 0) << ','
        << (r.beta_af ? to_string(*r.beta_af) : "") << ',' << (r.beta_ip ? to_string(*r.beta_ip) : "")
        << '\n';
  }
}

void write_summary(std::ostream& out, const EnsembleSummary& s) {
  const auto old = out.flags();
  out << std::fixed << std::setprecision(4);
  out << "trials " << s.trials << '\n';
  out << "connected " << s.connected << '\n';
  out << "target_depth " << (s.target_depth ? std::to_string(*s.target_depth) : "none") << '\n';
  out << "feasible " << s.feasible << " fraction "
      << static_cast<double>(s.feasible) / static_cast<double>(s.trials) << '\n';
  out << "ip_below_af " << s.ip_below_af << " fraction_of_feasible "
      << (s.feasible ? static_cast<double>(s.ip_below_af) / static_cast<double>(s.feasible) : 0.0) << '\n';
  out << "mean_beta_af " << s.mean_af << '\n';
  out << "mean_beta_ip " << s.mean_ip << '\n';
  out << "ratio_af_ip " << (s.mean_ip > 0 ? s.mean_af / s.mean_ip : 0.0) << '\n';
  out << "beta_af_q10_q50_q90 " << s.af_quantiles[0] << ' ' << s.af_quantiles[1] << ' ' << s.af_quantiles[2] << '\n';
  out << "beta_ip_q10_q50_q90 " << s.ip_quantiles[0] << ' ' << s.ip_quantiles[1] << ' ' << s.ip_quantiles[2] << '\n';
  out.flags(old);
}

// ---------------------------------------------------------------------------
// Galton-Watson

std::vector<std::size_t> sample_gw_layers(const GwSpec& spec, Rng& rng) {
  std::vector<std::size_t> sizes;
  std::size_t prev = 1, inner = 0;
  for (std::size_t i = 1; i < spec.t; ++i) {
    std::size_t z = 0;
    for (std::size_t j = 0; j < prev; ++j) z += rng.bernoulli(spec.p) ? 1 : 2;
    sizes.push_back(z);
    inner += z;
    prev = z;
  }
  if (inner > spec.d) throw ParameterError("inner Galton-Watson layers exceed d");
  sizes.push_back(spec.d - inner);
  return sizes;
}

bool GwReport::af_within(double z) const { return std::abs(mean_af - expected_af) <= z * se_af; }
bool GwReport::gap_within(double z) const { return std::abs(mean_gap - expected_gap) <= z * se_gap; }

GwReport galton_watson_check(const GwSpec& spec) {
  if (!(spec.p > 0 && spec.p < 1)) throw ParameterError("need 0 < p < 1");
  if (spec.t < 1 || spec.s >= spec.t) throw ParameterError("need 0 <= s < t");
  if (spec.k < 1 || spec.k > spec.d) throw ParameterError("need 1 <= k <= d");
  if (spec.trials < 2) throw ParameterError("need at least 2 trees");
  // The widest possible inner layers must still leave room in layer t.
  std::size_t widest = 0;
  for (std::size_t i = 1; i < spec.t; ++i) widest += std::size_t{1} << i;
  if (widest > spec.d) throw ParameterError("d too small for depth t");

  const CodeProfile profile = unit_profile(spec.d + 1, spec.k, spec.d);
  Rng rng(spec.seed);
  GwReport rep;
  double sum_af = 0, sq_af = 0, sum_gap = 0, sq_gap = 0;
  for (std::size_t trial = 0; trial < spec.trials; ++trial) {
    const auto sizes = sample_gw_layers(spec, rng);
    const Rational af = af_formula(sizes, profile);
    const Rational ip = layered_ip_formula(sizes, spec.s, profile);
    if (ip > af) rep.ip_never_worse = false;
    const double a = af.convert_to<double>(), g = (af - ip).convert_to<double>();
    sum_af += a;
    sq_af += a * a;
    sum_gap += g;
    sq_gap += g * g;
  }
  const double n = static_cast<double>(spec.trials);
  auto se = [&](double sum, double sq) {
    const double mean = sum / n;
    return std::sqrt(std::max(0.0, (sq - n * mean * mean) / (n - 1)) / n);
  };
  rep.mean_af = sum_af / n;
  rep.se_af = se(sum_af, sq_af);
  rep.mean_gap = sum_gap / n;
  rep.se_gap = se(sum_gap, sq_gap);

  const double m = 2 - spec.p, d = static_cast<double>(spec.d), t = static_cast<double>(spec.t);
  const double s = static_cast<double>(spec.s), chi1 = static_cast<double>(spec.d - spec.k + 1);
  rep.expected_af = t * d;
  for (std::size_t i = 1; i < spec.t; ++i) rep.expected_af -= (t - static_cast<double>(i)) * std::pow(m, i);
  rep.expected_gap = s * d;
  for (std::size_t i = 1; i <= spec.s; ++i)
    rep.expected_gap -= std::pow(m, i) * (chi1 + s - static_cast<double>(i));
  return rep;
}

void write_gw_report(std::ostream& out, const GwSpec& spec, const GwReport& r) {
  const auto old = out.flags();
  out << std::fixed << std::setprecision(4);
  out << "trees " << spec.trials << '\n';
  out << "mean_beta_af " << r.mean_af << " se " << r.se_af << " expected " << r.expected_af
      << (r.af_within() ? " OK" : " FAIL") << '\n';
  out << "mean_gap " << r.mean_gap << " se " << r.se_gap << " expected " << r.expected_gap
      << (r.gap_within() ? " OK" : " FAIL") << '\n';
  out << "ip_never_worse " << (r.ip_never_worse ? "yes" : "no") << '\n';
  out.flags(old);
}

}  // namespace graphrepair
