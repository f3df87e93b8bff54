#pragma once

// Random-graph repair experiments: G(n,p) and random r-regular graphs, repair-depth
// diagnostics, Monte-Carlo estimates of the AF and IP totals, and a Galton-Watson check.
// Totals use one field symbol per helper (l = d - k + 1).

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphrepair/bounds.hpp"
#include "graphrepair/graphs.hpp"
#include "graphrepair/random.hpp"

namespace graphrepair {

enum class Family { Gnp, Regular };

std::string to_string(Family f);
Family parse_family(const std::string& name);

struct EnsembleSpec {
  Family family = Family::Gnp;
  std::size_t n = 0;
  double p = 0;        // Gnp
  std::size_t r = 0;   // Regular
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  void validate() const;  // throws ParameterError
  // p for Gnp, r for Regular, as written in the CSV.
  std::string param_text() const;
};

// Each pair present independently with probability p.
Graph sample_gnp(std::size_t n, double p, std::uint64_t seed);
// Uniform stub pairing that rejects a loop or repeated edge and restarts when stuck;
// throws RetriesExhausted after 10,000 restarts.
Graph sample_regular(std::size_t n, std::size_t r, std::uint64_t seed);

struct ThresholdReport {
  // Smallest t with (np)^{t-1} <= n/10 and p^t n^{t-1} >= 2 ln n + 10 (p = r/n for
  // regular graphs), if one exists below 64.
  std::optional<std::size_t> surrogate_t;
  // Expected ball sizes E|N_i| (center excluded) from the mean-field recursion, i = 0..
  std::vector<double> expected_ball;
  // Smallest t with E|N_t| >= min(1.25 d, (d + n - 1) / 2).
  std::optional<std::size_t> depth;
  // E|N_{depth-1}| <= d / 2: the depth is sharp and (depth-1)-layer repair is unlikely.
  bool in_window = false;
  // For Gnp and the given depth, the p-interval where both conditions above hold.
  std::optional<std::pair<double, double>> window;
};

ThresholdReport check_threshold_conditions(const EnsembleSpec& spec);
// E|N_i| for i = 0..max_depth under G(n, p).
std::vector<double> expected_ball_sizes_gnp(std::size_t n, double p, std::size_t max_depth);
std::vector<double> expected_ball_sizes_regular(std::size_t n, std::size_t r, std::size_t max_depth);
// Interval of p where `t` is the depth above and E|N_{t-1}| <= d/2; empty when none.
std::optional<std::pair<double, double>> gnp_window(std::size_t n, std::size_t d, std::size_t t);

void write_threshold_report(std::ostream& out, const ThresholdReport& report);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool connected = false;
  bool feasible = false;  // connected and d helpers within the target depth
  std::size_t t = 0;      // depth of the helper layers
  std::vector<std::size_t> layer_sizes;
  std::optional<Rational> beta_af;
  std::optional<Rational> beta_ip;
};

struct EnsembleSummary {
  std::size_t trials = 0;
  std::size_t connected = 0;
  std::size_t feasible = 0;
  std::size_t ip_below_af = 0;  // among feasible trials
  double mean_af = 0;           // over connected trials
  double mean_ip = 0;
  std::array<double, 3> af_quantiles{};  // 10%, 50%, 90%
  std::array<double, 3> ip_quantiles{};
  std::optional<std::size_t> target_depth;
};

struct EnsembleResult {
  std::vector<TrialRecord> records;
  EnsembleSummary summary;
};

// Trial i uses seed derive_seed(spec.seed, i); records are identical for any job count.
EnsembleResult run_trials(const EnsembleSpec& spec);
TrialRecord run_trial(const EnsembleSpec& spec, std::size_t index,
                      std::optional<std::size_t> target_depth);

// Header: trial,seed,n,param,d,k,t,feasible,beta_af,beta_ip
void write_csv(std::ostream& out, const EnsembleSpec& spec, const std::vector<TrialRecord>& records);
void write_summary(std::ostream& out, const EnsembleSummary& summary);

struct GwSpec {
  double p = 0.5;  // probability of one child, otherwise two
  std::size_t t = 3;
  std::size_t s = 1;
  std::size_t d = 0;
  std::size_t k = 0;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
};

struct GwReport {
  double mean_af = 0;
  double se_af = 0;
  double expected_af = 0;
  double mean_gap = 0;  // beta_AF - beta_IP
  double se_gap = 0;
  double expected_gap = 0;
  bool ip_never_worse = true;

  bool af_within(double z = 3) const;
  bool gap_within(double z = 3) const;
};

// Layers 1..t-1 grow by the offspring law; layer t holds the remaining d - |N_{t-1}|.
std::vector<std::size_t> sample_gw_layers(const GwSpec& spec, Rng& rng);
GwReport galton_watson_check(const GwSpec& spec);
void write_gw_report(std::ostream& out, const GwSpec& spec, const GwReport& report);

}  // namespace graphrepair
