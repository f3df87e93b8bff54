#pragma once

// Lower bounds and closed forms for repair communication, in exact rationals.
// Units are field symbols; beta = l / (d - k + 1) is the per-helper download.

#include <cstddef>
#include <span>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphrepair/graphs.hpp"

namespace graphrepair {

using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);
// "p/q" or an integer; throws ParseError.
Rational parse_rational(const std::string& text);

struct CodeProfile {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t l = 0;
  std::size_t h = 1;  // number of failed nodes

  // Throws ParameterError unless 1 <= k <= d <= n - h and h >= 1.
  void validate() const;
  // h * l / (d - k + h): download per helper.
  Rational beta() const;
};

// Profile with l = d - k + 1, so that beta = 1.
CodeProfile unit_profile(std::size_t n, std::size_t k, std::size_t d);

// Outflow required from a set A of helpers: min(h l, h |A| l / (d - k + h)).
Rational subset_bound(const CodeProfile& p, std::size_t subset_size);

// Outflow of layers j..t given their sizes |Gamma_j|, ..., |Gamma_t|.
Rational layer_bound(const CodeProfile& p, std::span<const std::size_t> layer_sizes);

// |J_f| l + sum_{v not in J_f} |D*(v)| l / (d - k + 1), J_f = {v != root : |D*(v)| >= d-k+2}.
Rational tree_bound(const RepairTree& tree, const CodeProfile& p);

// Accumulate-and-forward total: (t (d - |N_{t-1}|) + sum_{i<t} i |Gamma_i|) * beta.
Rational af_formula(const LayerDecomposition& layers, const CodeProfile& p);
Rational af_formula(std::span<const std::size_t> layer_sizes, const CodeProfile& p);

// Layers 1..s forward combinations of d-k+1 symbols-worth each, deeper layers relay:
// ((t-s)(d - |N_{t-1}|) + sum_{s<i<t} (i-s)|Gamma_i| + (d-k+1) sum_{i<=s} |Gamma_i|) * beta.
Rational layered_ip_formula(std::span<const std::size_t> layer_sizes, std::size_t s,
                            const CodeProfile& p);

// Tree T_w rooted at a helper w: sum over all v of T_w, root included, of
// min(h l, h |D*_w(v)| l / (d - k + h)).
Rational multi_tree_bound(const RepairTree& tree, const CodeProfile& p);

}  // namespace graphrepair
