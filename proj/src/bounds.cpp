#include "graphrepair/bounds.hpp"

#include <algorithm>
#include <numeric>

#include "graphrepair/errors.hpp"

namespace graphrepair {

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  using boost::multiprecision::cpp_int;
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    const std::size_t digits = s.size() - (s.starts_with('-') ? 1 : 0);
    if (digits == 0 || s.find_first_not_of("-0123456789") != std::string::npos ||
        s.find('-', 1) != std::string::npos) {
      throw ParseError("not a rational number: '" + text + "'");
    }
    return cpp_int(s);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  const cpp_int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

void CodeProfile::validate() const {
  if (h < 1) throw ParameterError("h must be at least 1");
  if (k < 1 || k > d) throw ParameterError("need 1 <= k <= d");
  if (d + h > n) throw ParameterError("need d <= n - h");
}

Rational CodeProfile::beta() const { return Rational(h * l, d - k + h); }

CodeProfile unit_profile(std::size_t n, std::size_t k, std::size_t d) {
  if (d < k) throw ParameterError("need d >= k");
  return {n, k, d, d - k + 1, 1};
}

Rational subset_bound(const CodeProfile& p, std::size_t subset_size) {
  if (subset_size < 1 || subset_size > p.d) throw ParameterError("subset size must be in [1, d]");
  return std::min(Rational(p.h * p.l), subset_size * p.beta());
}

Rational layer_bound(const CodeProfile& p, std::span<const std::size_t> layer_sizes) {
  const std::size_t outer = std::accumulate(layer_sizes.begin(), layer_sizes.end(), std::size_t{0});
  return std::min(Rational(p.l), Rational(outer * p.l, p.d - p.k + 1));
}

Rational tree_bound(const RepairTree& tree, const CodeProfile& p) {
  Rational total = 0;
  for (Vertex v : tree.non_root()) {
    const std::size_t s = tree.subtree_size(v);
    if (s >= p.d - p.k + 2) total += p.l;
    else total += Rational(s * p.l, p.d - p.k + 1);
  }
  return total;
}

Rational af_formula(std::span<const std::size_t> layer_sizes, const CodeProfile& p) {
  const std::size_t t = layer_sizes.size();
  if (t == 0) return 0;
  std::size_t inner = 0, weighted = 0;
  for (std::size_t i = 1; i < t; ++i) {
    inner += layer_sizes[i - 1];
    weighted += i * layer_sizes[i - 1];
  }
  if (inner > p.d) throw ParameterError("inner layers hold more than d helpers");
  return Rational(t * (p.d - inner) + weighted) * Rational(p.l, p.d - p.k + 1);
}

Rational af_formula(const LayerDecomposition& layers, const CodeProfile& p) {
  std::vector<std::size_t> sizes;
  for (const auto& layer : layers.layers) sizes.push_back(layer.size());
  return af_formula(sizes, p);
}

Rational layered_ip_formula(std::span<const std::size_t> layer_sizes, std::size_t s,
                            const CodeProfile& p) {
  const std::size_t t = layer_sizes.size();
  if (s >= t && t > 0) throw ParameterError("switch depth must be below the tree depth");
  std::size_t inner = 0;
  for (std::size_t i = 1; i < t; ++i) inner += layer_sizes[i - 1];
  if (inner > p.d) throw ParameterError("inner layers hold more than d helpers");
  std::size_t units = (t - s) * (p.d - inner);
  for (std::size_t i = 1; i < t; ++i)
    units += (i <= s ? p.d - p.k + 1 : i - s) * layer_sizes[i - 1];
  return Rational(units) * Rational(p.l, p.d - p.k + 1);
}

Rational multi_tree_bound(const RepairTree& tree, const CodeProfile& p) {
  Rational total = 0;
  for (Vertex v : tree.vertices())
    total += std::min(Rational(p.h * p.l), tree.subtree_size(v) * p.beta());
  return total;
}

}  // namespace graphrepair
