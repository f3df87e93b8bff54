#include "graphrepair/codes_pm.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "graphrepair/errors.hpp"

namespace graphrepair {

namespace {

bool is_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

}  // namespace

PmMessage PmMessage::from_symbols(std::size_t l, std::span<const FieldElement> symbols) {
  const std::size_t per_block = l * (l + 1) / 2;
  if (symbols.size() != 2 * per_block) {
    throw DimensionMismatch("PM message needs " + std::to_string(2 * per_block) + " symbols");
  }
  PmMessage msg{Matrix(l, l), Matrix(l, l)};
  std::size_t pos = 0;
  for (Matrix* block : {&msg.s1, &msg.s2}) {
    for (std::size_t i = 0; i < l; ++i) {
      for (std::size_t j = i; j < l; ++j) {
        (*block)(i, j) = symbols[pos];
        (*block)(j, i) = symbols[pos];
        ++pos;
      }
    }
  }
  return msg;
}

std::vector<FieldElement> PmMessage::to_symbols() const {
  std::vector<FieldElement> out;
  for (const Matrix* block : {&s1, &s2})
    for (std::size_t i = 0; i < block->rows(); ++i)
      for (std::size_t j = i; j < block->cols(); ++j) out.push_back((*block)(i, j));
  return out;
}

PmMessage PmMessage::random(const Field& f, std::size_t l, Rng& rng) {
  std::vector<FieldElement> symbols(l * (l + 1));
  for (auto& s : symbols) s = {static_cast<std::uint32_t>(rng.next() & (f.size() - 1))};
  return from_symbols(l, symbols);
}

PmCode::PmCode(Field f, std::size_t n, std::size_t k) : PmCode(f, k, [&] {
    std::vector<FieldElement> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(f.alpha_pow(i));
    return pts;
  }()) {}

PmCode::PmCode(Field f, std::size_t k, std::vector<FieldElement> points)
    : field_(std::move(f)), k_(k), x_(std::move(points)) {
  if (k_ < 2) throw ParameterError("PM codes need k >= 2");
  if (x_.size() <= d()) {
    throw ParameterError("PM codes need n > d = 2k-2 (n=" + std::to_string(x_.size()) +
                         ", d=" + std::to_string(d()) + ")");
  }
  std::set<std::uint32_t> seen_x, seen_lambda;
  for (FieldElement xi : x_) {
    const FieldElement li = field_.pow(xi, l());
    if (!seen_x.insert(xi.value).second) throw ParameterError("evaluation points not distinct");
    if (!seen_lambda.insert(li.value).second) throw ParameterError("lambda values not distinct");
    lambda_.push_back(li);
  }
}

void PmCode::check_index(Vertex v) const {
  if (v >= n()) throw ParameterError("node index " + std::to_string(v) + " out of range");
}

std::vector<FieldElement> PmCode::phi(std::size_t i) const {
  std::vector<FieldElement> row(l());
  FieldElement p = field_.one();
  for (auto& e : row) {
    e = p;
    p = field_.mul(p, x_.at(i));
  }
  return row;
}

PmCodeword PmCode::encode(const PmMessage& msg) const {
  if (msg.s1.rows() != l() || msg.s2.rows() != l() || !is_symmetric(msg.s1) ||
      !is_symmetric(msg.s2)) {
    throw DimensionMismatch("PM message blocks must be symmetric " + std::to_string(l()) + "x" +
                            std::to_string(l()));
  }
  PmCodeword word;
  word.columns.reserve(n());
  for (std::size_t i = 0; i < n(); ++i) {
    const auto p = phi(i);
    Column c = multiply(field_, p, msg.s1);
    const auto c2 = multiply(field_, p, msg.s2);
    axpy(field_, lambda_[i], c2, c);
    word.columns.push_back(std::move(c));
  }
  return word;
}

FieldElement PmCode::helper_symbol(const PmCodeword& word, Vertex helper, Vertex failed) const {
  check_index(helper);
  check_index(failed);
  if (helper == failed) throw ParameterError("helper must differ from the failed node");
  const auto p = phi(failed);
  const Column& c = word.columns.at(helper);
  FieldElement acc = field_.zero();
  for (std::size_t j = 0; j < l(); ++j) acc = field_.add(acc, field_.mul(c[j], p[j]));
  return acc;
}

Matrix PmCode::repair_matrix(std::span<const Vertex> helpers, Vertex failed) const {
  check_index(failed);
  if (helpers.size() != d()) {
    throw ParameterError("PM repair needs exactly d=" + std::to_string(d()) + " helpers");
  }
  std::set<Vertex> distinct(helpers.begin(), helpers.end());
  if (distinct.size() != helpers.size()) throw ParameterError("helpers not distinct");
  if (distinct.count(failed)) throw ParameterError("failed node listed as helper");

  Matrix psi_d(d(), d());
  for (std::size_t r = 0; r < d(); ++r) {
    check_index(helpers[r]);
    const auto p = phi(helpers[r]);
    for (std::size_t j = 0; j < l(); ++j) {
      psi_d(r, j) = p[j];
      psi_d(r, l() + j) = field_.mul(lambda_[helpers[r]], p[j]);
    }
  }
  Matrix stacked(d(), l());
  for (std::size_t j = 0; j < l(); ++j) {
    stacked(j, j) = field_.one();
    stacked(l() + j, j) = lambda_[failed];
  }
  return multiply(field_, inverse(field_, psi_d.transpose()), stacked);
}

bool PmCode::mds_check() const {
  if (n() > 12) throw ParameterError("mds_check enumerates k-subsets; n must be <= 12");
  // Generator: row s = encoding of the s-th unit message, flattened node-major.
  const std::size_t m = message_symbols();
  Matrix gen(m, n() * l());
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<FieldElement> unit(m);
    unit[s] = field_.one();
    const auto word = encode(PmMessage::from_symbols(l(), unit));
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < l(); ++j) gen(s, i * l() + j) = word.columns[i][j];
  }
  std::vector<bool> pick(n(), false);
  std::fill(pick.begin(), pick.begin() + k_, true);
  do {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n(); ++i)
      if (pick[i])
        for (std::size_t j = 0; j < l(); ++j) cols.push_back(i * l() + j);
    if (rank(field_, gen.select_cols(cols)) != m) return false;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return true;
}

}  // namespace graphrepair
