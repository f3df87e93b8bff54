#include "graphrepair/galois.hpp"

#include <string>
#include <utility>

#include "graphrepair/errors.hpp"

namespace graphrepair {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint32_t clmul_reduce(std::uint32_t a, std::uint32_t b, unsigned m, std::uint32_t modulus) {
  std::uint64_t prod = 0;
  for (unsigned i = 0; i < m; ++i) {
    if (b & (1u << i)) prod ^= static_cast<std::uint64_t>(a) << i;
  }
  for (int bit = 2 * static_cast<int>(m) - 2; bit >= static_cast<int>(m); --bit) {
    if (prod & (std::uint64_t{1} << bit)) prod ^= static_cast<std::uint64_t>(modulus) << (bit - m);
  }
  return static_cast<std::uint32_t>(prod);
}

}  // namespace

std::shared_ptr<const Field::Tables> Field::build(unsigned m, std::uint32_t modulus) {
  auto t = std::make_shared<Tables>();
  t->degree = m;
  t->modulus = modulus;
  const std::uint32_t order = (1u << m) - 1;
  t->exp.resize(2 * static_cast<std::size_t>(order));
  t->log.assign(std::size_t{1} << m, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    t->exp[i] = x;
    t->exp[i + order] = x;
    t->log[x] = i;
    x = clmul_reduce(x, 2, m, modulus);
  }
  // alpha must have full order: alpha^order = 1 and alpha^(order/p) != 1 for primes p | order.
  if (x != 1) throw ParameterError("modulus polynomial does not make alpha a unit of full order");
  for (std::uint64_t p : prime_factors(order)) {
    if (t->exp[order / p] == 1) {
      throw ParameterError("alpha is not primitive for modulus " + std::to_string(modulus));
    }
  }
  return t;
}

Field Field::gf256() {
  static const auto tables = build(8, 0x11D);
  return Field(tables);
}

Field Field::gf65536() {
  static const auto tables = build(16, 0x1100B);
  return Field(tables);
}

Field Field::of_degree(unsigned m) {
  if (m == 8) return gf256();
  if (m == 16) return gf65536();
  throw ParameterError("unsupported field degree " + std::to_string(m) + " (use 8 or 16)");
}

FieldElement Field::element(std::uint32_t v) const {
  if (v >= size()) throw ParameterError("value out of field range: " + std::to_string(v));
  return {v};
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  if (a.value == 0 || b.value == 0) return {0};
  return {tables_->exp[tables_->log[a.value] + tables_->log[b.value]]};
}

FieldElement Field::mul_slow(FieldElement a, FieldElement b) const {
  return {clmul_reduce(a.value, b.value, tables_->degree, tables_->modulus)};
}

FieldElement Field::inv(FieldElement a) const {
  if (a.value == 0) throw DivisionByZero();
  const std::uint32_t order = group_order();
  return {tables_->exp[(order - tables_->log[a.value]) % order]};
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.value == 0) return zero();
  const std::uint64_t order = group_order();
  return {tables_->exp[(static_cast<std::uint64_t>(tables_->log[a.value]) * (e % order)) % order]};
}

FieldElement Field::alpha_pow(std::uint64_t e) const { return {tables_->exp[e % group_order()]}; }

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = {1};
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<FieldElement>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw DimensionMismatch("ragged rows");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix out(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= rows_) throw DimensionMismatch("row index out of range");
    for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(idx[i], c);
  }
  return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix out(rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] >= cols_) throw DimensionMismatch("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, idx[j]);
  }
  return out;
}

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matrix product " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) axpy(f, a(i, k), b.row(k), c.row(i));
  return c;
}

std::vector<FieldElement> multiply(const Field& f, std::span<const FieldElement> v,
                                   const Matrix& m) {
  if (v.size() != m.rows()) throw DimensionMismatch("vector-matrix product");
  std::vector<FieldElement> out(m.cols());
  for (std::size_t k = 0; k < v.size(); ++k) axpy(f, v[k], m.row(k), out);
  return out;
}

void axpy(const Field& f, FieldElement scale, std::span<const FieldElement> v,
          std::span<FieldElement> acc) {
  if (v.size() != acc.size()) throw DimensionMismatch("axpy length");
  if (scale.value == 0) return;
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] = f.add(acc[i], f.mul(scale, v[i]));
}

Matrix inverse(const Field& f, const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix work = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work(pivot, col).value == 0) ++pivot;
    if (pivot == n) throw SingularMatrix();
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const FieldElement s = f.inv(work(col, col));
    for (std::size_t c = 0; c < n; ++c) {
      work(col, c) = f.mul(work(col, c), s);
      inv(col, c) = f.mul(inv(col, c), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work(r, col).value == 0) continue;
      const FieldElement factor = work(r, col);
      axpy(f, factor, work.row(col), work.row(r));
      axpy(f, factor, inv.row(col), inv.row(r));
    }
  }
  return inv;
}

std::size_t rank(const Field& f, Matrix a) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t pivot = r;
    while (pivot < a.rows() && a(pivot, col).value == 0) ++pivot;
    if (pivot == a.rows()) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(r, c));
    const FieldElement s = f.inv(a(r, col));
    for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = f.mul(a(r, c), s);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, col).value != 0) axpy(f, a(i, col), a.row(r), a.row(i));
    }
    ++r;
  }
  return r;
}

Matrix vandermonde(const Field& f, std::span<const FieldElement> points, std::size_t rows) {
  if (points.empty() || rows == 0) throw DimensionMismatch("empty Vandermonde matrix");
  Matrix v(rows, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    FieldElement x = f.one();
    for (std::size_t i = 0; i < rows; ++i) {
      v(i, j) = x;
      x = f.mul(x, points[j]);
    }
  }
  return v;
}

}  // namespace graphrepair
