#pragma once

// Arithmetic over GF(2^m) for m in {8, 16} plus the small dense linear
// algebra used by the code constructions.
//
// Modulus polynomials (primitive, so alpha = x generates the multiplicative group):
//   m = 8:  x^8 + x^4 + x^3 + x^2 + 1        (0x11D)
//   m = 16: x^16 + x^12 + x^3 + x + 1        (0x1100B)

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace graphrepair {

struct FieldElement {
  std::uint32_t value = 0;

  friend bool operator==(FieldElement, FieldElement) = default;
};

class Field {
 public:
  static Field gf256();
  static Field gf65536();
  // m must be 8 or 16.
  static Field of_degree(unsigned m);

  unsigned degree() const { return tables_->degree; }
  std::uint32_t modulus() const { return tables_->modulus; }
  std::uint32_t size() const { return 1u << tables_->degree; }
  std::uint32_t group_order() const { return size() - 1; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement alpha() const { return {2}; }

  FieldElement element(std::uint32_t v) const;

  FieldElement add(FieldElement a, FieldElement b) const { return {a.value ^ b.value}; }
  FieldElement sub(FieldElement a, FieldElement b) const { return {a.value ^ b.value}; }
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  // alpha^e, e reduced modulo the group order.
  FieldElement alpha_pow(std::uint64_t e) const;

  // Carry-less multiply with reduction; independent of the log tables.
  FieldElement mul_slow(FieldElement a, FieldElement b) const;

  friend bool operator==(const Field& a, const Field& b) { return a.degree() == b.degree(); }

 private:
  struct Tables {
    unsigned degree;
    std::uint32_t modulus;
    std::vector<std::uint32_t> exp;  // length 2 * group order
    std::vector<std::uint32_t> log;  // log[0] unused
  };
  explicit Field(std::shared_ptr<const Tables> t) : tables_(std::move(t)) {}
  static std::shared_ptr<const Tables> build(unsigned m, std::uint32_t modulus);

  std::shared_ptr<const Tables> tables_;
};

// Dense row-major matrix of field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<FieldElement>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElement operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const FieldElement> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<FieldElement> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  Matrix transpose() const;
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> data_;
};

Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);
// Row vector times matrix.
std::vector<FieldElement> multiply(const Field& f, std::span<const FieldElement> v,
                                   const Matrix& m);
Matrix inverse(const Field& f, const Matrix& a);
std::size_t rank(const Field& f, Matrix a);

// Entry (i, j) = points[j]^i.
Matrix vandermonde(const Field& f, std::span<const FieldElement> points, std::size_t rows);

// acc += scale * v
void axpy(const Field& f, FieldElement scale, std::span<const FieldElement> v,
          std::span<FieldElement> acc);

}  // namespace graphrepair
