#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qtspp/field.hpp"

namespace qtspp {

/// Row-major dense matrix over GF(p). Stores raw residues so rows can be
/// handed to the vector kernels directly.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const PrimeModulus& mod)
      : rows_(rows), cols_(cols), mod_(mod), data_(rows * cols, 0) {}

  static DenseMatrix identity(std::size_t n, const PrimeModulus& mod);
  /// Entries reduced mod p; rows must all have the same length.
  static DenseMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                               const PrimeModulus& mod);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const PrimeModulus& modulus() const noexcept { return mod_; }

  FieldElement at(std::size_t r, std::size_t c) const noexcept {
    return FieldElement(data_[r * cols_ + c]);
  }
  void set(std::size_t r, std::size_t c, FieldElement v) noexcept { data_[r * cols_ + c] = v.value; }

  std::span<std::uint32_t> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint32_t> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  void swap_rows(std::size_t a, std::size_t b) noexcept;

  /// Matrix-vector product A x.
  FieldVector apply(const FieldVector& x) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  PrimeModulus mod_;
  std::vector<std::uint32_t> data_;
};

/// Solves A x = b for square A. Throws SingularMatrix (index = column) if A is
/// singular and InvalidArgument on a shape mismatch.
FieldVector solve_linear(DenseMatrix a, const FieldVector& b);

/// A basis of the right nullspace, in reduced-echelon normalization: vector k
/// has a 1 at its own free column and 0 at every other free column.
std::vector<FieldVector> nullspace(DenseMatrix a);

/// Rank via row reduction.
std::size_t rank(DenseMatrix a);

/// det(A) by elimination with row-swap sign tracking; 0 for singular A.
FieldElement determinant_elim(DenseMatrix a);

}  // namespace qtspp
