#include "qtspp/matrix.hpp"

#include <algorithm>
#include <string>

#include "qtspp/errors.hpp"
#include "qtspp/simd/kernels.hpp"

namespace qtspp {

DenseMatrix DenseMatrix::identity(std::size_t n, const PrimeModulus& mod) {
  DenseMatrix m(n, n, mod);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                                   const PrimeModulus& mod) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  DenseMatrix m(rows.size(), cols, mod);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged row list");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, mod.from_int(rows[r][c]));
  }
  return m;
}

void DenseMatrix::swap_rows(std::size_t a, std::size_t b) noexcept {
  if (a == b) return;
  std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

FieldVector DenseMatrix::apply(const FieldVector& x) const {
  if (x.size() != cols_) throw InvalidArgument("apply: dimension mismatch");
  std::vector<std::uint32_t> raw(cols_);
  for (std::size_t c = 0; c < cols_; ++c) raw[c] = x[c].value;
  FieldVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = FieldElement(simd::dot(row(r), raw, mod_.p()));
  return out;
}

namespace {

// First row in [from, rows) with a nonzero entry in column c.
std::size_t find_pivot(const DenseMatrix& a, std::size_t from, std::size_t c) {
  for (std::size_t r = from; r < a.rows(); ++r) {
    if (!a.at(r, c).is_zero()) return r;
  }
  return a.rows();
}

// Reduces `a` in place to reduced row-echelon form and returns the pivot
// column of each nonzero row.
std::vector<std::size_t> rref_in_place(DenseMatrix& a) {
  const auto& mod = a.modulus();
  const std::uint32_t p = mod.p();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = find_pivot(a, r, c);
    if (piv == a.rows()) continue;
    a.swap_rows(r, piv);
    auto prow = a.row(r).subspan(c);
    simd::scale(prow, mod.inv(a.at(r, c)).value, p);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      std::uint32_t f = a.at(i, c).value;
      if (f != 0) simd::submul(a.row(i).subspan(c), prow, f, p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

FieldVector solve_linear(DenseMatrix a, const FieldVector& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InvalidArgument("solve_linear: matrix is not square");
  if (b.size() != n) throw InvalidArgument("solve_linear: right-hand side length mismatch");
  const auto& mod = a.modulus();
  const std::uint32_t p = mod.p();

  // Augment with b as an extra column so each row operation is one kernel call.
  DenseMatrix aug(n, n + 1, mod);
  for (std::size_t r = 0; r < n; ++r) {
    std::copy(a.row(r).begin(), a.row(r).end(), aug.row(r).begin());
    aug.set(r, n, b[r]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = find_pivot(aug, c, c);
    if (piv == n) throw SingularMatrix("no nonzero pivot in column " + std::to_string(c), c);
    aug.swap_rows(c, piv);
    auto prow = aug.row(c).subspan(c);
    simd::scale(prow, mod.inv(aug.at(c, c)).value, p);
    for (std::size_t i = c + 1; i < n; ++i) {
      std::uint32_t f = aug.at(i, c).value;
      if (f != 0) simd::submul(aug.row(i).subspan(c), prow, f, p);
    }
  }
  FieldVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    FieldElement acc = aug.at(i, n);
    for (std::size_t c = i + 1; c < n; ++c) acc = mod.sub(acc, mod.mul(aug.at(i, c), x[c]));
    x[i] = acc;
  }
  return x;
}

std::vector<FieldVector> nullspace(DenseMatrix a) {
  if (a.cols() == 0) throw InvalidArgument("nullspace: matrix has no columns");
  const auto& mod = a.modulus();
  const auto pivots = rref_in_place(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<FieldVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    FieldVector v(a.cols());
    v[f] = FieldElement(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = mod.neg(a.at(r, f));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(DenseMatrix a) { return rref_in_place(a).size(); }

FieldElement determinant_elim(DenseMatrix a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InvalidArgument("determinant_elim: matrix is not square");
  const auto& mod = a.modulus();
  const std::uint32_t p = mod.p();
  FieldElement det(1 % p);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = find_pivot(a, c, c);
    if (piv == n) return FieldElement(0);
    if (piv != c) {
      a.swap_rows(c, piv);
      det = mod.neg(det);
    }
    FieldElement d = a.at(c, c);
    det = mod.mul(det, d);
    // Eliminate with the unnormalized pivot row: subtract (a_ic / d) * row_c.
    FieldElement dinv = mod.inv(d);
    auto prow = a.row(c).subspan(c);
    for (std::size_t i = c + 1; i < n; ++i) {
      FieldElement f = a.at(i, c);
      if (!f.is_zero()) simd::submul(a.row(i).subspan(c), prow, mod.mul(f, dinv).value, p);
    }
  }
  return det;
}

}  // namespace qtspp
