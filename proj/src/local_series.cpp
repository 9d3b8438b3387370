#include "qtspp/local_series.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "qtspp/errors.hpp"

namespace qtspp {

LaurentSeries LaurentSeries::exact_zero() { return LaurentSeries(kExactPrecision, {}); }

LaurentSeries LaurentSeries::exact_one() {
  std::vector<std::uint32_t> c(kExactLength, 0);
  c[0] = 1;
  return LaurentSeries(0, std::move(c));
}

LaurentSeries::LaurentSeries(long valuation, std::vector<std::uint32_t> coeffs)
    : val_(valuation), c_(std::move(coeffs)) {
  normalize();
}

void LaurentSeries::normalize() noexcept {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead == 0) return;
  c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
  val_ += static_cast<long>(lead);
}

FieldElement LaurentSeries::coeff(long k) const noexcept {
  if (k < val_ || k >= absolute_precision()) return FieldElement(0);
  return FieldElement(c_[static_cast<std::size_t>(k - val_)]);
}

LaurentSeries LaurentSeries::add(const LaurentSeries& b, const PrimeModulus& mod) const {
  const long start = std::min(val_, b.val_);
  const long end = std::min(absolute_precision(), b.absolute_precision());
  if (end <= start) return LaurentSeries(end, {});
  std::vector<std::uint32_t> out(static_cast<std::size_t>(end - start));
  for (long k = start; k < end; ++k) {
    out[static_cast<std::size_t>(k - start)] = mod.add(coeff(k), b.coeff(k)).value;
  }
  return LaurentSeries(start, std::move(out));
}

LaurentSeries LaurentSeries::sub(const LaurentSeries& b, const PrimeModulus& mod) const {
  std::vector<std::uint32_t> neg(b.c_.size());
  for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = mod.neg(FieldElement(b.c_[k])).value;
  LaurentSeries nb;
  nb.val_ = b.val_;
  nb.c_ = std::move(neg);
  return add(nb, mod);
}

LaurentSeries LaurentSeries::mul(const LaurentSeries& b, const PrimeModulus& mod) const {
  // Relative precision is the smaller of the two; O(t^A) times a series of
  // valuation v is O(t^(A+v)).
  if (is_zero() && b.is_zero()) return LaurentSeries(absolute_precision() + b.absolute_precision(), {});
  if (is_zero()) return LaurentSeries(absolute_precision() + b.val_, {});
  if (b.is_zero()) return LaurentSeries(b.absolute_precision() + val_, {});
  const std::size_t len = std::min(c_.size(), b.c_.size());
  return LaurentSeries(val_ + b.val_, series_mul(c_, b.c_, len, mod));
}

LaurentSeries LaurentSeries::inv(const PrimeModulus& mod) const {
  if (is_zero()) throw ZeroInverse("series is zero to its precision");
  const std::size_t len = c_.size();
  std::vector<std::uint32_t> out(len, 0);
  const FieldElement lead_inv = mod.inv(FieldElement(c_[0]));
  out[0] = lead_inv.value;
  for (std::size_t k = 1; k < len; ++k) {
    FieldElement acc(0);
    for (std::size_t i = 1; i <= k; ++i) {
      acc = mod.add(acc, mod.mul(FieldElement(c_[i]), FieldElement(out[k - i])));
    }
    out[k] = mod.neg(mod.mul(acc, lead_inv)).value;
  }
  return LaurentSeries(-val_, std::move(out));
}

std::vector<std::uint32_t> series_mul(const std::vector<std::uint32_t>& a,
                                      const std::vector<std::uint32_t>& b, std::size_t precision,
                                      const PrimeModulus& mod) {
  std::vector<std::uint32_t> out(precision, 0);
  for (std::size_t i = 0; i < std::min(a.size(), precision); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < precision; ++j) {
      out[i + j] = mod.add(FieldElement(out[i + j]),
                           mod.mul(FieldElement(a[i]), FieldElement(b[j]))).value;
    }
  }
  return out;
}

bool series_kernel(std::vector<std::vector<LaurentSeries>> rows, std::size_t cols,
                   const PrimeModulus& mod, std::vector<LaurentSeries>* kernel) {
  const std::size_t m = rows.size();
  if (cols != m + 1) throw InvalidArgument("series_kernel expects an m x (m+1) matrix");
  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);

  for (std::size_t s = 0; s < m; ++s) {
    long best = std::numeric_limits<long>::max();
    std::size_t br = m, bc = cols;
    for (std::size_t r = s; r < m; ++r) {
      for (std::size_t c = s; c < cols; ++c) {
        const auto& e = rows[r][c];
        if (!e.is_zero() && e.valuation() < best) {
          best = e.valuation();
          br = r;
          bc = c;
        }
      }
    }
    if (br == m) return false;
    std::swap(rows[s], rows[br]);
    if (bc != s) {
      for (auto& row : rows) std::swap(row[s], row[bc]);
      std::swap(perm[s], perm[bc]);
    }
    const LaurentSeries pivot_inv = rows[s][s].inv(mod);
    for (std::size_t r = s + 1; r < m; ++r) {
      if (rows[r][s].is_zero()) continue;
      LaurentSeries f = rows[r][s].mul(pivot_inv, mod);
      for (std::size_t c = s; c < cols; ++c) rows[r][c] = rows[r][c].sub(f.mul(rows[s][c], mod), mod);
    }
  }

  // Free variable is the last permuted column; back-substitute.
  std::vector<LaurentSeries> x(cols);
  x[m] = LaurentSeries::exact_one();
  for (std::size_t s = m; s-- > 0;) {
    LaurentSeries acc = LaurentSeries::exact_zero();
    for (std::size_t c = s + 1; c < cols; ++c) acc = acc.add(rows[s][c].mul(x[c], mod), mod);
    x[s] = LaurentSeries::exact_zero().sub(acc, mod).mul(rows[s][s].inv(mod), mod);
  }
  kernel->assign(cols, LaurentSeries());
  for (std::size_t c = 0; c < cols; ++c) (*kernel)[perm[c]] = x[c];
  return true;
}

}  // namespace qtspp
