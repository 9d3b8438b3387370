#include "qtspp/cyclotomic.hpp"

#include <deque>
#include <mutex>

#include "qtspp/errors.hpp"

namespace qtspp {

namespace {

int mobius(std::size_t n) {
  int mu = 1;
  for (std::size_t f = 2; f * f <= n; ++f) {
    if (n % f != 0) continue;
    n /= f;
    if (n % f == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

// Phi_d = prod_{k | d} (x^k - 1)^{mu(d/k)}; multiplications first, then the
// exact divisions by (x^k - 1).
std::vector<std::int64_t> compute_cyclotomic(std::size_t d) {
  std::vector<std::int64_t> poly{1};
  std::vector<std::size_t> divide_by;
  for (std::size_t k = 1; k <= d; ++k) {
    if (d % k != 0) continue;
    int mu = mobius(d / k);
    if (mu == 1) {
      std::vector<std::int64_t> next(poly.size() + k, 0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + k] += poly[i];
        next[i] -= poly[i];
      }
      poly = std::move(next);
    } else if (mu == -1) {
      divide_by.push_back(k);
    }
  }
  for (std::size_t k : divide_by) {
    // poly = (x^k - 1) * quot, solved from the top coefficient down.
    std::vector<std::int64_t> quot(poly.size() - k, 0);
    std::vector<std::int64_t> rem = poly;
    for (std::size_t i = quot.size(); i-- > 0;) {
      quot[i] = rem[i + k];
      rem[i + k] -= quot[i];
      rem[i] += quot[i];
    }
    poly = std::move(quot);
  }
  return poly;
}

std::mutex cache_mutex;
std::deque<std::vector<std::int64_t>> cache;  // cache[d-1] = Phi_d

}  // namespace

std::vector<std::int64_t> cyclotomic_poly(std::size_t d) {
  if (d == 0) throw InvalidArgument("cyclotomic index must be >= 1");
  std::lock_guard lock(cache_mutex);
  while (cache.size() < d) cache.push_back(compute_cyclotomic(cache.size() + 1));
  return cache[d - 1];
}

FieldElement cyclotomic_value(std::size_t d, FieldElement x, const PrimeModulus& mod) {
  const auto poly = cyclotomic_poly(d);
  FieldElement acc(0);
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = mod.add(mod.mul(acc, x), mod.from_int(*it));
  return acc;
}

void CyclotomicProduct::multiply(std::size_t m, int times) {
  if (m == 0) throw InvalidArgument("factor 1 - q^0 vanishes identically");
  if (count_.size() <= m) count_.resize(m + 1, 0);
  count_[m] += times;
  parity_ += times < 0 ? -times : times;
}

int CyclotomicProduct::exponent(std::size_t d) const {
  int e = 0;
  for (std::size_t m = d; m < count_.size(); m += d) e += count_[m];
  return e;
}

}  // namespace qtspp
