#include "qtspp/okada.hpp"

#include <string>

#include "qtspp/cyclotomic.hpp"
#include "qtspp/errors.hpp"

namespace qtspp {

QPoint::QPoint(std::int64_t q_int, const PrimeModulus& mod, std::size_t n_hint)
    : q_int_(q_int), mod_(mod), reduced_(mod.from_int(q_int)) {
  if (q_int < 1) throw InvalidArgument("q must be >= 1, got " + std::to_string(q_int));
  const std::size_t max_exponent = 16 * n_hint + 64;
  powers_.resize(max_exponent + 1);
  powers_[0] = FieldElement(1);
  for (std::size_t k = 1; k <= max_exponent; ++k) powers_[k] = mod_.mul(powers_[k - 1], reduced_);
  const std::size_t max_cyclotomic = 3 * n_hint + 3;
  cyclotomic_.resize(max_cyclotomic + 1);
  for (std::size_t d = 1; d <= max_cyclotomic; ++d) {
    cyclotomic_[d] = cyclotomic_value(d, reduced_, mod_);
  }
}

FieldElement QPoint::cyclotomic(std::size_t d) const {
  if (d >= 1 && d < cyclotomic_.size()) return cyclotomic_[d];
  return cyclotomic_value(d, reduced_, mod_);
}

FieldElement evaluate(const CyclotomicProduct& prod, const QPoint& qpt) {
  const auto& mod = qpt.modulus();
  FieldElement num(1), den(1);
  for (std::size_t d = 1; d <= prod.max_index(); ++d) {
    int e = prod.exponent(d);
    if (e == 0) continue;
    FieldElement v = qpt.cyclotomic(d);
    if (e > 0) {
      num = mod.mul(num, mod.pow(v, static_cast<std::uint64_t>(e)));
    } else {
      den = mod.mul(den, mod.pow(v, static_cast<std::uint64_t>(-e)));
    }
  }
  if (den.is_zero()) {
    throw DegenerateDenominator("a cyclotomic factor of the denominator vanishes at q = " +
                                std::to_string(qpt.q_int()) + " mod " + std::to_string(mod.p()));
  }
  FieldElement r = mod.div(num, den);
  return prod.sign() < 0 ? mod.neg(r) : r;
}

namespace {

CyclotomicProduct orbit_product_factors(std::size_t n) {
  CyclotomicProduct prod;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j)
      for (std::size_t k = j; k <= n; ++k) {
        prod.multiply(i + j + k - 1);
        prod.divide(i + j + k - 2);
      }
  return prod;
}

}  // namespace

bool is_admissible(std::int64_t q_int, const PrimeModulus& mod, std::size_t /*n_max*/) {
  if (q_int < 1) return false;
  if (q_int == 1) return true;
  FieldElement q = mod.from_int(q_int);
  if (q.is_zero()) return false;
  return mod.order_up_to(q, kMinimumOrder - 1) == 0;
}

BigInt binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt r = 1;
  for (std::int64_t k = 1; k <= b; ++k) r = r * (a - b + k) / k;
  return r;
}

namespace {

FieldElement checked_inverse(FieldElement den, const QPoint& qpt, const char* where) {
  if (den.is_zero()) {
    throw DegenerateDenominator(std::string(where) + ": a factor 1 - q^m vanishes at q = " +
                                std::to_string(qpt.q_int()) + " mod " +
                                std::to_string(qpt.modulus().p()));
  }
  return qpt.modulus().inv(den);
}

// 1 - q^m, or the integer m itself when q = 1 (the limit of the ratio).
FieldElement factor(std::int64_t m, const QPoint& qpt) {
  if (qpt.is_unit()) return qpt.modulus().from_int(m);
  return qpt.one_minus_power(static_cast<std::size_t>(m));
}

FieldElement delta(std::int64_t a, std::int64_t b) { return FieldElement(a == b ? 1 : 0); }

}  // namespace

FieldElement qbinom(std::int64_t a, std::int64_t b, const QPoint& qpt) {
  if (b < 0 || a < 0 || b > a) return FieldElement(0);
  const auto& mod = qpt.modulus();
  if (qpt.is_unit()) {
    FieldElement num(1), den(1);
    for (std::int64_t k = 0; k < b; ++k) {
      num = mod.mul(num, factor(a - k, qpt));
      den = mod.mul(den, factor(b - k, qpt));
    }
    return mod.div(num, den);
  }
  // Phi_d divides [a, b]_q exactly floor(a/d) - floor((a-b)/d) - floor(b/d) times,
  // which is 0 or 1.
  FieldElement acc(1);
  for (std::int64_t d = 2; d <= a; ++d) {
    if (a / d - (a - b) / d - b / d == 1) acc = mod.mul(acc, qpt.cyclotomic(static_cast<std::size_t>(d)));
  }
  return acc;
}

FieldElement okada_entry(std::int64_t i, std::int64_t j, const QPoint& qpt) {
  if (i < 1 || j < 1) throw InvalidArgument("okada_entry: indices start at 1");
  const auto& mod = qpt.modulus();
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  FieldElement inner = mod.add(qbinom(i + j - 2, i - 1, qpt),
                               mod.mul(qpt.reduced(), qbinom(i + j - 1, i, qpt)));
  FieldElement v = mod.mul(qpt.power(ui + uj - 1), inner);
  v = mod.add(v, mod.mul(mod.add(FieldElement(1), qpt.power(ui)), delta(i, j)));
  return mod.sub(v, delta(i, j + 1));
}

BigInt okada_entry_q1(std::int64_t i, std::int64_t j) {
  if (i < 1 || j < 1) throw InvalidArgument("okada_entry_q1: indices start at 1");
  BigInt v = binomial(i + j - 2, i - 1) + binomial(i + j - 1, i);
  if (i == j) v += 2;
  if (i == j + 1) v -= 1;
  return v;
}

FieldElement qtspp_orbit_product(std::size_t n, const QPoint& qpt) {
  if (!qpt.is_unit()) return evaluate(orbit_product_factors(n), qpt);
  const auto& mod = qpt.modulus();
  const auto sn = static_cast<std::int64_t>(n);
  FieldElement num(1), den(1);
  for (std::int64_t i = 1; i <= sn; ++i) {
    for (std::int64_t j = i; j <= sn; ++j) {
      for (std::int64_t k = j; k <= sn; ++k) {
        num = mod.mul(num, factor(i + j + k - 1, qpt));
        den = mod.mul(den, factor(i + j + k - 2, qpt));
      }
    }
  }
  return mod.mul(num, checked_inverse(den, qpt, "qtspp_orbit_product"));
}

BigInt tspp_count(std::size_t n) {
  BigRational r = 1;
  const auto sn = static_cast<std::int64_t>(n);
  for (std::int64_t i = 1; i <= sn; ++i) {
    for (std::int64_t j = i; j <= sn; ++j) {
      for (std::int64_t k = j; k <= sn; ++k) r *= BigRational(i + j + k - 1, i + j + k - 2);
    }
  }
  return boost::multiprecision::numerator(r);
}

FieldElement nice_ratio(std::size_t n, const QPoint& qpt) {
  if (n < 1) throw InvalidArgument("nice_ratio: n must be >= 1");
  const auto& mod = qpt.modulus();
  const auto sn = static_cast<std::int64_t>(n);
  if (!qpt.is_unit()) {
    CyclotomicProduct prod;
    for (std::int64_t i = 1; i <= sn; ++i)
      for (std::int64_t j = i; j <= sn; ++j) {
        prod.multiply(static_cast<std::size_t>(i + j + sn - 1), 2);
        prod.divide(static_cast<std::size_t>(i + j + sn - 2), 2);
      }
    return evaluate(prod, qpt);
  }
  FieldElement num(1), den(1);
  for (std::int64_t i = 1; i <= sn; ++i) {
    for (std::int64_t j = i; j <= sn; ++j) {
      num = mod.mul(num, factor(i + j + sn - 1, qpt));
      den = mod.mul(den, factor(i + j + sn - 2, qpt));
    }
  }
  FieldElement r = mod.mul(num, checked_inverse(den, qpt, "nice_ratio"));
  return mod.mul(r, r);
}

OkadaMatrixSlice okada_matrix(std::size_t n, const QPoint& qpt) {
  DenseMatrix m(n, n, qpt.modulus());
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      m.set(i - 1, j - 1,
            okada_entry(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), qpt));
    }
  }
  return {n, qpt, std::move(m)};
}

}  // namespace qtspp
