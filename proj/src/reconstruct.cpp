#include "qtspp/reconstruct.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "qtspp/errors.hpp"

namespace qtspp {

FieldElement RationalFunctionOverField::evaluate(FieldElement x) const {
  const auto& mod = numerator.modulus();
  FieldElement d = denominator.evaluate(x);
  if (d.is_zero()) throw PoleAtSample("denominator vanishes at x = " + std::to_string(x.value));
  return mod.div(numerator.evaluate(x), d);
}

namespace {

PolyOverField vanishing_poly(const std::vector<SamplePoint>& points, std::size_t count,
                             const PrimeModulus& mod) {
  PolyOverField m = PolyOverField::constant(FieldElement(1), mod);
  for (std::size_t i = 0; i < count; ++i) m = m * PolyOverField::linear_root(points[i].x, mod);
  return m;
}

enum class Check { match, mismatch, pole };

// Compares num/den against every point; a pole anywhere wins over a mismatch
// only if all other points match.
Check check_candidate(const PolyOverField& num, const PolyOverField& den,
                      const std::vector<SamplePoint>& points, FieldElement* pole_x) {
  const auto& mod = num.modulus();
  bool pole = false;
  for (const auto& pt : points) {
    FieldElement d = den.evaluate(pt.x);
    if (d.is_zero()) {
      pole = true;
      *pole_x = pt.x;
      continue;
    }
    if (num.evaluate(pt.x) != mod.mul(pt.y, d)) return Check::mismatch;
  }
  return pole ? Check::pole : Check::match;
}

RationalFunctionOverField normalized(const PolyOverField& num, const PolyOverField& den) {
  const auto& mod = num.modulus();
  FieldElement s = mod.inv(den.leading());
  return {num.scaled(s), den.scaled(s)};
}

void require_bounds(const std::vector<SamplePoint>& points, std::size_t fit) {
  if (points.size() < fit + 1) {
    throw InvalidArgument("need at least " + std::to_string(fit + 1) + " points, got " +
                          std::to_string(points.size()));
  }
}

}  // namespace

RationalFunctionOverField reconstruct_rational_function(const std::vector<SamplePoint>& points,
                                                        std::size_t deg_num_bound,
                                                        std::size_t deg_den_bound,
                                                        const PrimeModulus& mod) {
  const std::size_t fit = deg_num_bound + deg_den_bound + 1;
  require_bounds(points, fit);
  std::vector<SamplePoint> head(points.begin(), points.begin() + static_cast<long>(fit));
  PolyOverField r0 = vanishing_poly(points, fit, mod);
  PolyOverField r1 = interpolate_poly(head, mod);
  PolyOverField t0(mod);
  PolyOverField t1 = PolyOverField::constant(FieldElement(1), mod);
  while (r1.degree() > static_cast<long>(deg_num_bound)) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    PolyOverField t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1.degree() > static_cast<long>(deg_den_bound) ||
      gcd(r1, t1).degree() > 0) {
    throw NoFit("no rational function with degrees (" + std::to_string(deg_num_bound) + ", " +
                std::to_string(deg_den_bound) + ") interpolates the samples");
  }
  FieldElement pole_x;
  switch (check_candidate(r1, t1, points, &pole_x)) {
    case Check::match: return normalized(r1, t1);
    case Check::pole:
      throw PoleAtSample("reconstructed denominator vanishes at x = " +
                         std::to_string(pole_x.value));
    case Check::mismatch: break;
  }
  throw NoFit("candidate fails on the verification points");
}

RationalFunctionOverField reconstruct_rational_function_adaptive(
    const std::vector<SamplePoint>& points, const PrimeModulus& mod, std::size_t max_total,
    std::size_t min_surplus) {
  if (points.size() < min_surplus + 2) {
    throw NoFit("only " + std::to_string(points.size()) + " samples");
  }
  const std::size_t cap = std::min(max_total, points.size() - 1 - min_surplus);
  std::optional<FieldElement> pole;
  for (std::size_t budget = std::min<std::size_t>(10, cap);; budget = std::min(budget * 2, cap)) {
    const std::size_t fit = budget + 1;
    std::vector<SamplePoint> head(points.begin(), points.begin() + static_cast<long>(fit));
    PolyOverField r0 = vanishing_poly(points, fit, mod);
    PolyOverField r1 = interpolate_poly(head, mod);
    PolyOverField t0(mod);
    PolyOverField t1 = PolyOverField::constant(FieldElement(1), mod);
    const std::vector<SamplePoint> tail(points.begin() + static_cast<long>(fit), points.end());
    while (!(r1.is_zero() && t1.degree() > 0)) {
      // On the fit points r1 = t1 * interpolant holds by construction, so the
      // held-back points are the cheap filter.
      FieldElement pole_x;
      if (check_candidate(r1, t1, tail, &pole_x) != Check::mismatch &&
          gcd(r1, t1).degree() <= 0) {
        switch (check_candidate(r1, t1, points, &pole_x)) {
          case Check::match: return normalized(r1, t1);
          case Check::pole: pole = pole_x; break;
          case Check::mismatch: break;
        }
      }
      if (r1.is_zero()) break;
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      PolyOverField t2 = t0 - q * t1;
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (budget == cap) break;
  }
  if (pole) {
    throw PoleAtSample("best candidate has a pole at sample x = " + std::to_string(pole->value));
  }
  throw NoFit("no rational function of total degree <= " + std::to_string(cap) +
              " matches all " + std::to_string(points.size()) + " samples");
}

RationalNumber reconstruct_rational_number(FieldElement r, const PrimeModulus& mod) {
  const std::int64_t p = mod.p();
  std::int64_t bound = 0;
  while ((bound + 1) * (bound + 1) <= p / 2) ++bound;
  // Euclid on (p, r) with the cofactor of r tracked; r_k = t_k * r (mod p).
  std::int64_t r0 = p, r1 = r.value, t0 = 0, t1 = 1;
  while (r1 > bound) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  std::int64_t b = t1 < 0 ? -t1 : t1;
  std::int64_t a = t1 < 0 ? -r1 : r1;
  if (b > bound || std::gcd(r1, b) != 1) {
    throw NoReconstruction("no fraction with |a|, b <= " + std::to_string(bound) + " for " +
                           std::to_string(r.value));
  }
  return {BigInt(a), BigInt(b)};
}

}  // namespace qtspp
