#include "qtspp/poly.hpp"

#include <algorithm>

#include "qtspp/errors.hpp"

namespace qtspp {

PolyOverField::PolyOverField(FieldVector coeffs, const PrimeModulus& mod)
    : mod_(mod), c_(std::move(coeffs)) {
  trim();
}

PolyOverField PolyOverField::constant(FieldElement c, const PrimeModulus& mod) {
  return PolyOverField(FieldVector{c}, mod);
}

PolyOverField PolyOverField::linear_root(FieldElement root, const PrimeModulus& mod) {
  return PolyOverField(FieldVector{mod.neg(root), FieldElement(1)}, mod);
}

void PolyOverField::trim() noexcept {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement PolyOverField::evaluate(FieldElement x) const noexcept {
  FieldElement acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = mod_.add(mod_.mul(acc, x), *it);
  return acc;
}

PolyOverField PolyOverField::scaled(FieldElement s) const {
  FieldVector out(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) out[k] = mod_.mul(c_[k], s);
  return PolyOverField(std::move(out), mod_);
}

PolyOverField PolyOverField::monic() const {
  if (is_zero()) return *this;
  return scaled(mod_.inv(leading()));
}

PolyOverField operator+(const PolyOverField& a, const PolyOverField& b) {
  const auto& mod = a.mod_;
  FieldVector out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = mod.add(a.coeff(k), b.coeff(k));
  return PolyOverField(std::move(out), mod);
}

PolyOverField operator-(const PolyOverField& a, const PolyOverField& b) {
  const auto& mod = a.mod_;
  FieldVector out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = mod.sub(a.coeff(k), b.coeff(k));
  return PolyOverField(std::move(out), mod);
}

PolyOverField operator*(const PolyOverField& a, const PolyOverField& b) {
  const auto& mod = a.mod_;
  if (a.is_zero() || b.is_zero()) return PolyOverField(mod);
  FieldVector out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      out[i + j] = mod.add(out[i + j], mod.mul(a.c_[i], b.c_[j]));
    }
  }
  return PolyOverField(std::move(out), mod);
}

std::pair<PolyOverField, PolyOverField> divmod(const PolyOverField& a, const PolyOverField& b) {
  const auto& mod = a.modulus();
  if (b.is_zero()) throw ZeroInverse("polynomial division by zero");
  if (a.degree() < b.degree()) return {PolyOverField(mod), a};
  FieldVector rem = a.coefficients();
  const FieldVector& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  FieldVector quot(rem.size() - db);
  const FieldElement lead_inv = mod.inv(b.leading());
  for (std::size_t k = quot.size(); k-- > 0;) {
    FieldElement f = mod.mul(rem[k + db], lead_inv);
    quot[k] = f;
    if (f.is_zero()) continue;
    for (std::size_t i = 0; i <= db; ++i) rem[k + i] = mod.sub(rem[k + i], mod.mul(f, bc[i]));
  }
  rem.resize(db);
  return {PolyOverField(std::move(quot), mod), PolyOverField(std::move(rem), mod)};
}

PolyOverField gcd(PolyOverField a, PolyOverField b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyOverField lcm(const PolyOverField& a, const PolyOverField& b) {
  auto g = gcd(a, b);
  return (divmod(a, g).first * b).monic();
}

PolyOverField interpolate_poly(const std::vector<SamplePoint>& points, const PrimeModulus& mod) {
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i].x == points[j].x) {
        throw DuplicateAbscissa("x = " + std::to_string(points[i].x.value) +
                                " appears more than once");
      }
    }
  }
  // Divided differences in place: dd[k] becomes f[x_0, ..., x_k].
  FieldVector dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].y;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      FieldElement num = mod.sub(dd[i], dd[i - 1]);
      FieldElement den = mod.sub(points[i].x, points[i - level].x);
      dd[i] = mod.div(num, den);
    }
  }
  // Horner on the Newton form: p = dd[n-1]; p = p (x - x_k) + dd[k].
  FieldVector acc;
  for (std::size_t k = n; k-- > 0;) {
    FieldVector next(acc.size() + 1);
    const FieldElement xk = points[k].x;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] = mod.add(next[i + 1], acc[i]);
      next[i] = mod.sub(next[i], mod.mul(acc[i], xk));
    }
    next[0] = mod.add(next[0], dd[k]);
    acc = std::move(next);
  }
  return PolyOverField(std::move(acc), mod);
}

}  // namespace qtspp
