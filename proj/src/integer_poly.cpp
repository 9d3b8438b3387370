#include "qtspp/integer_poly.hpp"

#include <boost/multiprecision/integer.hpp>
#include <sstream>

namespace qtspp {

IntegerPoly::IntegerPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntegerPoly::content() const {
  BigInt g = 0;
  for (const auto& c : c_) g = boost::multiprecision::gcd(g, c);
  return abs(g);
}

BigInt IntegerPoly::max_abs() const {
  BigInt m = 0;
  for (const auto& c : c_) m = std::max(m, BigInt(abs(c)));
  return m;
}

BigInt IntegerPoly::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

FieldElement IntegerPoly::evaluate(FieldElement x, const PrimeModulus& mod) const {
  FieldElement acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = mod.add(mod.mul(acc, x), reduce(*it, mod));
  return acc;
}

std::string IntegerPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    BigInt mag = abs(c_[k]);
    os << (c_[k] < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (mag != 1 || k == 0) os << mag << (k > 0 ? "*" : "");
    if (k > 0) os << var << (k > 1 ? "^" + std::to_string(k) : "");
    first = false;
  }
  return os.str();
}

}  // namespace qtspp
