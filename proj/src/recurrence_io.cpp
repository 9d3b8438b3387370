#include "qtspp/recurrence_io.hpp"

#include <istream>
#include <limits>
#include <ostream>

#include "qtspp/errors.hpp"

namespace qtspp {

using nlohmann::json;

namespace {

json term_json(const AnsatzTerm& t) {
  json a = json::array({t.alpha, t.beta, t.gamma});
  if (t.gamma_n != 0) a.push_back(t.gamma_n);
  return a;
}

AnsatzTerm term_from(const json& a) {
  if (!a.is_array() || a.size() < 3 || a.size() > 4) throw FormatError("term must be [alpha, beta, gamma(, gamma_n)]");
  AnsatzTerm t{a[0].get<int>(), a[1].get<int>(), a[2].get<int>(), a.size() == 4 ? a[3].get<int>() : 0};
  return t;
}

json support_json(const AnsatzSupport& s) {
  const auto& b = s.bounds();
  json bounds = {{"alpha_max", b.alpha_max}, {"beta_max", b.beta_max}, {"gamma_max", b.gamma_max},
                 {"gamma_n_max", b.gamma_n_max}};
  json terms = json::array();
  for (const auto& t : s.terms()) terms.push_back(term_json(t));
  return {{"bounds", bounds}, {"terms", terms}};
}

AnsatzSupport support_from(const json& doc) {
  const auto& b = doc.at("bounds");
  AnsatzBounds bounds{b.at("alpha_max").get<int>(), b.at("beta_max").get<int>(),
                      b.at("gamma_max").get<int>(), b.at("gamma_n_max").get<int>()};
  std::vector<AnsatzTerm> terms;
  for (const auto& t : doc.at("terms")) terms.push_back(term_from(t));
  const std::size_t count = terms.size();
  AnsatzSupport s(bounds, std::move(terms));
  if (s.size() != count) throw FormatError("support terms must be distinct");
  return s;
}

// Header shared by both modes.
json common(const char* mode, const AnsatzSupport& support, const PrimeModulus& mod,
            std::size_t pivot) {
  return {{"mode", mode},
          {"prime", mod.p()},
          {"support", support_json(support)},
          {"pivot", term_json(support[pivot])}};
}

std::size_t pivot_from(const json& doc, const AnsatzSupport& s) {
  auto idx = s.index_of(term_from(doc.at("pivot")));
  if (!idx) throw FormatError("pivot term is not in the support");
  return *idx;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("recurrence document: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("recurrence document: ") + e.what());
  }
}

}  // namespace

json bigint_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

BigInt json_to_bigint(const json& v) {
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? BigInt(v.get<std::uint64_t>()) : BigInt(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
      throw FormatError("not a decimal integer: " + s);
    }
    return BigInt(s);
  }
  throw FormatError("expected an integer");
}

json to_json(const ModularRecurrence& rec) {
  json doc = common("modular", rec.support, rec.modulus, rec.pivot);
  json coeffs = json::array();
  for (auto c : rec.coefficients) coeffs.push_back(c.value);
  doc["coefficients"] = coeffs;
  doc["q_points_used"] = json::array({rec.q_int});
  doc["nullspace_dim"] = rec.nullspace_dim;
  doc["zero_count"] = rec.zero_count();
  return doc;
}

json to_json(const SymbolicRecurrence& rec) {
  json doc = common("symbolic", rec.support, rec.modulus, rec.pivot);
  json coeffs = json::array();
  for (const auto& p : rec.coefficients) {
    json c = json::array();
    for (const auto& v : p.coefficients()) c.push_back(bigint_to_json(v));
    coeffs.push_back(c);
  }
  doc["coefficients"] = coeffs;
  doc["q_points_used"] = rec.q_points;
  doc["max_abs_coefficient"] = bigint_to_json(rec.max_abs_coefficient());
  return doc;
}

ModularRecurrence modular_from_json(const json& doc) {
  return guarded([&] {
    if (doc.at("mode") != "modular") throw FormatError("mode is not modular");
    ModularRecurrence rec;
    rec.support = support_from(doc.at("support"));
    rec.modulus = PrimeModulus(doc.at("prime").get<std::uint32_t>());
    const auto& qs = doc.at("q_points_used");
    if (qs.size() != 1) throw FormatError("a modular recurrence uses exactly one q-point");
    rec.q_int = qs[0].get<std::int64_t>();
    const auto& cs = doc.at("coefficients");
    if (cs.size() != rec.support.size()) throw FormatError("coefficient count differs from the support");
    for (const auto& c : cs) {
      const auto v = c.get<std::uint64_t>();
      if (v >= rec.modulus.p()) throw FormatError("coefficient not reduced mod p");
      rec.coefficients.emplace_back(static_cast<std::uint32_t>(v));
    }
    rec.pivot = pivot_from(doc, rec.support);
    rec.nullspace_dim = doc.value("nullspace_dim", std::size_t{1});
    return rec;
  });
}

SymbolicRecurrence symbolic_from_json(const json& doc) {
  return guarded([&] {
    if (doc.at("mode") != "symbolic") throw FormatError("mode is not symbolic");
    SymbolicRecurrence rec;
    rec.support = support_from(doc.at("support"));
    rec.modulus = PrimeModulus(doc.at("prime").get<std::uint32_t>());
    const auto& cs = doc.at("coefficients");
    if (cs.size() != rec.support.size()) throw FormatError("coefficient count differs from the support");
    for (const auto& c : cs) {
      std::vector<BigInt> v;
      for (const auto& x : c) v.push_back(json_to_bigint(x));
      rec.coefficients.emplace_back(std::move(v));
    }
    rec.pivot = pivot_from(doc, rec.support);
    rec.q_points = doc.at("q_points_used").get<std::vector<std::int64_t>>();
    return rec;
  });
}

void write_recurrence(std::ostream& os, const ModularRecurrence& rec) { os << to_json(rec).dump(1) << '\n'; }
void write_recurrence(std::ostream& os, const SymbolicRecurrence& rec) { os << to_json(rec).dump(1) << '\n'; }

AnyRecurrence read_recurrence(std::istream& is) {
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::exception& e) {
    throw FormatError(std::string("recurrence document is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("mode")) throw FormatError("recurrence document lacks a mode");
  if (doc["mode"] == "modular") return modular_from_json(doc);
  if (doc["mode"] == "symbolic") return symbolic_from_json(doc);
  throw FormatError("unknown recurrence mode");
}

}  // namespace qtspp
