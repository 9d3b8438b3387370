#include "qtspp/guess.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "qtspp/errors.hpp"
#include "qtspp/parallel.hpp"
#include "qtspp/reconstruct.hpp"

namespace qtspp {

std::size_t ModularRecurrence::zero_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(coefficients.begin(), coefficients.end(), [](FieldElement c) { return c.is_zero(); }));
}

BigInt SymbolicRecurrence::max_abs_coefficient() const {
  BigInt m = 0;
  for (const auto& c : coefficients) m = std::max(m, c.max_abs());
  return m;
}

FieldVector SymbolicRecurrence::specialize(const QPoint& qpt) const {
  FieldVector out(coefficients.size());
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    out[k] = coefficients[k].evaluate(qpt.reduced(), qpt.modulus());
  }
  return out;
}

bool looks_like_artefact(const SymbolicRecurrence& rec) {
  return rec.max_abs_coefficient() > kArtefactThreshold;
}

ModularRecurrence guess_modular(const CofactorTable& table, const AnsatzSupport& support,
                                EquationSet set) {
  const auto& mod = table.modulus();
  auto basis = nullspace(build_equations(table, support, set));
  if (basis.empty()) {
    throw NoRecurrence("ansatz of " + std::to_string(support.size()) +
                       " terms has only the trivial solution at q = " +
                       std::to_string(table.qpt().q_int()));
  }
  FieldVector v = std::move(basis.front());
  std::size_t pivot = 0;
  while (v[pivot].is_zero()) ++pivot;
  FieldElement s = mod.inv(v[pivot]);
  for (auto& c : v) c = mod.mul(c, s);
  return ModularRecurrence{support, table.qpt().q_int(), mod, std::move(v), pivot, basis.size()};
}

AnsatzSupport refine_support(const ModularRecurrence& rec) {
  if (rec.nullspace_dim != 1) {
    throw InvalidArgument("refine_support needs a one-dimensional solution space, got " +
                          std::to_string(rec.nullspace_dim));
  }
  std::vector<AnsatzTerm> kept;
  for (std::size_t k = 0; k < rec.coefficients.size(); ++k) {
    if (!rec.coefficients[k].is_zero()) kept.push_back(rec.support[k]);
  }
  return AnsatzSupport(rec.support.bounds(), std::move(kept));
}

SweepResult sweep(const AnsatzSupport& support, std::int64_t q_from, std::int64_t q_to,
                  const PrimeModulus& mod, const SweepOptions& opts) {
  if (q_from < 2) throw InvalidArgument("sweep starts at q >= 2");
  if (opts.pivot >= support.size()) throw InvalidArgument("sweep pivot outside the support");
  SweepResult result;
  if (q_to < q_from) return result;

  const auto count = static_cast<std::size_t>(q_to - q_from + 1);
  std::vector<std::optional<ModularRecurrence>> found(count);
  std::vector<std::string> why(count);
  parallel_for(count, opts.workers, [&](std::size_t k) {
    const std::int64_t q = q_from + static_cast<std::int64_t>(k);
    if (!is_admissible(q, mod, opts.n_max)) {
      why[k] = "q is zero or a root of unity of order below " + std::to_string(kMinimumOrder) + " mod p";
      return;
    }
    const QPoint qpt = make_qpoint(q, mod, opts.n_max);
    std::optional<CofactorTable> table;
    try {
      const PoleMode poles = support.max_gamma_n() > 0 ? PoleMode::reject : opts.poles;
      table.emplace(build_table(opts.n_max, qpt, 1, poles));
    } catch (const SingularMatrix& e) {
      why[k] = "B' undetermined or with a pole at n = " + std::to_string(e.index());
      return;
    }
    auto basis = nullspace(build_equations(*table, support, opts.equations));
    if (basis.size() != 1) {
      why[k] = "nullspace dimension " + std::to_string(basis.size());
      return;
    }
    FieldVector v = std::move(basis.front());
    if (v[opts.pivot].is_zero()) {
      why[k] = "pivot coefficient vanishes";
      return;
    }
    FieldElement s = mod.inv(v[opts.pivot]);
    for (auto& c : v) c = mod.mul(c, s);
    found[k] = ModularRecurrence{support, q, mod, std::move(v), opts.pivot, 1};
  });
  for (std::size_t k = 0; k < count; ++k) {
    const std::int64_t q = q_from + static_cast<std::int64_t>(k);
    if (found[k]) {
      result.recurrences.push_back(std::move(*found[k]));
    } else {
      result.skipped.push_back({q, why[k]});
    }
  }
  if (result.recurrences.size() < opts.min_points) {
    throw TooFewPoints(std::to_string(result.recurrences.size()) + " usable q-points in [" +
                       std::to_string(q_from) + ", " + std::to_string(q_to) + "], need " +
                       std::to_string(opts.min_points));
  }
  return result;
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw ReconstructionFailed(what); }

std::string term_name(const AnsatzTerm& t) {
  std::string s = "(" + std::to_string(t.alpha) + "," + std::to_string(t.beta) + "," +
                  std::to_string(t.gamma);
  if (t.gamma_n != 0) s += "," + std::to_string(t.gamma_n);
  return s + ")";
}

}  // namespace

SymbolicRecurrence reconstruct_symbolic(const std::vector<ModularRecurrence>& recs,
                                        std::size_t workers) {
  if (recs.empty()) fail("no modular images");
  const auto& first = recs.front();
  const auto& mod = first.modulus;
  const std::size_t terms = first.support.size();
  for (const auto& r : recs) {
    if (r.support != first.support || r.pivot != first.pivot || r.modulus != mod) {
      fail("modular images disagree on support, pivot or prime");
    }
  }

  // Rational function in q for every term, pivot fixed to 1.
  std::vector<std::optional<RationalFunctionOverField>> ratfun(terms);
  parallel_for(terms, workers, [&](std::size_t t) {
    std::vector<SamplePoint> pts;
    pts.reserve(recs.size());
    for (const auto& r : recs) pts.push_back({mod.from_int(r.q_int), r.coefficients[t]});
    try {
      ratfun[t] = reconstruct_rational_function_adaptive(pts, mod);
    } catch (const NoFit& e) {
      fail("term " + term_name(first.support[t]) + ": " + e.what());
    } catch (const PoleAtSample& e) {
      fail("term " + term_name(first.support[t]) + ": " + e.what());
    }
  });

  PolyOverField common = PolyOverField::constant(FieldElement(1), mod);
  for (const auto& f : ratfun) common = lcm(common, f->denominator);

  std::vector<std::vector<BigRational>> lifted(terms);
  BigInt den_lcm = 1;
  for (std::size_t t = 0; t < terms; ++t) {
    const auto& f = *ratfun[t];
    PolyOverField poly = f.numerator * divmod(common, f.denominator).first;
    for (auto c : poly.coefficients()) {
      RationalNumber r{};
      try {
        r = reconstruct_rational_number(c, mod);
      } catch (const NoReconstruction& e) {
        fail("term " + term_name(first.support[t]) + ": " + e.what());
      }
      den_lcm = boost::multiprecision::lcm(den_lcm, r.den);
      lifted[t].emplace_back(r.num, r.den);
    }
  }

  std::vector<std::vector<BigInt>> ints(terms);
  BigInt content = 0;
  for (std::size_t t = 0; t < terms; ++t) {
    for (const auto& c : lifted[t]) {
      BigRational scaled = c * den_lcm;
      ints[t].push_back(boost::multiprecision::numerator(scaled));
      content = boost::multiprecision::gcd(content, ints[t].back());
    }
  }
  if (content == 0) fail("all coefficients vanish");
  content = abs(content);
  const auto& pivot_coeffs = ints[first.pivot];
  if (!pivot_coeffs.empty() && pivot_coeffs.back() < 0) content = -content;

  SymbolicRecurrence out{first.support, mod, {}, first.pivot, {}};
  for (auto& cs : ints) {
    for (auto& c : cs) c /= content;
    out.coefficients.emplace_back(std::move(cs));
  }
  for (const auto& r : recs) out.q_points.push_back(r.q_int);

  // Every modular image must be the specialization up to the pivot factor.
  for (const auto& r : recs) {
    const FieldElement q = mod.from_int(r.q_int);
    const FieldElement lead = out.coefficients[out.pivot].evaluate(q, mod);
    for (std::size_t t = 0; t < terms; ++t) {
      if (out.coefficients[t].evaluate(q, mod) != mod.mul(lead, r.coefficients[t])) {
        fail("reconstruction disagrees with the image at q = " + std::to_string(r.q_int) +
             " for term " + term_name(first.support[t]));
      }
    }
  }
  return out;
}

FieldElement apply_recurrence(const AnsatzSupport& support, const FieldVector& coefficients,
                              const CofactorTable& table, std::int64_t n, std::int64_t j) {
  const auto& qpt = table.qpt();
  const auto& mod = table.modulus();
  FieldElement acc(0);
  for (std::size_t k = 0; k < support.size(); ++k) {
    const auto& t = support[k];
    if (coefficients[k].is_zero()) continue;
    FieldElement v = table.at(n + t.gamma_n, j + t.gamma);
    if (v.is_zero()) continue;
    auto e = static_cast<std::size_t>(t.alpha * n + t.beta * j);
    acc = mod.add(acc, mod.mul(coefficients[k], mod.mul(qpt.power(e), v)));
  }
  return acc;
}

FieldElement apply_recurrence(const ModularRecurrence& rec, const CofactorTable& table,
                              std::int64_t n, std::int64_t j) {
  return apply_recurrence(rec.support, rec.coefficients, table, n, j);
}

FieldElement apply_recurrence(const SymbolicRecurrence& rec, const CofactorTable& table,
                              std::int64_t n, std::int64_t j) {
  return apply_recurrence(rec.support, rec.specialize(table.qpt()), table, n, j);
}

FieldElement shift_coefficient(const SymbolicRecurrence& rec, int gamma, FieldElement q,
                               FieldElement qn, FieldElement qj) {
  const auto& mod = rec.modulus;
  FieldElement acc(0);
  for (std::size_t k = 0; k < rec.support.size(); ++k) {
    const auto& t = rec.support[k];
    if (t.gamma != gamma || t.gamma_n != 0) continue;
    FieldElement mono = mod.mul(mod.pow(qn, static_cast<std::uint64_t>(t.alpha)),
                                mod.pow(qj, static_cast<std::uint64_t>(t.beta)));
    acc = mod.add(acc, mod.mul(rec.coefficients[k].evaluate(q, mod), mono));
  }
  return acc;
}

}  // namespace qtspp
