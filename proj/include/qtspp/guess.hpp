#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qtspp/ansatz.hpp"
#include "qtspp/cofactor.hpp"
#include "qtspp/integer_poly.hpp"

namespace qtspp {

/// One nullspace vector of the ansatz system at a single q-point.
struct ModularRecurrence {
  AnsatzSupport support;
  std::int64_t q_int = 0;
  PrimeModulus modulus;
  FieldVector coefficients;  // parallel to support.terms()
  std::size_t pivot = 0;     // index of the term normalized to 1
  std::size_t nullspace_dim = 0;

  std::size_t zero_count() const noexcept;
  const AnsatzTerm& pivot_term() const { return support[pivot]; }
};

/// Recurrence with coefficients in Z[q], jointly primitive (content 1) and
/// normalized so the pivot polynomial has a positive leading coefficient.
struct SymbolicRecurrence {
  AnsatzSupport support;
  PrimeModulus modulus;
  std::vector<IntegerPoly> coefficients;  // parallel to support.terms()
  std::size_t pivot = 0;
  std::vector<std::int64_t> q_points;

  BigInt max_abs_coefficient() const;
  /// Coefficients reduced and evaluated at qpt.
  FieldVector specialize(const QPoint& qpt) const;
};

/// Integer coefficients beyond this magnitude mark a probable artefact
/// solution; genuine recurrences have small integers.
inline const BigInt kArtefactThreshold = BigInt(1000000);

bool looks_like_artefact(const SymbolicRecurrence& rec);

/// Nullspace of build_equations, normalized so the first nonzero term (in
/// support order) is 1. Throws NoRecurrence for a trivial nullspace. For a
/// nullspace of dimension > 1 the first echelon basis vector is returned and
/// the dimension recorded.
ModularRecurrence guess_modular(const CofactorTable& table, const AnsatzSupport& support,
                                EquationSet set = EquationSet::full_triangle);

/// Restricts the support to the nonzero coefficients. Requires dimension 1.
AnsatzSupport refine_support(const ModularRecurrence& rec);

struct SkippedPoint {
  std::int64_t q_int;
  std::string reason;
};

struct SweepOptions {
  std::size_t n_max = 35;
  std::size_t workers = 1;
  std::size_t min_points = 20;
  EquationSet equations = EquationSet::full_triangle;
  /// Index into the support of the term fixed to 1 on every q-point.
  std::size_t pivot = 0;
  /// Rows of B' with a pole at a q-point are rescaled (j-shift supports
  /// only) rather than dropping the whole point.
  PoleMode poles = PoleMode::rescale;
};

struct SweepResult {
  std::vector<ModularRecurrence> recurrences;  // sorted by q_int
  std::vector<SkippedPoint> skipped;           // sorted by q_int
};

/// One modular guess per admissible q in [q_from, q_to], all normalized on
/// the same pivot term. Inadmissible q, singular tables, nullspace dimension
/// != 1 and a vanishing pivot are recorded in `skipped`.
/// Throws TooFewPoints if fewer than opts.min_points survive (unless the range
/// is empty).
SweepResult sweep(const AnsatzSupport& support, std::int64_t q_from, std::int64_t q_to,
                  const PrimeModulus& mod, const SweepOptions& opts);

/// Per-term rational function reconstruction in q, common denominator,
/// rational number lifting and content removal; the result is checked
/// against every input sample. Throws ReconstructionFailed.
SymbolicRecurrence reconstruct_symbolic(const std::vector<ModularRecurrence>& recs,
                                        std::size_t workers = 1);

/// sum over terms of c * q^{alpha n + beta j} B'(n + gamma_n, j + gamma); zero
/// iff the recurrence annihilates the table at (n, j).
FieldElement apply_recurrence(const AnsatzSupport& support, const FieldVector& coefficients,
                              const CofactorTable& table, std::int64_t n, std::int64_t j);
FieldElement apply_recurrence(const ModularRecurrence& rec, const CofactorTable& table,
                              std::int64_t n, std::int64_t j);
FieldElement apply_recurrence(const SymbolicRecurrence& rec, const CofactorTable& table,
                              std::int64_t n, std::int64_t j);

/// sum_{alpha,beta} c_{alpha,beta,gamma}(q) Qn^alpha Qj^beta with independent
/// values for q, q^n and q^j (j-shift terms only).
FieldElement shift_coefficient(const SymbolicRecurrence& rec, int gamma, FieldElement q,
                               FieldElement qn, FieldElement qj);

}  // namespace qtspp
