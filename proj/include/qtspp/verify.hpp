#pragma once

// Identity checks on cofactor tables, extended annihilation, the q = 1
// constant-term route and brute-force enumeration of TSPPs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtspp/bigint.hpp"
#include "qtspp/cofactor.hpp"
#include "qtspp/guess.hpp"
#include "qtspp/integer_poly.hpp"

namespace qtspp {

/// One failed residual. i = 0 where the identity has no i index.
struct CheckFailure {
  std::int64_t q_int;
  std::size_t n;
  std::size_t i;
  std::string detail;
};

/// Numbers of distinct q-points against the degree bound D(n) of the
/// cleared (Okada) residual in q: more points than D(n), all passing, would
/// make the identity at row n hold for symbolic q.
struct TransferBound {
  std::size_t n;
  std::size_t points;
  std::size_t degree_bound;
};

struct VerificationReport {
  std::string identity;
  std::size_t L = 0;
  std::vector<std::int64_t> q_points;
  std::size_t checks = 0;
  std::vector<CheckFailure> failures;  // sorted by (q, n, i)
  std::vector<TransferBound> transfer;
  double seconds = 0;

  bool pass() const noexcept { return failures.empty(); }
  /// Lowest failing row, or 0.
  std::size_t first_failing_n() const noexcept;
};

nlohmann::json to_json(const VerificationReport& report);
/// Fixed-width summary for terminals.
std::string summary(const VerificationReport& report);

/// sum_j B'(n,j) a(i,j) = 0 for 1 <= i < n <= L on each table.
VerificationReport check_soichi(std::span<const CofactorTable> tables, std::size_t L,
                                std::size_t workers = 1);
/// sum_j B'(n,j) a(n,j) = nice_ratio(n) for 1 <= n <= L on each table.
VerificationReport check_okada(std::span<const CofactorTable> tables, std::size_t L,
                               std::size_t workers = 1);
/// B'(n,n) = 1 on every row.
VerificationReport check_normalization(const CofactorTable& table);
/// Fresh table to n_ext at (q_int, mod), annihilated by rec on every (n, j).
VerificationReport check_extended(const SymbolicRecurrence& rec, std::int64_t q_int,
                                  const PrimeModulus& mod, std::size_t n_ext,
                                  std::size_t workers = 1);

/// The six factors expected in the top (largest gamma) shift coefficient,
/// as conditions on (q, Q = q^n, J = q^j): J q^6 = 1, J q^10 = -1,
/// Q = J q^9, Q = J q^10, Q J q^9 = 1, Q J q^10 = 1. Draws `points` random
/// points, cycling through the factors, solves each condition for one of
/// Q, J and checks that the coefficient vanishes there. A generic point where
/// it must not vanish is checked too.
VerificationReport check_leading_factors(const SymbolicRecurrence& rec, std::size_t points = 200,
                                         std::uint64_t seed = 1);

/// D(n): a degree bound in q for the (Okada) residual at row n after
/// clearing denominators.
std::size_t okada_degree_bound(std::size_t n);

// ---- q = 1 constant-term route ------------------------------------------

/// rows[n-1][j-1] = B'(n, j) at q = 1, exactly.
using RationalTable = std::vector<std::vector<BigRational>>;

/// Exact solve over Q of the q = 1 system for every n <= n_max.
RationalTable exact_table_q1(std::size_t n_max);

/// CT[g_i(x) f_n(x) / x^n] with g_i = x(2-x)/(1-x)^{i+1} + 2x^i - x^{i-1}
/// and f_n(x) = sum_j B'(n, n-j) x^j, from power series truncated at x^T.
/// Throws SeriesTruncationTooShort if T <= n.
BigRational ct_value(const std::vector<BigRational>& row, std::size_t i, std::size_t truncation);
FieldElement ct_value(const FieldVector& row, std::size_t i, std::size_t truncation,
                      const PrimeModulus& mod);

/// The (Soichi') identities for 1 <= i < n and (Okada') for i = n, n <= n_max_ct.
VerificationReport ct_check_q1(const RationalTable& table, std::size_t n_max_ct);
/// Modular variant on a q = 1 table.
VerificationReport ct_check_q1(const CofactorTable& table, std::size_t n_max_ct);
/// Exact route on exact_table_q1(n_max_ct).
VerificationReport ct_check_q1(std::size_t n_max_ct);

// ---- brute force --------------------------------------------------------

struct OrbitTriple {
  int i, j, k;  // 1 <= i <= j <= k <= n
  friend bool operator==(const OrbitTriple&, const OrbitTriple&) = default;
};

/// Orbit representatives of the S3 action on [n]^3 with componentwise order
/// of the sorted triples. Elements are listed in a linear extension.
class OrbitPoset {
 public:
  explicit OrbitPoset(int n);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<OrbitTriple>& elements() const noexcept { return elements_; }
  bool leq(std::size_t a, std::size_t b) const noexcept;
  /// Indices strictly below element b that it covers.
  const std::vector<std::size_t>& lower_covers(std::size_t b) const { return covers_.at(b); }

 private:
  int n_;
  std::vector<OrbitTriple> elements_;
  std::vector<std::vector<std::size_t>> covers_;
};

/// sum over order ideals I of OrbitPoset(n) of q^{|I|}. Throws SizeLimit for n > 4.
IntegerPoly brute_force_qtspp(int n);

}  // namespace qtspp
