#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "qtspp/cofactor.hpp"
#include "qtspp/matrix.hpp"

namespace qtspp {

/// One monomial-shift term q^{alpha n} q^{beta j} B'(n + gamma_n, j + gamma).
/// Ordered by (gamma_n, gamma, beta, alpha).
struct AnsatzTerm {
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  int gamma_n = 0;

  friend constexpr bool operator==(const AnsatzTerm&, const AnsatzTerm&) = default;
  friend constexpr auto operator<=>(const AnsatzTerm& a, const AnsatzTerm& b) {
    if (auto c = a.gamma_n <=> b.gamma_n; c != 0) return c;
    if (auto c = a.gamma <=> b.gamma; c != 0) return c;
    if (auto c = a.beta <=> b.beta; c != 0) return c;
    return a.alpha <=> b.alpha;
  }
};

struct AnsatzBounds {
  int alpha_max = 4;
  int beta_max = 7;
  int gamma_max = 10;
  /// Shifts in n; 0 gives the pure j-shift ansatz.
  int gamma_n_max = 0;

  friend constexpr bool operator==(const AnsatzBounds&, const AnsatzBounds&) = default;
};

/// Sorted, duplicate-free set of terms within `bounds`.
class AnsatzSupport {
 public:
  AnsatzSupport() = default;
  /// Throws InvalidArgument on terms outside the bounds.
  AnsatzSupport(AnsatzBounds bounds, std::vector<AnsatzTerm> terms);

  /// Every term within the bounds: (a+1)(b+1)(g+1)(gn+1) of them.
  static AnsatzSupport full(AnsatzBounds bounds = {});

  const AnsatzBounds& bounds() const noexcept { return bounds_; }
  const std::vector<AnsatzTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const AnsatzTerm& operator[](std::size_t k) const { return terms_[k]; }
  std::optional<std::size_t> index_of(const AnsatzTerm& t) const;
  /// Largest gamma / gamma_n actually present.
  int max_gamma() const noexcept;
  int max_gamma_n() const noexcept;

  friend bool operator==(const AnsatzSupport&, const AnsatzSupport&) = default;

 private:
  AnsatzBounds bounds_;
  std::vector<AnsatzTerm> terms_;
};

/// Which (n, j) windows become equations.
enum class EquationSet {
  /// Every 1 <= j <= n, reading B'(n, j + gamma) = 0 beyond the diagonal.
  full_triangle,
  /// Only windows that stay inside the triangle: j + gamma_max <= n.
  interior,
};

struct EquationWindow {
  std::int64_t n;
  std::int64_t j;
};

/// The (n, j) windows used for `table` under `set`, rows of build_equations
/// in order.
std::vector<EquationWindow> equation_windows(std::size_t n_max, const AnsatzSupport& support,
                                             EquationSet set);

/// One row per window; the column of term (alpha, beta, gamma, gamma_n) holds
/// q^{alpha n + beta j} B'(n + gamma_n, j + gamma).
/// Throws InsufficientData if n_max <= gamma_max + gamma_n_max or no windows remain.
DenseMatrix build_equations(const CofactorTable& table, const AnsatzSupport& support,
                            EquationSet set = EquationSet::full_triangle);

}  // namespace qtspp
