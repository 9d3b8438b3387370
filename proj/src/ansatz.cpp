#include "qtspp/ansatz.hpp"

#include <algorithm>
#include <string>

#include "qtspp/errors.hpp"

namespace qtspp {

AnsatzSupport::AnsatzSupport(AnsatzBounds bounds, std::vector<AnsatzTerm> terms)
    : bounds_(bounds), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.alpha < 0 || t.alpha > bounds.alpha_max || t.beta < 0 || t.beta > bounds.beta_max ||
        t.gamma < 0 || t.gamma > bounds.gamma_max || t.gamma_n < 0 ||
        t.gamma_n > bounds.gamma_n_max) {
      throw InvalidArgument("ansatz term outside bounds");
    }
  }
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
}

AnsatzSupport AnsatzSupport::full(AnsatzBounds bounds) {
  std::vector<AnsatzTerm> terms;
  for (int gn = 0; gn <= bounds.gamma_n_max; ++gn)
    for (int g = 0; g <= bounds.gamma_max; ++g)
      for (int b = 0; b <= bounds.beta_max; ++b)
        for (int a = 0; a <= bounds.alpha_max; ++a) terms.push_back({a, b, g, gn});
  return AnsatzSupport(bounds, std::move(terms));
}

std::optional<std::size_t> AnsatzSupport::index_of(const AnsatzTerm& t) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t);
  if (it == terms_.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - terms_.begin());
}

int AnsatzSupport::max_gamma() const noexcept {
  int g = 0;
  for (const auto& t : terms_) g = std::max(g, t.gamma);
  return g;
}

int AnsatzSupport::max_gamma_n() const noexcept {
  int g = 0;
  for (const auto& t : terms_) g = std::max(g, t.gamma_n);
  return g;
}

std::vector<EquationWindow> equation_windows(std::size_t n_max, const AnsatzSupport& support,
                                             EquationSet set) {
  const auto& b = support.bounds();
  const auto top = static_cast<std::int64_t>(n_max) - b.gamma_n_max;
  std::vector<EquationWindow> out;
  for (std::int64_t n = 1; n <= top; ++n) {
    for (std::int64_t j = 1; j <= n; ++j) {
      if (set == EquationSet::interior && j + b.gamma_max > n) continue;
      out.push_back({n, j});
    }
  }
  return out;
}

DenseMatrix build_equations(const CofactorTable& table, const AnsatzSupport& support,
                            EquationSet set) {
  const auto& b = support.bounds();
  if (static_cast<std::int64_t>(table.n_max()) <= b.gamma_max + b.gamma_n_max) {
    throw InsufficientData("n_max = " + std::to_string(table.n_max()) +
                           " does not exceed the shift range " +
                           std::to_string(b.gamma_max + b.gamma_n_max));
  }
  if (support.max_gamma_n() > 0 && !table.rescaled_rows().empty()) {
    throw InvalidArgument("n-shifted terms need a table without rescaled rows");
  }
  const auto windows = equation_windows(table.n_max(), support, set);
  if (windows.empty()) throw InsufficientData("no equation windows");
  const auto& qpt = table.qpt();
  const auto& mod = table.modulus();
  DenseMatrix m(windows.size(), support.size(), mod);
  for (std::size_t r = 0; r < windows.size(); ++r) {
    const auto [n, j] = windows[r];
    auto row = m.row(r);
    for (std::size_t c = 0; c < support.size(); ++c) {
      const auto& t = support[c];
      FieldElement v = table.at(n + t.gamma_n, j + t.gamma);
      if (v.is_zero()) continue;
      auto e = static_cast<std::size_t>(t.alpha * n + t.beta * j);
      row[c] = mod.mul(qpt.power(e), v).value;
    }
  }
  return m;
}

}  // namespace qtspp
