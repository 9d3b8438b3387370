#include "qtspp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "qtspp/errors.hpp"
#include "qtspp/parallel.hpp"
#include "qtspp/simd/kernels.hpp"

namespace qtspp {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void sort_failures(std::vector<CheckFailure>& f) {
  std::sort(f.begin(), f.end(), [](const CheckFailure& a, const CheckFailure& b) {
    return std::tie(a.q_int, a.n, a.i) < std::tie(b.q_int, b.n, b.i);
  });
}

std::vector<std::uint32_t> raw(const FieldVector& v) {
  std::vector<std::uint32_t> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k].value;
  return out;
}

void require_cover(const CofactorTable& t, std::size_t L, const char* who) {
  if (L > t.n_max()) {
    throw InvalidArgument(std::string(who) + ": table at q = " + std::to_string(t.qpt().q_int()) +
                          " stops at n = " + std::to_string(t.n_max()) + " < L = " + std::to_string(L));
  }
}

// Per-table outcomes, merged in table order.
struct Partial {
  std::size_t checks = 0;
  std::vector<CheckFailure> failures;
};

template <class PerTable>
VerificationReport run_tables(const char* name, std::span<const CofactorTable> tables, std::size_t L,
                              std::size_t workers, PerTable&& per_table) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.identity = name;
  r.L = L;
  std::vector<Partial> parts(tables.size());
  parallel_for(tables.size(), workers, [&](std::size_t k) { parts[k] = per_table(tables[k]); });
  for (std::size_t k = 0; k < tables.size(); ++k) {
    r.q_points.push_back(tables[k].qpt().q_int());
    r.checks += parts[k].checks;
    r.failures.insert(r.failures.end(), parts[k].failures.begin(), parts[k].failures.end());
  }
  sort_failures(r.failures);
  r.seconds = since(t0);
  return r;
}

}  // namespace

std::size_t VerificationReport::first_failing_n() const noexcept {
  std::size_t best = 0;
  for (const auto& f : failures)
    if (best == 0 || f.n < best) best = f.n;
  return best;
}

json to_json(const VerificationReport& r) {
  constexpr std::size_t kListed = 100;
  json failures = json::array();
  for (std::size_t k = 0; k < r.failures.size() && k < kListed; ++k) {
    const auto& f = r.failures[k];
    failures.push_back({{"q", f.q_int}, {"n", f.n}, {"i", f.i}, {"detail", f.detail}});
  }
  json transfer = json::array();
  for (const auto& t : r.transfer) {
    transfer.push_back({{"n", t.n},
                        {"points", t.points},
                        {"degree_bound", t.degree_bound},
                        {"symbolic", t.points > t.degree_bound}});
  }
  return {{"identity", r.identity},
          {"L", r.L},
          {"q_points", r.q_points},
          {"checks", r.checks},
          {"pass", r.pass()},
          {"failure_count", r.failures.size()},
          {"failures", failures},
          {"transfer", transfer}};
}

std::string summary(const VerificationReport& r) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-16s L=%-4zu q-points=%-4zu checks=%-8zu failures=%-6zu %s  (%.2fs)\n",
                r.identity.c_str(), r.L, r.q_points.size(), r.checks, r.failures.size(),
                r.pass() ? "PASS" : "FAIL", r.seconds);
  os << line;
  for (std::size_t k = 0; k < r.failures.size() && k < 5; ++k) {
    const auto& f = r.failures[k];
    os << "    q=" << f.q_int << " n=" << f.n;
    if (f.i) os << " i=" << f.i;
    if (!f.detail.empty()) os << ": " << f.detail;
    os << '\n';
  }
  if (r.failures.size() > 5) os << "    ... " << r.failures.size() - 5 << " more\n";
  if (!r.transfer.empty()) {
    const auto& t = r.transfer.back();
    os << "    n=" << t.n << ": " << t.points << " q-points vs degree bound " << t.degree_bound << '\n';
  }
  return os.str();
}

VerificationReport check_soichi(std::span<const CofactorTable> tables, std::size_t L,
                                std::size_t workers) {
  for (const auto& t : tables) require_cover(t, L, "check_soichi");
  return run_tables("soichi", tables, L, workers, [L](const CofactorTable& t) {
    Partial p;
    const auto a = okada_matrix(L, t.qpt());
    const auto prime = t.modulus().p();
    for (std::size_t n = 2; n <= L; ++n) {
      const auto x = raw(t.row(n));
      for (std::size_t i = 1; i < n; ++i) {
        ++p.checks;
        const auto s = simd::dot(a.entries.row(i - 1).first(n), x, prime);
        if (s != 0) p.failures.push_back({t.qpt().q_int(), n, i, "residual " + std::to_string(s)});
      }
    }
    return p;
  });
}

VerificationReport check_okada(std::span<const CofactorTable> tables, std::size_t L,
                               std::size_t workers) {
  for (const auto& t : tables) require_cover(t, L, "check_okada");
  auto r = run_tables("okada", tables, L, workers, [L](const CofactorTable& t) {
    Partial p;
    const auto& mod = t.modulus();
    const auto a = okada_matrix(L, t.qpt());
    for (std::size_t n = 1; n <= L; ++n) {
      ++p.checks;
      const auto lhs = simd::dot(a.entries.row(n - 1).first(n), raw(t.row(n)), mod.p());
      std::string detail;
      try {
        const auto rhs = nice_ratio(n, t.qpt());
        if (lhs == rhs.value) {
          continue;
        }
        detail = "lhs " + std::to_string(lhs) + " != rhs " + std::to_string(rhs.value);
      } catch (const Error& e) {
        detail = e.what();
      }
      p.failures.push_back({t.qpt().q_int(), n, 0, std::move(detail)});
    }
    return p;
  });
  // Distinct passing q-points per row against D(n).
  for (std::size_t n = 1; n <= L; ++n) {
    std::vector<std::int64_t> good;
    for (const auto& t : tables) {
      const auto q = t.qpt().q_int();
      bool failed = std::any_of(r.failures.begin(), r.failures.end(),
                                [&](const CheckFailure& f) { return f.q_int == q && f.n == n; });
      if (!failed) good.push_back(q);
    }
    std::sort(good.begin(), good.end());
    good.erase(std::unique(good.begin(), good.end()), good.end());
    r.transfer.push_back({n, good.size(), okada_degree_bound(n)});
  }
  return r;
}

VerificationReport check_normalization(const CofactorTable& table) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.identity = "normalization";
  r.L = table.n_max();
  r.q_points = {table.qpt().q_int()};
  for (std::size_t n = 1; n <= table.n_max(); ++n) {
    ++r.checks;
    const auto v = table.row(n).back();
    if (v != FieldElement(1)) {
      std::string detail = "B'(n,n) = " + std::to_string(v.value);
      if (table.is_rescaled(n)) detail += " (rescaled row)";
      r.failures.push_back({table.qpt().q_int(), n, 0, std::move(detail)});
    }
  }
  r.seconds = since(t0);
  return r;
}

VerificationReport check_extended(const SymbolicRecurrence& rec, std::int64_t q_int,
                                  const PrimeModulus& mod, std::size_t n_ext, std::size_t workers) {
  const auto t0 = Clock::now();
  const auto mode = rec.support.max_gamma_n() > 0 ? PoleMode::reject : PoleMode::rescale;
  const auto table = build_table(n_ext, make_qpoint(q_int, mod, n_ext), workers, mode);
  VerificationReport r;
  r.identity = "extended";
  r.L = n_ext;
  r.q_points = {q_int};
  const auto span = static_cast<std::int64_t>(n_ext) - rec.support.max_gamma_n();
  for (std::int64_t n = 1; n <= span; ++n) {
    for (std::int64_t j = 1; j <= n; ++j) {
      ++r.checks;
      const auto v = apply_recurrence(rec, table, n, j);
      if (!v.is_zero()) {
        r.failures.push_back({q_int, static_cast<std::size_t>(n), static_cast<std::size_t>(j),
                              "residual " + std::to_string(v.value)});
      }
    }
  }
  r.seconds = since(t0);
  return r;
}

VerificationReport check_leading_factors(const SymbolicRecurrence& rec, std::size_t points,
                                         std::uint64_t seed) {
  const auto t0 = Clock::now();
  const auto& mod = rec.modulus;
  const int gamma = rec.support.max_gamma();
  VerificationReport r;
  r.identity = "leading-factors";
  r.L = static_cast<std::size_t>(gamma);
  std::mt19937_64 rng(seed);
  auto draw = [&] { return FieldElement(static_cast<std::uint32_t>(2 + rng() % (mod.p() - 3))); };
  for (std::size_t k = 0; k < points; ++k) {
    const std::size_t f = k % 6;
    const FieldElement q = draw();
    FieldElement qj = draw(), qn = draw();
    switch (f) {
      case 0: qj = mod.inv(mod.pow(q, 6)); break;
      case 1: qj = mod.neg(mod.inv(mod.pow(q, 10))); break;
      case 2: qn = mod.mul(mod.pow(q, 9), qj); break;
      case 3: qn = mod.mul(mod.pow(q, 10), qj); break;
      case 4: qn = mod.inv(mod.mul(mod.pow(q, 9), qj)); break;
      default: qn = mod.inv(mod.mul(mod.pow(q, 10), qj)); break;
    }
    ++r.checks;
    const auto v = shift_coefficient(rec, gamma, q, qn, qj);
    if (!v.is_zero()) {
      r.failures.push_back({static_cast<std::int64_t>(q.value), k + 1, f + 1,
                            "coefficient " + std::to_string(v.value) + " at factor " + std::to_string(f + 1)});
    }
  }
  // Negative control: the coefficient is not identically zero.
  ++r.checks;
  const FieldElement q = draw(), qn = draw(), qj = draw();
  if (shift_coefficient(rec, gamma, q, qn, qj).is_zero()) {
    r.failures.push_back({static_cast<std::int64_t>(q.value), 0, 0, "coefficient vanishes at a generic point"});
  }
  r.seconds = since(t0);
  return r;
}

std::size_t okada_degree_bound(std::size_t n) {
  // deg a(i,j) <= i j + j, so deg det_m <= sum_i m (i + 1).
  auto det_bound = [](std::size_t m) { return m * (m * (m + 1) / 2 + m); };
  std::size_t num = 0, den = 0;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) {
      num += 2 * (i + j + n - 1);
      den += 2 * (i + j + n - 2);
    }
  return std::max(det_bound(n) + den, num + det_bound(n - 1));
}

// ---- q = 1 ------------------------------------------------------------------

RationalTable exact_table_q1(std::size_t n_max) {
  RationalTable t(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t m = n - 1;
    // Rows 1..n-1 of the integer matrix, augmented with -a(i, n).
    std::vector<std::vector<BigRational>> A(m, std::vector<BigRational>(n));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) A[i][j] = okada_entry_q1(i + 1, j + 1);
      A[i][m] = -BigRational(okada_entry_q1(i + 1, n));
    }
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t r = c;
      while (r < m && A[r][c] == 0) ++r;
      if (r == m) throw SingularMatrix("q = 1 system singular at n = " + std::to_string(n), n);
      std::swap(A[r], A[c]);
      const BigRational inv = 1 / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[c][k] *= inv;
      for (std::size_t rr = 0; rr < m; ++rr) {
        if (rr == c || A[rr][c] == 0) continue;
        const BigRational f = A[rr][c];
        for (std::size_t k = c; k < n; ++k) A[rr][k] -= f * A[c][k];
      }
    }
    t[n - 1].resize(n);
    for (std::size_t j = 0; j < m; ++j) t[n - 1][j] = A[j][m];
    t[n - 1][m] = 1;
  }
  return t;
}

namespace {

// Coefficients of g_i up to x^(T-1), by series arithmetic.
template <class T, class Add, class Sub>
std::vector<T> g_series(std::size_t i, std::size_t truncation, T zero, T one, Add add, Sub sub) {
  std::vector<T> s(truncation, one);  // 1 / (1 - x)
  for (std::size_t k = 0; k < i; ++k)
    for (std::size_t l = 1; l < truncation; ++l) s[l] = add(s[l], s[l - 1]);
  std::vector<T> g(truncation, zero);
  for (std::size_t l = 0; l < truncation; ++l) {
    if (l >= 1) g[l] = add(g[l], add(s[l - 1], s[l - 1]));
    if (l >= 2) g[l] = sub(g[l], s[l - 2]);
  }
  if (i < truncation) g[i] = add(g[i], add(one, one));
  if (i >= 1 && i - 1 < truncation) g[i - 1] = sub(g[i - 1], one);
  return g;
}

void check_truncation(std::size_t n, std::size_t truncation) {
  if (truncation <= n) {
    throw SeriesTruncationTooShort("need coefficients up to x^" + std::to_string(n) + ", truncation is x^" +
                                   std::to_string(truncation));
  }
}

BigRational nice_ratio_q1(std::size_t n) {
  BigRational r(tspp_count(n), tspp_count(n - 1));
  return r * r;
}

}  // namespace

BigRational ct_value(const std::vector<BigRational>& row, std::size_t i, std::size_t truncation) {
  const std::size_t n = row.size();
  check_truncation(n, truncation);
  const auto g = g_series<BigRational>(
      i, truncation, BigRational(0), BigRational(1), [](const BigRational& a, const BigRational& b) { return a + b; },
      [](const BigRational& a, const BigRational& b) { return a - b; });
  // f_n(x)/x^n = sum_k B'(n,k) x^{-k}; B'(n,0) = 0.
  BigRational ct = 0;
  for (std::size_t k = 1; k <= n; ++k) ct += row[k - 1] * g[k];
  return ct;
}

FieldElement ct_value(const FieldVector& row, std::size_t i, std::size_t truncation, const PrimeModulus& mod) {
  const std::size_t n = row.size();
  check_truncation(n, truncation);
  const auto g = g_series<FieldElement>(
      i, truncation, FieldElement(0), FieldElement(1), [&](FieldElement a, FieldElement b) { return mod.add(a, b); },
      [&](FieldElement a, FieldElement b) { return mod.sub(a, b); });
  FieldElement ct(0);
  for (std::size_t k = 1; k <= n; ++k) ct = mod.add(ct, mod.mul(row[k - 1], g[k]));
  return ct;
}

VerificationReport ct_check_q1(const RationalTable& table, std::size_t n_max_ct) {
  const auto t0 = Clock::now();
  if (n_max_ct > table.size()) throw InvalidArgument("ct_check_q1: table too small");
  VerificationReport r;
  r.identity = "ct-q1";
  r.L = n_max_ct;
  r.q_points = {1};
  const std::size_t truncation = 2 * n_max_ct + 1;
  for (std::size_t n = 1; n <= n_max_ct; ++n) {
    for (std::size_t i = 1; i <= n; ++i) {
      ++r.checks;
      const auto v = ct_value(table[n - 1], i, truncation);
      const BigRational want = i < n ? BigRational(0) : nice_ratio_q1(n);
      if (v != want) r.failures.push_back({1, n, i, "CT = " + v.str() + ", expected " + want.str()});
    }
  }
  r.seconds = since(t0);
  return r;
}

VerificationReport ct_check_q1(const CofactorTable& table, std::size_t n_max_ct) {
  const auto t0 = Clock::now();
  if (!table.qpt().is_unit()) throw InvalidArgument("ct_check_q1 needs a q = 1 table");
  require_cover(table, n_max_ct, "ct_check_q1");
  const auto& mod = table.modulus();
  VerificationReport r;
  r.identity = "ct-q1";
  r.L = n_max_ct;
  r.q_points = {1};
  const std::size_t truncation = 2 * n_max_ct + 1;
  for (std::size_t n = 1; n <= n_max_ct; ++n) {
    for (std::size_t i = 1; i <= n; ++i) {
      ++r.checks;
      const auto v = ct_value(table.row(n), i, truncation, mod);
      const FieldElement want = i < n ? FieldElement(0) : reduce(nice_ratio_q1(n), mod);
      if (v != want) {
        r.failures.push_back({1, n, i, "CT = " + std::to_string(v.value) + ", expected " + std::to_string(want.value)});
      }
    }
  }
  r.seconds = since(t0);
  return r;
}

VerificationReport ct_check_q1(std::size_t n_max_ct) {
  return ct_check_q1(exact_table_q1(n_max_ct), n_max_ct);
}

// ---- brute force --------------------------------------------------------------

OrbitPoset::OrbitPoset(int n) : n_(n) {
  if (n < 0) throw InvalidArgument("OrbitPoset: n must be >= 0");
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) elements_.push_back({i, j, k});
  std::stable_sort(elements_.begin(), elements_.end(),
                   [](const OrbitTriple& a, const OrbitTriple& b) { return a.i + a.j + a.k < b.i + b.j + b.k; });
  covers_.resize(elements_.size());
  for (std::size_t b = 0; b < elements_.size(); ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      if (!leq(a, b)) continue;
      bool between = false;
      for (std::size_t c = a + 1; c < b && !between; ++c) between = leq(a, c) && leq(c, b);
      if (!between) covers_[b].push_back(a);
    }
  }
}

bool OrbitPoset::leq(std::size_t a, std::size_t b) const noexcept {
  const auto& x = elements_[a];
  const auto& y = elements_[b];
  return x.i <= y.i && x.j <= y.j && x.k <= y.k;
}

IntegerPoly brute_force_qtspp(int n) {
  if (n > 4) throw SizeLimit("brute_force_qtspp enumerates n <= 4 only");
  const OrbitPoset poset(n);
  std::vector<BigInt> counts(poset.size() + 1, 0);
  std::vector<char> in(poset.size(), 0);
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t idx, std::size_t size) {
    if (idx == poset.size()) {
      ++counts[size];
      return;
    }
    walk(idx + 1, size);
    const auto& covers = poset.lower_covers(idx);
    if (std::all_of(covers.begin(), covers.end(), [&](std::size_t a) { return in[a] != 0; })) {
      in[idx] = 1;
      walk(idx + 1, size + 1);
      in[idx] = 0;
    }
  };
  walk(0, 0);
  return IntegerPoly(std::move(counts));
}

}  // namespace qtspp
