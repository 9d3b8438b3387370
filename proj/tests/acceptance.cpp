// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "qtspp/verify.hpp"

using namespace qtspp;

namespace {

using Clock = std::chrono::steady_clock;

const PrimeModulus P;
const std::size_t kWorkers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 4);

struct Outcome {
  bool pass;
  std::string detail;
};

std::vector<std::int64_t> random_admissible(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> qs;
  while (qs.size() < count) {
    const auto q = static_cast<std::int64_t>(2 + rng() % 1000000000);
    if (is_admissible(q, P, 40) && std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
  }
  return qs;
}

std::vector<std::size_t> zero_set(const ModularRecurrence& rec) {
  std::vector<std::size_t> z;
  for (std::size_t k = 0; k < rec.coefficients.size(); ++k)
    if (rec.coefficients[k].is_zero()) z.push_back(k);
  return z;
}

// Shared between criteria 2 to 5.
ModularRecurrence guess_q2;
SymbolicRecurrence symbolic;
bool have_symbolic = false;

Outcome determinant() {
  std::size_t checks = 0;
  for (auto q : random_admissible(10, 1)) {
    const auto qpt = make_qpoint(q, P, 25);
    for (std::size_t n = 1; n <= 25; ++n) {
      const auto o = qtspp_orbit_product(n, qpt);
      if (det_direct(n, qpt) != P.mul(o, o)) return {false, "mismatch at q=" + std::to_string(q) + " n=" + std::to_string(n)};
      ++checks;
    }
  }
  return {true, std::to_string(checks) + " determinants"};
}

Outcome fingerprint() {
  std::string detail;
  std::vector<std::size_t> zeros;
  for (std::int64_t q : {2, 3, 5}) {
    const auto table = build_table(35, make_qpoint(q, P, 35), kWorkers, PoleMode::rescale);
    auto rec = guess_modular(table, AnsatzSupport::full());
    if (rec.nullspace_dim != 1) return {false, "q=" + std::to_string(q) + ": dimension " + std::to_string(rec.nullspace_dim)};
    if (q == 2) {
      zeros = zero_set(rec);
      detail = "dim 1, " + std::to_string(zeros.size()) + " zeros of 440";
      if (!table.rescaled_rows().empty()) {
        detail += "; q=2 rows rescaled at poles:";
        for (auto n : table.rescaled_rows()) detail += " " + std::to_string(n);
      }
      guess_q2 = std::move(rec);
    } else if (zero_set(rec) != zeros) {
      return {false, "zero set differs at q=" + std::to_string(q)};
    }
  }
  detail += "; same zero set at q=3, 5";
  return {zeros.size() == 110, detail};
}

Outcome reconstruction() {
  if (guess_q2.coefficients.empty()) return {false, "no guess from criterion 2"};
  SweepOptions opts;
  opts.workers = kWorkers;
  const auto result = sweep(refine_support(guess_q2), 2, 150, P, opts);
  symbolic = reconstruct_symbolic(result.recurrences, kWorkers);
  have_symbolic = true;
  const auto m = symbolic.max_abs_coefficient();
  return {m <= 43, std::to_string(result.recurrences.size()) + " q-points, " + std::to_string(result.skipped.size()) +
                       " skipped, max |coeff| = " + m.str()};
}

Outcome factors() {
  if (!have_symbolic) return {false, "no recurrence from criterion 3"};
  const auto r = check_leading_factors(symbolic, 200);
  return {r.pass(), std::to_string(r.checks) + " points, " + std::to_string(r.failures.size()) + " failures"};
}

Outcome extended() {
  if (!have_symbolic) return {false, "no recurrence from criterion 3"};
  const auto a = check_extended(symbolic, 2, P, 120, kWorkers);
  const auto b = check_extended(symbolic, 151, P, 60, kWorkers);
  return {a.pass() && b.pass(), "q=2 n<=120: " + std::to_string(a.failures.size()) + "/" + std::to_string(a.checks) +
                                    " failures; q=151 n<=60: " + std::to_string(b.failures.size()) + "/" +
                                    std::to_string(b.checks)};
}

Outcome identities() {
  std::vector<CofactorTable> tables;
  for (auto q : random_admissible(20, 2)) tables.push_back(build_table(40, make_qpoint(q, P, 40), kWorkers));
  const auto s = check_soichi(tables, 40, kWorkers);
  const auto o = check_okada(tables, 40, kWorkers);
  bool norm = true;
  for (const auto& t : tables) norm = norm && check_normalization(t).pass();
  const std::vector<CofactorTable> one{build_table(60, QPoint(1, P), kWorkers)};
  const bool q1 = check_soichi(one, 60).pass() && check_okada(one, 60).pass() && check_normalization(one[0]).pass();
  return {s.pass() && o.pass() && norm && q1,
          std::string("L=40 x 20 q-points: soichi ") + (s.pass() ? "ok" : "FAIL") + ", okada " + (o.pass() ? "ok" : "FAIL") +
              ", normalization " + (norm ? "ok" : "FAIL") + "; q=1 L=60: " + (q1 ? "ok" : "FAIL")};
}

Outcome brute() {
  const int counts[] = {2, 5, 16, 66};
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 4; ++n) {
    const auto poly = brute_force_qtspp(n);
    if (poly.evaluate(BigInt(1)) != counts[n - 1]) return {false, "count at n=" + std::to_string(n)};
    for (int k = 0; k < 30; ++k) {
      const auto q = static_cast<std::int64_t>(2 + rng() % 1000000000);
      if (poly.evaluate(P.from_int(q), P) != qtspp_orbit_product(n, QPoint(q, P)))
        return {false, "product mismatch at n=" + std::to_string(n)};
    }
  }
  return {true, "counts 2, 5, 16, 66; 120 evaluations agree"};
}

Outcome ct_route() {
  const auto exact = exact_table_q1(30);
  const auto modular = build_table(30, QPoint(1, P));
  const std::vector<CofactorTable> t{modular};
  const bool direct = check_soichi(t, 30).pass() && check_okada(t, 30).pass();
  const bool ct = ct_check_q1(exact, 30).pass() && ct_check_q1(modular, 30).pass();

  auto bad_exact = exact;
  bad_exact[19][5] += 1;
  auto bad_mod = modular;
  bad_mod.set(20, 6, P.add(bad_mod.at(20, 6), FieldElement(1)));
  const std::vector<CofactorTable> bt{bad_mod};
  const bool bad_direct = check_soichi(bt, 30).pass() && check_okada(bt, 30).pass();
  const bool bad_ct = ct_check_q1(bad_exact, 30).pass() || ct_check_q1(bad_mod, 30).pass();
  const bool agree = direct == ct && bad_direct == bad_ct;
  return {ct && direct && !bad_ct && !bad_direct && agree,
          std::string("clean: ct ") + (ct ? "pass" : "fail") + ", direct " + (direct ? "pass" : "fail") +
              "; corrupted: ct " + (bad_ct ? "pass" : "fail") + ", direct " + (bad_direct ? "pass" : "fail")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"determinant identity", 30, determinant},
      {"guessing fingerprint", 120, fingerprint},
      {"reconstruction bound", 900, reconstruction},
      {"leading-coefficient factors", 5, factors},
      {"extended annihilation", 120, extended},
      {"identity suite", 60, identities},
      {"brute-force oracle", 10, brute},
      {"constant-term route", 30, ct_route},
  };
  bool all = true;
  int k = 0;
  for (const auto& c : criteria) {
    ++k;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool ok = o.pass && s < c.limit;
    if (o.pass && !ok) o.detail += "; over the time limit";
    all = all && ok;
    std::printf("%s  %d. %-28s %7.2fs / %4.0fs  %s\n", ok ? "PASS" : "FAIL", k, c.name, s, c.limit, o.detail.c_str());
  }
  std::printf("%s\n", all ? "all criteria pass" : "some criteria FAIL");
  return all ? 0 : 1;
}
