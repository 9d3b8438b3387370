#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "qtspp/errors.hpp"
#include "qtspp/guess.hpp"
#include "qtspp/recurrence_io.hpp"

using namespace qtspp;

namespace {

const PrimeModulus P;

std::vector<std::size_t> zero_set(const ModularRecurrence& rec) {
  std::vector<std::size_t> z;
  for (std::size_t k = 0; k < rec.coefficients.size(); ++k)
    if (rec.coefficients[k].is_zero()) z.push_back(k);
  return z;
}

const ModularRecurrence& guess_at(std::int64_t q) {
  static std::map<std::int64_t, ModularRecurrence> cache;
  auto it = cache.find(q);
  if (it == cache.end()) {
    const auto table = build_table(35, make_qpoint(q, P, 35), 2, PoleMode::rescale);
    it = cache.emplace(q, guess_modular(table, AnsatzSupport::full())).first;
  }
  return it->second;
}

}  // namespace

TEST_CASE("support and equation counts") {
  const auto full = AnsatzSupport::full();
  CHECK(full.size() == 5 * 8 * 11);
  CHECK(full.max_gamma() == 10);
  CHECK(full.max_gamma_n() == 0);
  CHECK(std::is_sorted(full.terms().begin(), full.terms().end()));
  CHECK(full.index_of({2, 0, 0, 0}) == std::size_t{2});
  CHECK(!full.index_of({5, 0, 0, 0}));
  CHECK(AnsatzSupport::full({1, 1, 1, 1}).size() == 16);
  CHECK_THROWS_AS(AnsatzSupport({1, 1, 1, 0}, {{2, 0, 0, 0}}), InvalidArgument);

  CHECK(equation_windows(35, full, EquationSet::full_triangle).size() == 630);
  // j + 10 <= n: sum_{n=11}^{35} (n - 10).
  CHECK(equation_windows(35, full, EquationSet::interior).size() == 325);

  const auto table = build_table(35, make_qpoint(3, P, 35));
  const auto eqs = build_equations(table, full);
  CHECK(eqs.rows() == 630);
  CHECK(eqs.cols() == 440);
  // Column of (alpha, beta, gamma) at window (n, j).
  const auto windows = equation_windows(35, full, EquationSet::full_triangle);
  const auto col = *full.index_of({3, 2, 4, 0});
  const auto& q = table.qpt();
  for (std::size_t r = 0; r < windows.size(); r += 37) {
    const auto [n, j] = windows[r];
    CHECK(eqs.at(r, col) == P.mul(q.power(3 * n + 2 * j), table.at(n, j + 4)));
  }
  CHECK_THROWS_AS(build_equations(build_table(10, make_qpoint(3, P, 10)), full), InsufficientData);
}

TEST_CASE("a single term admits no recurrence") {
  const auto table = build_table(20, make_qpoint(3, P, 20));
  const AnsatzSupport one({0, 0, 1, 0}, {{0, 0, 1, 0}});
  CHECK_THROWS_AS(guess_modular(table, one), NoRecurrence);
}

TEST_CASE("n-shift ansatz refuses rescaled rows") {
  const auto table = build_table(20, make_qpoint(2, P, 20), 1, PoleMode::rescale);
  CHECK_THROWS_AS(build_equations(table, AnsatzSupport::full({1, 1, 1, 1})), InvalidArgument);
}

TEST_CASE("fingerprints of the modular recurrence") {
  const auto& r3 = guess_at(3);
  CHECK(r3.nullspace_dim == 1);
  CHECK(r3.zero_count() == 110);
  CHECK(r3.pivot_term() == AnsatzTerm{2, 0, 0, 0});
  CHECK(r3.coefficients[r3.pivot] == FieldElement(1));
  for (std::int64_t q : {2, 5}) {
    const auto& r = guess_at(q);
    CHECK(r.nullspace_dim == 1);
    CHECK(r.pivot_term() == r3.pivot_term());
    CHECK(zero_set(r) == zero_set(r3));
  }
  CHECK(refine_support(r3).size() == 330);
}

TEST_CASE("recurrence annihilates its own table") {
  const auto& rec = guess_at(5);
  const auto table = build_table(35, make_qpoint(5, P, 35));
  for (const auto& w : equation_windows(35, rec.support, EquationSet::full_triangle))
    CHECK(apply_recurrence(rec, table, w.n, w.j) == FieldElement(0));
}

TEST_CASE("pivot does not depend on the row order") {
  const auto table = build_table(35, make_qpoint(5, P, 35));
  auto eqs = build_equations(table, AnsatzSupport::full());
  std::mt19937_64 rng(11);
  for (std::size_t r = eqs.rows() - 1; r > 0; --r) eqs.swap_rows(r, rng() % (r + 1));
  const auto ns = nullspace(eqs);
  REQUIRE(ns.size() == 1);
  const auto& v = ns.front();
  const auto first = std::find_if(v.begin(), v.end(), [](FieldElement x) { return !x.is_zero(); });
  const auto scaled = [&] {
    FieldVector w = v;
    const auto inv = P.inv(*first);
    for (auto& x : w) x = P.mul(x, inv);
    return w;
  }();
  CHECK(static_cast<std::size_t>(first - v.begin()) == guess_at(5).pivot);
  CHECK(scaled == guess_at(5).coefficients);
}

TEST_CASE("reconstruction of a synthetic recurrence") {
  const AnsatzSupport support({2, 1, 2, 0}, {{0, 0, 0, 0}, {1, 0, 1, 0}, {2, 1, 2, 0}});
  // Hidden coefficients with content 2, scaled away by reconstruction.
  const std::vector<IntegerPoly> hidden = {
      IntegerPoly({2, -4, 0, 6}),
      IntegerPoly({-10, 0, 2}),
      IntegerPoly({0, 8, 0, 0, -12}),
  };
  std::vector<ModularRecurrence> recs;
  for (std::int64_t q = 2; q <= 40; ++q) {
    ModularRecurrence r;
    r.support = support;
    r.q_int = q;
    r.modulus = P;
    r.nullspace_dim = 1;
    const auto piv = hidden[0].evaluate(P.from_int(q), P);
    if (piv.is_zero()) continue;
    for (const auto& h : hidden) r.coefficients.push_back(P.div(h.evaluate(P.from_int(q), P), piv));
    recs.push_back(r);
  }
  const auto sym = reconstruct_symbolic(recs, 2);
  REQUIRE(sym.coefficients.size() == 3);
  CHECK(sym.coefficients[0] == IntegerPoly({1, -2, 0, 3}));
  CHECK(sym.coefficients[1] == IntegerPoly({-5, 0, 1}));
  CHECK(sym.coefficients[2] == IntegerPoly({0, 4, 0, 0, -6}));
  CHECK(sym.max_abs_coefficient() == 6);
  CHECK(!looks_like_artefact(sym));

  // The joint content normalization makes the pivot leading coefficient positive.
  for (auto& r : recs) r.coefficients[1] = P.neg(r.coefficients[1]);
  const auto flipped = reconstruct_symbolic(recs);
  CHECK(flipped.coefficients[1] == IntegerPoly({5, 0, -1}));

  // Images from different supports cannot be combined.
  auto mixed = recs;
  mixed.back().pivot = 1;
  CHECK_THROWS_AS(reconstruct_symbolic(mixed), ReconstructionFailed);
}

TEST_CASE("a short sweep raises TooFewPoints") {
  const auto support = refine_support(guess_at(3));
  SweepOptions opts;
  CHECK_THROWS_AS(sweep(support, 2, 10, P, opts), TooFewPoints);
}

TEST_CASE("sweep and reconstruction over q = 2..150") {
  const auto support = refine_support(guess_at(3));
  SweepOptions opts;
  opts.workers = 4;
  const auto result = sweep(support, 2, 150, P, opts);
  CHECK(result.recurrences.size() == 149);
  CHECK(result.skipped.empty());
  const auto sym = reconstruct_symbolic(result.recurrences, 4);
  CHECK(sym.max_abs_coefficient() <= 43);
  CHECK(!looks_like_artefact(sym));
  // The symbolic recurrence specializes to each modular image.
  for (const auto& r : result.recurrences) {
    auto c = sym.specialize(make_qpoint(r.q_int, P, 35));
    const auto inv = P.inv(c[sym.pivot]);
    for (auto& x : c) x = P.mul(x, inv);
    CHECK(c == r.coefficients);
  }
  // and reproduces a q-point outside the sweep
  const auto table = build_table(35, make_qpoint(1000003, P, 35));
  for (std::int64_t n = 1; n <= 35; ++n)
    for (std::int64_t j = 1; j <= n; ++j) CHECK(apply_recurrence(sym, table, n, j) == FieldElement(0));

  std::stringstream ss;
  write_recurrence(ss, sym);
  const auto back = read_recurrence(ss);
  REQUIRE(std::holds_alternative<SymbolicRecurrence>(back));
  const auto& s2 = std::get<SymbolicRecurrence>(back);
  CHECK(s2.coefficients == sym.coefficients);
  CHECK(s2.support == sym.support);
  CHECK(s2.q_points == sym.q_points);
  CHECK(s2.pivot == sym.pivot);
}

TEST_CASE("recurrence documents") {
  const auto& rec = guess_at(3);
  std::stringstream ss;
  write_recurrence(ss, rec);
  const auto text = ss.str();
  const auto back = read_recurrence(ss);
  REQUIRE(std::holds_alternative<ModularRecurrence>(back));
  const auto& m = std::get<ModularRecurrence>(back);
  CHECK(m.coefficients == rec.coefficients);
  CHECK(m.support == rec.support);
  CHECK(m.q_int == 3);
  CHECK(m.pivot == rec.pivot);
  CHECK(m.nullspace_dim == 1);
  std::stringstream again;
  write_recurrence(again, m);
  CHECK(again.str() == text);

  const BigInt huge("123456789012345678901234567890");
  CHECK(bigint_to_json(huge).is_string());
  CHECK(bigint_to_json(BigInt(-42)).is_number_integer());
  CHECK(json_to_bigint(bigint_to_json(huge)) == huge);
  CHECK(json_to_bigint(nlohmann::json(-7)) == -7);
  CHECK_THROWS_AS(json_to_bigint(nlohmann::json("12x")), FormatError);

  SymbolicRecurrence sym;
  sym.support = AnsatzSupport({0, 0, 1, 0}, {{0, 0, 0, 0}, {0, 0, 1, 0}});
  sym.modulus = P;
  sym.coefficients = {IntegerPoly({huge, BigInt(1)}), IntegerPoly({BigInt(-1)})};
  sym.q_points = {2, 3};
  std::stringstream s2;
  write_recurrence(s2, sym);
  const auto sym_back = std::get<SymbolicRecurrence>(read_recurrence(s2));
  CHECK(sym_back.coefficients == sym.coefficients);

  auto reject = [](const std::string& s) {
    std::istringstream in(s);
    CHECK_THROWS_AS(read_recurrence(in), FormatError);
  };
  reject("not json");
  reject("{}");
  reject(R"({"mode": "other"})");
  auto doc = nlohmann::json::parse(text);
  doc["coefficients"].erase(0);
  reject(doc.dump());
}
