#include <random>

#include "doctest.h"
#include "qtspp/cofactor.hpp"
#include "qtspp/cyclotomic.hpp"
#include "qtspp/errors.hpp"
#include "qtspp/okada.hpp"

using namespace qtspp;

namespace {

const PrimeModulus P;

std::vector<std::int64_t> random_qs(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> qs;
  while (qs.size() < count) {
    const auto q = static_cast<std::int64_t>(2 + rng() % 2000000000);
    if (is_admissible(q, P, 40)) qs.push_back(q);
  }
  return qs;
}

// Polynomial in q evaluated at qpt from integer coefficients.
FieldElement poly_at(std::initializer_list<std::int64_t> c, const QPoint& qpt) {
  FieldElement acc(0);
  std::size_t k = 0;
  for (auto x : c) acc = P.add(acc, P.mul(P.from_int(x), qpt.power(k++)));
  return acc;
}

// Exact Gaussian binomials at an integer q by the q-Pascal rule.
std::vector<std::vector<BigInt>> pascal_table(std::int64_t q, int top) {
  std::vector<std::vector<BigInt>> t(top + 1);
  for (int a = 0; a <= top; ++a) {
    t[a].assign(a + 1, 1);
    BigInt qb = 1;
    for (int b = 1; b < a; ++b) {
      qb *= q;
      t[a][b] = t[a - 1][b - 1] + qb * t[a - 1][b];
    }
  }
  return t;
}

}  // namespace

TEST_CASE("QPoint basics") {
  const QPoint q(5, P);
  CHECK(q.q_int() == 5);
  CHECK(q.reduced() == FieldElement(5));
  CHECK(!q.is_unit());
  CHECK(QPoint(1, P).is_unit());
  CHECK(QPoint(P.p() + 3ll, P).reduced() == FieldElement(3));
  CHECK_THROWS_AS(QPoint(0, P), InvalidArgument);
  CHECK(q.power(10000) == P.pow(FieldElement(5), 10000));
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == std::vector<std::int64_t>{-1, 1});
  CHECK(cyclotomic_poly(6) == std::vector<std::int64_t>{1, -1, 1});
  CHECK(cyclotomic_poly(105)[7] == -2);  // the first coefficient outside {-1, 0, 1}
  // prod_{d | m} Phi_d(x) = x^m - 1 at random x.
  std::mt19937_64 rng(7);
  for (std::size_t m = 1; m <= 120; ++m) {
    const FieldElement x(static_cast<std::uint32_t>(rng() % P.p()));
    FieldElement prod(1);
    for (std::size_t d = 1; d <= m; ++d)
      if (m % d == 0) prod = P.mul(prod, cyclotomic_value(d, x, P));
    CHECK(prod == P.sub(P.pow(x, m), FieldElement(1)));
  }
}

TEST_CASE("qbinom examples") {
  for (std::int64_t qi : {1, 2, 3, 12345}) {
    const QPoint q(qi, P);
    CHECK(qbinom(7, 0, q) == FieldElement(1));
    CHECK(qbinom(2, 1, q) == poly_at({1, 1}, q));
    CHECK(qbinom(4, 2, q) == poly_at({1, 1, 2, 1, 1}, q));
    CHECK(qbinom(3, 5, q) == FieldElement(0));
    CHECK(qbinom(3, -1, q) == FieldElement(0));
  }
  CHECK(qbinom(10, 4, QPoint(1, P)) == FieldElement(210));
}

TEST_CASE("qbinom symmetry and q-Pascal") {
  for (auto qi : random_qs(6, 1)) {
    const QPoint q(qi, P);
    for (int a = 0; a <= 40; ++a) {
      for (int b = 0; b <= a; ++b) {
        CHECK(qbinom(a, b, q) == qbinom(a, a - b, q));
        if (a >= 1 && b >= 1) {
          CHECK(qbinom(a, b, q) == P.add(qbinom(a - 1, b - 1, q), P.mul(q.power(b), qbinom(a - 1, b, q))));
        }
      }
    }
  }
}

TEST_CASE("qbinom at q = 2 agrees with exact integers, including where 1 - 2^31 = 0 mod p") {
  const auto exact = pascal_table(2, 70);
  const QPoint q(2, P);
  for (int a = 0; a <= 70; ++a)
    for (int b = 0; b <= a; ++b) CHECK(qbinom(a, b, q) == reduce(exact[a][b], P));
  CHECK(qbinom(31, 1, q) == FieldElement(0));  // [31]_2 = 2^31 - 1 = p
}

TEST_CASE("okada entries") {
  for (std::int64_t qi : {2, 7, 99991}) {
    const QPoint q(qi, P);
    CHECK(okada_entry(1, 1, q) == P.mul(poly_at({1, 1}, q), poly_at({1, 1}, q)));
    CHECK(okada_entry(1, 2, q) == poly_at({0, 0, 1, 1, 1}, q));
    CHECK(okada_entry(2, 1, q) == poly_at({-1, 0, 1, 1}, q));
  }
  CHECK(okada_entry_q1(1, 1) == 4);
  CHECK(okada_entry_q1(1, 2) == 3);
  CHECK(okada_entry_q1(2, 1) == 1);
  const QPoint one(1, P);
  for (int i = 1; i <= 40; ++i)
    for (int j = 1; j <= 40; ++j) CHECK(okada_entry(i, j, one) == reduce(okada_entry_q1(i, j), P));
  CHECK_THROWS_AS(okada_entry(0, 1, one), InvalidArgument);
  const auto slice = okada_matrix(6, QPoint(3, P));
  CHECK(slice.at(4, 5) == okada_entry(4, 5, QPoint(3, P)));
}

TEST_CASE("orbit product and nice ratio") {
  const QPoint one(1, P);
  CHECK(qtspp_orbit_product(0, one) == FieldElement(1));
  CHECK(qtspp_orbit_product(2, one) == FieldElement(5));
  CHECK(qtspp_orbit_product(3, one) == FieldElement(16));
  CHECK(tspp_count(1) == 2);
  CHECK(tspp_count(2) == 5);
  CHECK(tspp_count(3) == 16);
  CHECK(tspp_count(4) == 66);
  CHECK(nice_ratio(2, one) == P.div(FieldElement(25), FieldElement(4)));
  for (std::int64_t qi : {2, 5, 1234567}) {
    const QPoint q(qi, P);
    CHECK(nice_ratio(1, q) == okada_entry(1, 1, q));
    const auto r = P.div(P.sub(FieldElement(1), q.power(5)), P.sub(FieldElement(1), q.power(2)));
    CHECK(nice_ratio(2, q) == P.mul(r, r));
  }
  for (auto qi : random_qs(8, 2)) {
    const QPoint q(qi, P);
    FieldElement acc(1);
    for (std::size_t m = 1; m <= 15; ++m) {
      acc = P.mul(acc, nice_ratio(m, q));
      const auto o = qtspp_orbit_product(m, q);
      CHECK(acc == P.mul(o, o));
    }
  }
}

TEST_CASE("Okada determinant identity for n <= 25") {
  for (auto qi : random_qs(10, 3)) {
    const QPoint q(qi, P, 25);
    for (std::size_t n = 1; n <= 25; ++n) {
      const auto o = qtspp_orbit_product(n, q);
      CHECK(det_direct(n, q) == P.mul(o, o));
    }
  }
  for (std::size_t n = 1; n <= 25; ++n) {
    const BigInt t = tspp_count(n);
    CHECK(det_direct(n, QPoint(1, P)) == reduce(BigInt(t * t), P));
  }
}

TEST_CASE("generating function of the q = 1 entries") {
  // Coefficients of x(2-x)/(1-x)^{i+1} from repeated partial sums.
  for (int i = 1; i <= 30; ++i) {
    std::vector<BigInt> s(32, 1);
    for (int k = 0; k < i; ++k)
      for (int l = 1; l < 32; ++l) s[l] += s[l - 1];
    for (int j = 1; j <= 30; ++j) {
      const BigInt coeff = 2 * s[j - 1] - (j >= 2 ? s[j - 2] : BigInt(0));
      CHECK(coeff == binomial(i + j - 2, i - 1) + binomial(i + j - 1, i));
    }
  }
}

TEST_CASE("admissibility") {
  CHECK(is_admissible(1, P, 35));
  CHECK(is_admissible(2, P, 35));  // order 31, handled while building tables
  CHECK(!is_admissible(P.p() - 1, P, 35));
  CHECK(!is_admissible(static_cast<std::int64_t>(P.p()), P, 35));
  CHECK(!is_admissible(0, P, 35));
  // A primitive cube root of unity mod p.
  std::int64_t cube = 0;
  for (std::int64_t g = 2; g < 100 && !cube; ++g) {
    const auto c = P.pow(FieldElement(static_cast<std::uint32_t>(g)), (P.p() - 1) / 3);
    if (c != FieldElement(1)) cube = c.value;
  }
  REQUIRE(cube != 0);
  CHECK(P.order_up_to(FieldElement(static_cast<std::uint32_t>(cube)), 10) == 3);
  CHECK(!is_admissible(cube, P, 35));
}
