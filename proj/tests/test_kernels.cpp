#include <cstdlib>
#include <random>
#include <string_view>
#include <vector>

#include "doctest.h"
#include "qtspp/errors.hpp"
#include "qtspp/field.hpp"
#include "qtspp/simd/kernels.hpp"

using namespace qtspp;
using namespace qtspp::simd;

namespace {

std::vector<std::uint32_t> random_residues(std::size_t n, std::uint32_t p, std::mt19937_64& rng) {
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) {
    // Bias towards the extremes, where reductions overflow first.
    switch (rng() % 4) {
      case 0: x = p - 1 - static_cast<std::uint32_t>(rng() % 3); break;
      case 1: x = static_cast<std::uint32_t>(rng() % 3); break;
      default: x = static_cast<std::uint32_t>(rng() % p);
    }
  }
  return v;
}

// Plain 64-bit reference, independent of both kernel sets.
std::uint32_t ref_dot(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b, std::uint32_t p) {
  std::uint64_t s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s = (s + static_cast<std::uint64_t>(a[k]) * b[k]) % p;
  return static_cast<std::uint32_t>(s);
}

}  // namespace

TEST_CASE("scalar kernels match the 64-bit reference") {
  std::mt19937_64 rng(1);
  const auto& k = scalar_kernels();
  for (std::uint32_t p : {PrimeModulus::kDefault, PrimeModulus::kAlternate, 1000003u}) {
    for (std::size_t n : {0u, 1u, 5u, 33u, 200u}) {
      auto a = random_residues(n, p, rng), b = random_residues(n, p, rng);
      const auto f = static_cast<std::uint32_t>(rng() % p);
      CHECK(k.dot(a.data(), b.data(), n, p) == ref_dot(a, b, p));
      auto d = a;
      k.submul(d.data(), b.data(), n, f, p);
      for (std::size_t i = 0; i < n; ++i) {
        const auto want = (a[i] + p - static_cast<std::uint64_t>(f) * b[i] % p) % p;
        CHECK(d[i] == want);
      }
      auto s = a;
      k.scale(s.data(), n, f, p);
      for (std::size_t i = 0; i < n; ++i) CHECK(s[i] == static_cast<std::uint64_t>(f) * a[i] % p);
    }
  }
}

TEST_CASE("Shoup quotient") {
  for (std::uint32_t p : {PrimeModulus::kDefault, PrimeModulus::kAlternate}) {
    for (std::uint32_t w : {0u, 1u, 2u, p - 1, p / 2}) {
      const auto wq = detail::shoup_precompute(w, p);
      CHECK(static_cast<std::uint64_t>(wq) == (static_cast<std::uint64_t>(w) << 32) / p);
    }
  }
}

TEST_CASE("vector kernels agree bit for bit with the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    CHECK_THROWS_AS(kernels_for(Isa::avx2), InvalidArgument);
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  const auto& s = scalar_kernels();
  const auto& v = kernels_for(Isa::avx2);
  CHECK(v.isa == Isa::avx2);
  std::mt19937_64 rng(2);
  for (std::uint32_t p : {PrimeModulus::kDefault, PrimeModulus::kAlternate, 65521u, 3u}) {
    for (std::size_t n = 0; n <= 70; ++n) {
      for (int rep = 0; rep < 3; ++rep) {
        auto a = random_residues(n, p, rng), b = random_residues(n, p, rng);
        for (std::uint32_t f : {0u, 1u, p - 1, static_cast<std::uint32_t>(rng() % p)}) {
          auto d1 = a, d2 = a;
          s.submul(d1.data(), b.data(), n, f, p);
          v.submul(d2.data(), b.data(), n, f, p);
          CHECK(d1 == d2);
          auto e1 = a, e2 = a;
          s.scale(e1.data(), n, f, p);
          v.scale(e2.data(), n, f, p);
          CHECK(e1 == e2);
        }
        CHECK(s.dot(a.data(), b.data(), n, p) == v.dot(a.data(), b.data(), n, p));
      }
    }
    // Long all-maximal vectors stress the split accumulators.
    std::vector<std::uint32_t> big(5000, p - 1);
    CHECK(s.dot(big.data(), big.data(), big.size(), p) == v.dot(big.data(), big.data(), big.size(), p));
    CHECK(v.dot(big.data(), big.data(), big.size(), p) == ref_dot(big, big, p));
  }
}

TEST_CASE("runtime selection honours QTSPP_SIMD") {
  const char* env = std::getenv("QTSPP_SIMD");
  if (env && std::string_view(env) == "scalar") {
    CHECK(active().isa == Isa::scalar);
  } else if (isa_available(Isa::avx2)) {
    CHECK(active().isa == Isa::avx2);
  }
  CHECK(isa_name(Isa::scalar) == "scalar");
  CHECK(isa_available(Isa::scalar));
}
