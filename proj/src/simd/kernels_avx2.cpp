// Compiled with -mavx2 when the toolchain targets x86-64; the dispatcher only
// calls into this file after checking CPU support at runtime.

#include "qtspp/simd/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace qtspp::simd {

namespace {

// High 32 bits of the 32x32 products x[k] * w, for all eight lanes.
inline __m256i mulhi_epu32(__m256i x, __m256i w) {
  __m256i even = _mm256_srli_epi64(_mm256_mul_epu32(x, w), 32);
  __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), w);
  return _mm256_blend_epi32(even, odd, 0b10101010);
}

// x * w mod p via Shoup's trick; w_shoup = floor(w * 2^32 / p).
inline __m256i mulmod_shoup(__m256i x, __m256i w, __m256i w_shoup, __m256i p) {
  __m256i q = mulhi_epu32(x, w_shoup);
  __m256i r = _mm256_sub_epi32(_mm256_mullo_epi32(x, w), _mm256_mullo_epi32(q, p));
  // r in [0, 2p): subtract p when that does not wrap.
  return _mm256_min_epu32(r, _mm256_sub_epi32(r, p));
}

inline std::uint32_t mulmod_shoup_scalar(std::uint32_t x, std::uint32_t w,
                                         std::uint32_t w_shoup, std::uint32_t p) {
  std::uint32_t q = static_cast<std::uint32_t>((static_cast<std::uint64_t>(x) * w_shoup) >> 32);
  std::uint32_t r = x * w - q * p;
  return r >= p ? r - p : r;
}

void submul_avx2(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                 std::uint32_t factor, std::uint32_t p) {
  const std::uint32_t ws = detail::shoup_precompute(factor, p);
  const __m256i vw = _mm256_set1_epi32(static_cast<int>(factor));
  const __m256i vws = _mm256_set1_epi32(static_cast<int>(ws));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + k));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + k));
    __m256i t = mulmod_shoup(s, vw, vws, vp);
    __m256i r = _mm256_sub_epi32(d, t);
    r = _mm256_min_epu32(r, _mm256_add_epi32(r, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k), r);
  }
  for (; k < n; ++k) {
    std::uint32_t t = mulmod_shoup_scalar(src[k], factor, ws, p);
    dst[k] = dst[k] >= t ? dst[k] - t : dst[k] + p - t;
  }
}

void scale_avx2(std::uint32_t* dst, std::size_t n, std::uint32_t factor, std::uint32_t p) {
  const std::uint32_t ws = detail::shoup_precompute(factor, p);
  const __m256i vw = _mm256_set1_epi32(static_cast<int>(factor));
  const __m256i vws = _mm256_set1_epi32(static_cast<int>(ws));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + k));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k), mulmod_shoup(d, vw, vws, vp));
  }
  for (; k < n; ++k) dst[k] = mulmod_shoup_scalar(dst[k], factor, ws, p);
}

// Each 64-bit product is split into 32-bit halves accumulated separately, so
// the accumulators cannot overflow before 2^32 terms.
std::uint32_t dot_avx2(const std::uint32_t* a, const std::uint32_t* b, std::size_t n,
                       std::uint32_t p) {
  const __m256i lo_mask = _mm256_set1_epi64x(0xffffffffLL);
  __m256i acc_lo = _mm256_setzero_si256();
  __m256i acc_hi = _mm256_setzero_si256();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k));
    __m256i even = _mm256_mul_epu32(va, vb);
    __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(va, 32), _mm256_srli_epi64(vb, 32));
    acc_lo = _mm256_add_epi64(acc_lo, _mm256_and_si256(even, lo_mask));
    acc_lo = _mm256_add_epi64(acc_lo, _mm256_and_si256(odd, lo_mask));
    acc_hi = _mm256_add_epi64(acc_hi, _mm256_srli_epi64(even, 32));
    acc_hi = _mm256_add_epi64(acc_hi, _mm256_srli_epi64(odd, 32));
  }
  alignas(32) std::uint64_t lo[4], hi[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lo), acc_lo);
  _mm256_store_si256(reinterpret_cast<__m256i*>(hi), acc_hi);
  std::uint64_t sum_lo = 0, sum_hi = 0;
  for (int l = 0; l < 4; ++l) {
    sum_lo += lo[l] % p;
    sum_hi += hi[l] % p;
  }
  const std::uint64_t two32 = (std::uint64_t{1} << 32) % p;
  std::uint64_t acc = ((sum_hi % p) * two32 + sum_lo) % p;
  for (; k < n; ++k) acc = (acc + static_cast<std::uint64_t>(a[k]) * b[k]) % p;
  return static_cast<std::uint32_t>(acc);
}

constexpr ModKernels kAvx2{Isa::avx2, submul_avx2, scale_avx2, dot_avx2};

}  // namespace

namespace detail {
const ModKernels* avx2_kernels() noexcept { return &kAvx2; }
}  // namespace detail

}  // namespace qtspp::simd

#else

namespace qtspp::simd::detail {
const ModKernels* avx2_kernels() noexcept { return nullptr; }
}  // namespace qtspp::simd::detail

#endif
