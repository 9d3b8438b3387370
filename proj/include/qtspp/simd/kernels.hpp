#pragma once

// Vectorized inner loops for GF(p) elimination and dot products.
//
// Every kernel has a portable scalar reference and, where the target
// supports it, an AVX2 variant. The active set is chosen once at startup
// from the CPU features; setting QTSPP_SIMD=scalar forces the reference.
// All variants must agree bit-for-bit, which tests/test_kernels.cpp checks.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace qtspp::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Function table of one instruction-set variant. Inputs are canonical
/// residues in [0, p) with p < 2^31; outputs are canonical as well.
struct ModKernels {
  Isa isa;
  /// dst[k] <- dst[k] - factor * src[k]  (mod p)
  void (*submul)(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                 std::uint32_t factor, std::uint32_t p);
  /// dst[k] <- factor * dst[k]  (mod p)
  void (*scale)(std::uint32_t* dst, std::size_t n, std::uint32_t factor, std::uint32_t p);
  /// sum_k a[k] * b[k]  (mod p)
  std::uint32_t (*dot)(const std::uint32_t* a, const std::uint32_t* b, std::size_t n,
                       std::uint32_t p);
};

const ModKernels& scalar_kernels() noexcept;
bool isa_available(Isa isa) noexcept;
/// Throws InvalidArgument if `isa` is not available on this machine.
const ModKernels& kernels_for(Isa isa);
/// The set selected at startup.
const ModKernels& active() noexcept;

inline void submul(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
                   std::uint32_t factor, std::uint32_t p) noexcept {
  active().submul(dst.data(), src.data(), dst.size(), factor, p);
}
inline void scale(std::span<std::uint32_t> dst, std::uint32_t factor, std::uint32_t p) noexcept {
  active().scale(dst.data(), dst.size(), factor, p);
}
inline std::uint32_t dot(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                         std::uint32_t p) noexcept {
  return active().dot(a.data(), b.data(), a.size(), p);
}

namespace detail {

/// Shoup's precomputed quotient floor(w * 2^32 / p) for multiplying by a fixed w.
inline std::uint32_t shoup_precompute(std::uint32_t w, std::uint32_t p) noexcept {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(w) << 32) / p);
}

const ModKernels* avx2_kernels() noexcept;  // nullptr when not compiled in

}  // namespace detail

}  // namespace qtspp::simd
