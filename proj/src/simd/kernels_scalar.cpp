#include "qtspp/simd/kernels.hpp"

namespace qtspp::simd {

namespace {

void submul_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                   std::uint32_t factor, std::uint32_t p) {
  for (std::size_t k = 0; k < n; ++k) {
    std::uint32_t t = static_cast<std::uint32_t>(static_cast<std::uint64_t>(factor) * src[k] % p);
    dst[k] = dst[k] >= t ? dst[k] - t : dst[k] + p - t;
  }
}

void scale_scalar(std::uint32_t* dst, std::size_t n, std::uint32_t factor, std::uint32_t p) {
  for (std::size_t k = 0; k < n; ++k) {
    dst[k] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(factor) * dst[k] % p);
  }
}

std::uint32_t dot_scalar(const std::uint32_t* a, const std::uint32_t* b, std::size_t n,
                         std::uint32_t p) {
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < n; ++k) {
    acc = (acc + static_cast<std::uint64_t>(a[k]) * b[k]) % p;
  }
  return static_cast<std::uint32_t>(acc);
}

constexpr ModKernels kScalar{Isa::scalar, submul_scalar, scale_scalar, dot_scalar};

}  // namespace

const ModKernels& scalar_kernels() noexcept { return kScalar; }

}  // namespace qtspp::simd
