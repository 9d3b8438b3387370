#include <cstdlib>
#include <string>

#include "qtspp/errors.hpp"
#include "qtspp/simd/kernels.hpp"

namespace qtspp::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(__i386__)
      return detail::avx2_kernels() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const ModKernels& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw InvalidArgument("instruction set not available: " + std::string(isa_name(isa)));
  }
  return isa == Isa::avx2 ? *detail::avx2_kernels() : scalar_kernels();
}

namespace {

const ModKernels& select() noexcept {
  const char* forced = std::getenv("QTSPP_SIMD");
  if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
  if (isa_available(Isa::avx2)) return *detail::avx2_kernels();
  return scalar_kernels();
}

}  // namespace

const ModKernels& active() noexcept {
  static const ModKernels& chosen = select();
  return chosen;
}

}  // namespace qtspp::simd
