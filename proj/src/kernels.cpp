#include <atomic>
#include <cstdlib>
#include <string>

#include "eqdecomp/error.hpp"
#include "eqdecomp/kernels.hpp"

namespace eqd::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() {
  // EQDECOMP_KERNELS=scalar pins the reference path.
  if (const char* env = std::getenv("EQDECOMP_KERNELS"); env && std::string(env) == "scalar") {
    return Backend::scalar;
  }
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  static const bool avx2 = avx2_table() != nullptr && cpu_has_avx2();
  return avx2;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw ValidationError("kernel backend '" + std::string(backend_name(b)) +
                          "' is not available on this CPU");
  }
  current().store(b, std::memory_order_relaxed);
}

const Table& active() {
  return active_backend() == Backend::avx2 ? *avx2_table() : scalar_table();
}

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

}  // namespace eqd::kernels
