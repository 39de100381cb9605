#include <cstdlib>
#include <cstring>

#include "mlsw/simd/kernels.hpp"

namespace mlsw::kernels {

namespace {

struct Selection {
  const Ops* ops;
  const char* name;
};

Selection select() {
  const char* force = std::getenv("MLSW_SIMD");
  if (force && std::strcmp(force, "scalar") == 0)
    return {&scalar_ops, "scalar"};
#if defined(__x86_64__)
  if (__builtin_cpu_supports("avx2")) return {&avx2_ops, "avx2"};
#endif
#if defined(__aarch64__)
  return {&neon_ops, "neon"};
#endif
  return {&scalar_ops, "scalar"};
}

const Selection& selection() {
  static const Selection sel = select();
  return sel;
}

}  // namespace

const Ops& active() { return *selection().ops; }

const char* active_name() { return selection().name; }

}  // namespace mlsw::kernels
