#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "kernels_impl.hpp"
#include "psaga/error.hpp"

namespace psaga::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(PSAGA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() {
  if (const char* env = std::getenv("PSAGA_SIMD"); env && std::strcmp(env, "scalar") == 0)
    return Backend::scalar;
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

const Table& active() { return table_for(current().load(std::memory_order_relaxed)); }

void check_same(std::size_t a, std::size_t b) {
  if (a != b)
    fail(Errc::dimension_mismatch,
         "kernel operands of length " + std::to_string(a) + " and " + std::to_string(b));
}

}  // namespace

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) { return b == Backend::scalar || cpu_has_avx2(); }

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b))
    fail(Errc::invalid_config, "SIMD backend " + std::string(backend_name(b)) + " unavailable");
  current().store(b, std::memory_order_relaxed);
}

const Table& table_for(Backend b) {
#if defined(PSAGA_HAVE_AVX2)
  if (b == Backend::avx2) return detail::avx2_table;
#endif
  (void)b;
  return detail::scalar_table;
}

double dot(cspan a, cspan b) {
  check_same(a.size(), b.size());
  return active().dot(a.data(), b.data(), a.size());
}

double squared_norm(cspan a) { return active().squared_norm(a.data(), a.size()); }

double squared_distance(cspan a, cspan b) {
  check_same(a.size(), b.size());
  return active().squared_distance(a.data(), b.data(), a.size());
}

void axpy(double alpha, cspan x, mspan y) {
  check_same(x.size(), y.size());
  active().axpy(alpha, x.data(), y.data(), y.size());
}

void scale(double alpha, mspan y) { active().scale(alpha, y.data(), y.size()); }

void shifted_point(cspan x, double gamma, cspan g, cspan gbar, mspan out) {
  check_same(x.size(), g.size());
  check_same(x.size(), gbar.size());
  check_same(x.size(), out.size());
  active().shifted_point(x.data(), gamma, g.data(), gbar.data(), out.data(), out.size());
}

void scaled_difference(cspan u, cspan v, double gamma, mspan out) {
  check_same(u.size(), v.size());
  check_same(u.size(), out.size());
  active().scaled_difference(u.data(), v.data(), gamma, out.data(), out.size());
}

void blend(double keep, mspan y, double step, cspan u, cspan v) {
  check_same(y.size(), u.size());
  check_same(y.size(), v.size());
  active().blend(keep, y.data(), step, u.data(), v.data(), y.size());
}

}  // namespace psaga::kernels
