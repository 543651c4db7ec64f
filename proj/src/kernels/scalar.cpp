#include "kernels_impl.hpp"

namespace psaga::kernels::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_norm(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= alpha;
}

void shifted_point(const double* x, double gamma, const double* g, const double* gbar,
                   double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + gamma * (g[i] - gbar[i]);
}

void scaled_difference(const double* u, const double* v, double gamma, double* out,
                       std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (u[i] - v[i]) / gamma;
}

void blend(double keep, double* y, double step, const double* u, const double* v,
           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = keep * y[i] + step * (u[i] - v[i]);
}

}  // namespace

const Table scalar_table{dot,   squared_norm,  squared_distance,  axpy,
                         scale, shifted_point, scaled_difference, blend};

}  // namespace psaga::kernels::detail
