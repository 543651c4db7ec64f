#pragma once

// Dense vector kernels used by the solver inner loops.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime from CPUID. Elementwise kernels produce results
// bit-identical to the scalar reference (no FMA contraction); reductions use a
// different summation order and agree to a few ulps of the absolute sum.
// Setting PSAGA_SIMD=scalar in the environment forces the scalar path.

#include <cstddef>
#include <span>
#include <string_view>

namespace psaga::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);
bool backend_available(Backend b);
Backend active_backend();
/// Throws psaga::Error(invalid_config) if the backend is not available.
void set_backend(Backend b);

using cspan = std::span<const double>;
using mspan = std::span<double>;

double dot(cspan a, cspan b);
double squared_norm(cspan a);
double squared_distance(cspan a, cspan b);
// y += alpha * x
void axpy(double alpha, cspan x, mspan y);
// y *= alpha
void scale(double alpha, mspan y);
// out = x + gamma * (g - gbar)
void shifted_point(cspan x, double gamma, cspan g, cspan gbar, mspan out);
// out = (u - v) / gamma
void scaled_difference(cspan u, cspan v, double gamma, mspan out);
// y = keep * y + step * (u - v)
void blend(double keep, mspan y, double step, cspan u, cspan v);

/// Per-backend entry points, for equivalence testing.
struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  double (*squared_norm)(const double*, std::size_t);
  double (*squared_distance)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  void (*shifted_point)(const double*, double, const double*, const double*, double*,
                        std::size_t);
  void (*scaled_difference)(const double*, const double*, double, double*, std::size_t);
  void (*blend)(double, double*, double, const double*, const double*, std::size_t);
};

const Table& table_for(Backend b);

}  // namespace psaga::kernels
