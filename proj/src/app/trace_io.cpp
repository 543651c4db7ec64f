#include <cmath>
#include <cstdio>
#include <ostream>

#include "psaga/app.hpp"

namespace psaga::app {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& os, std::span<const TraceRecord> trace) {
  os << "t,dist_sq,lyapunov,table_drift,wall_ns\n";
  for (const TraceRecord& r : trace) {
    os << r.t << ',';
    if (r.dist_sq) os << format_number(*r.dist_sq);
    os << ',';
    if (r.lyapunov) os << format_number(*r.lyapunov);
    os << ',' << format_number(r.table_drift) << ',' << r.wall_ns << '\n';
  }
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "gamma,s,rho,empirical_contraction,iters_to_threshold,prox_calls,wall_ns\n";
  for (const SweepRow& r : rows) {
    os << format_number(r.gamma) << ',' << r.s << ',' << format_number(r.rho) << ','
       << format_number(r.empirical_contraction) << ',';
    if (r.iters_to_threshold) os << format_number(*r.iters_to_threshold);
    os << ',';
    if (r.prox_calls) os << format_number(*r.prox_calls);
    os << ',' << r.wall_ns << '\n';
  }
}

nlohmann::json to_json(const RateReport& r) {
  nlohmann::json j;
  j["rho"] = r.rho;
  j["rho_prox"] = r.rho_prox;
  j["rho_sample"] = r.rho_sample;
  if (r.rho_defazio) j["rho_defazio"] = *r.rho_defazio;
  if (r.rho_dr) j["rho_dr"] = *r.rho_dr;
  return j;
}

nlohmann::json to_json(const RunSummary& s) {
  nlohmann::json j = to_json(s.rates);
  j["gamma"] = s.gamma;
  // NaN is not representable in JSON
  j["empirical_contraction"] =
      std::isfinite(s.empirical_contraction) ? nlohmann::json(s.empirical_contraction)
                                             : nlohmann::json(nullptr);
  j["final_dist_sq"] = s.final_dist_sq;
  j["prox_calls"] = s.prox_calls;
  j["wall_ns"] = s.wall_ns;
  return j;
}

}  // namespace psaga::app
