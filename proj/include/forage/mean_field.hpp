#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "forage/doubled.hpp"
#include "forage/kernels.hpp"
#include "forage/params.hpp"

namespace forage {

/// Threshold for sgn() applied to real-valued occupancy. True mass stays far
/// above this at stationarity for any eps > 0; the cutoff only matters while
/// the initial front has not reached a vertex yet.
inline constexpr double kSgnTau = 1e-12;

struct MeanFieldState {
  long long t = 0;
  std::vector<double> y;  // probability vector, length 2V, zero at removed
  std::vector<double> w;  // doubled weight field
};

struct TrajectorySample {
  long long t = 0;
  double y_residual = 0.0;
  double w_residual = 0.0;
};

struct ConvergenceReport {
  bool converged = false;
  long long t_stop = 0;
  double y_residual = std::numeric_limits<double>::infinity();  // l1, last step
  double w_residual = std::numeric_limits<double>::infinity();  // linf, last step
  std::vector<TrajectorySample> samples;
};

/// 1 where y_i > tau, else 0.
std::vector<char> occupied_indicator(const std::vector<double>& y, double tau);

/// Deterministic evolution of the mean-field system
///   y(t+1) = P^f(t,eps) y(t)
///   w(t+1) = (1-rho) w(t) + rho R(t) sgn(y(t))
/// where both updates read the time-t state (simultaneous update).
class MeanFieldEngine {
 public:
  MeanFieldEngine(const DoubledGraph& dg, const DynamicsConfig& cfg);

  /// Unit mass at idx(1,s), w = w0 on active vertices, t = 0.
  void reset();

  void step();

  /// Iterates until both residuals (l1 for y, linf for w; moving-averaged
  /// over cfg.window steps) fall below tol, or max_t steps. Records residual
  /// samples every sample_stride steps (0 = none); on_snapshot, when set, is
  /// called with the state at the same stride and once at the final step.
  ConvergenceReport run(long long max_t, double tol, long long sample_stride = 0,
                        const std::function<void(const MeanFieldState&)>& on_snapshot = {});

  const MeanFieldState& state() const { return st_; }
  const DoubledGraph& graph() const { return *dg_; }
  double last_y_residual() const { return y_res_; }
  double last_w_residual() const { return w_res_; }

 private:
  const DoubledGraph* dg_;
  DynamicsConfig cfg_;
  MeanFieldState st_;
  PfAssembler pf_;
  std::vector<double> y_next_, w_prev_, diag_;
  std::vector<char> occ_;
  double y_res_ = std::numeric_limits<double>::infinity();
  double w_res_ = std::numeric_limits<double>::infinity();
};

/// Convenience wrapper: fresh engine, run, return final state + report.
std::pair<MeanFieldState, ConvergenceReport> run_mean_field(
    const DoubledGraph& dg, const DynamicsConfig& cfg, long long max_t, double tol,
    long long sample_stride = 0);

}  // namespace forage
