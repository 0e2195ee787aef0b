#include "forage/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace forage {

std::vector<char> occupied_indicator(const std::vector<double>& y, double tau) {
  std::vector<char> occ(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) occ[i] = y[i] > tau ? 1 : 0;
  return occ;
}

MeanFieldEngine::MeanFieldEngine(const DoubledGraph& dg, const DynamicsConfig& cfg)
    : dg_(&dg), cfg_(cfg), pf_(dg) {
  reset();
}

void MeanFieldEngine::reset() {
  const int dim = dg_->dim();
  st_.t = 0;
  st_.y.assign(dim, 0.0);
  st_.y[dg_->idx(1, dg_->s)] = 1.0;
  st_.w.assign(dim, 0.0);
  if (cfg_.w0 != 0.0) {
    for (int i = 0; i < dim; ++i) {
      if (dg_->active(i)) st_.w[i] = cfg_.w0;
    }
  }
  occ_.assign(dim, 0);
  y_next_.assign(dim, 0.0);
  w_prev_ = st_.w;
  y_res_ = std::numeric_limits<double>::infinity();
  w_res_ = std::numeric_limits<double>::infinity();
}

void MeanFieldEngine::step() {
  // Both updates read the time-t state: the kernel is built from w(t) and the
  // reinforcement indicator from y(t).
  pf_.update(st_.w, cfg_.eps);
  matvec(pf_.csr(), st_.y, y_next_);

  for (std::size_t i = 0; i < st_.y.size(); ++i) occ_[i] = st_.y[i] > kSgnTau ? 1 : 0;
  occ_[dg_->removed1()] = 0;
  occ_[dg_->removed2()] = 0;

  diag_ = reward_diagonal(*dg_, st_.w, cfg_.r, cfg_.lambda);
  w_prev_ = st_.w;
  weight_step(st_.w, occ_, diag_, cfg_.rho);

  double y_res = 0.0;
  double w_res = 0.0;
  for (std::size_t i = 0; i < st_.y.size(); ++i) {
    y_res += std::abs(y_next_[i] - st_.y[i]);
    w_res = std::max(w_res, std::abs(st_.w[i] - w_prev_[i]));
  }
  y_res_ = y_res;
  w_res_ = w_res;

  st_.y.swap(y_next_);
  ++st_.t;
}

ConvergenceReport MeanFieldEngine::run(long long max_t, double tol, long long sample_stride,
                                       const std::function<void(const MeanFieldState&)>& on_snapshot) {
  ConvergenceReport report;
  std::deque<double> y_window, w_window;
  double y_acc = 0.0;
  double w_acc = 0.0;
  const int window = std::max(1, cfg_.window);
  if (on_snapshot && sample_stride > 0) on_snapshot(st_);
  for (long long step_i = 1; step_i <= max_t; ++step_i) {
    step();
    y_window.push_back(y_res_);
    w_window.push_back(w_res_);
    y_acc += y_res_;
    w_acc += w_res_;
    if (static_cast<int>(y_window.size()) > window) {
      y_acc -= y_window.front();
      w_acc -= w_window.front();
      y_window.pop_front();
      w_window.pop_front();
    }
    const double y_avg = y_acc / static_cast<double>(y_window.size());
    const double w_avg = w_acc / static_cast<double>(w_window.size());
    if (sample_stride > 0 && st_.t % sample_stride == 0) {
      report.samples.push_back({st_.t, y_res_, w_res_});
      if (on_snapshot) on_snapshot(st_);
    }
    if (y_avg < tol && w_avg < tol) {
      report.converged = true;
      break;
    }
  }
  report.t_stop = st_.t;
  report.y_residual = y_res_;
  report.w_residual = w_res_;
  if (on_snapshot && (sample_stride <= 0 || st_.t % sample_stride != 0)) on_snapshot(st_);
  return report;
}

std::pair<MeanFieldState, ConvergenceReport> run_mean_field(const DoubledGraph& dg,
                                                            const DynamicsConfig& cfg,
                                                            long long max_t, double tol,
                                                            long long sample_stride) {
  MeanFieldEngine engine(dg, cfg);
  ConvergenceReport report = engine.run(max_t, tol, sample_stride);
  return {engine.state(), report};
}

}  // namespace forage
