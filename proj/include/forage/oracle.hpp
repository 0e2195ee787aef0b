#pragma once

#include <vector>

#include "forage/doubled.hpp"
#include "forage/matrix.hpp"
#include "forage/params.hpp"

namespace forage {

/// Stationary distribution of the pure-gradient kernel: mass 1/(2k) flows
/// along every shortest s->t path in copy 1 and t->s path in copy 2.
struct OptimalDistribution {
  std::vector<double> y_bar;  // length 2V
  int k = 0;                  // delta(s,t)
};

/// Fixed point of the weight iteration under all-active occupancy:
///   w_v = (1 + lambda + lambda^d * r) / (1 - lambda^2)
/// with d the hop distance to the rewarded vertex of the copy (s for copy 1,
/// t for copy 2), measured without passing through the other goal, whose
/// doubled image is removed and pinned at 0.
std::vector<double> closed_form_w_inf(const DoubledGraph& dg, double r, double lambda);

/// linf norm of w - R(w) 1 over active vertices (the fixed-point equation).
double fixed_point_residual(const std::vector<double>& w, const DoubledGraph& dg,
                            double r, double lambda);

OptimalDistribution optimal_distribution(const DoubledGraph& dg);

/// True iff the greedy max-weight walk from s (copy 1, following w2) reaches t
/// in exactly delta(s,t) hops with every argmax tie branch staying on shortest
/// paths, and the symmetric walk from t (copy 2, following w1) reaches s.
bool is_optimal_weights(const std::vector<double>& w, const DoubledGraph& dg);

struct EigenvectorOptions {
  long long max_iters = 500000;
  /// Average with I ((P+I)/2) during iteration; kills periodic-support cycling
  /// without moving the fixed point. Used only on the eps=0 verification path.
  bool lazy = false;
  /// When nonempty, iterate on this index subset only (entries elsewhere 0).
  std::vector<char> support;
};

/// Power iteration from uniform until ||P y - y||_1 < tol; normalized to sum 1.
/// Throws NoConvergence after max_iters.
std::vector<double> stationary_eigenvector(const ColumnStochasticMatrix& p, double tol,
                                           const EigenvectorOptions& opts = {});

/// Convergence-rate bound alpha = (1 - eps^(1+2 d*))^(1/(1+2 d*)).
double rate_bound(double eps, int delta_star);

/// Variant appearing in the stationarity proof, with g* the maximum
/// out-degree: substitutes eps / (1 + (g*-1) eps) for eps. Reported alongside
/// rate_bound; neither is asserted against measured rates.
double rate_bound_proof_variant(double eps, int delta_star, int g_star);

struct EpsGapRow {
  double eps = 0.0;
  double gap = 0.0;  // || y(inf,eps) - y_bar ||_1
  bool converged = false;
};

/// Mean-field run to convergence per eps, gap against optimal_distribution.
std::vector<EpsGapRow> epsilon_gap(const DoubledGraph& dg, const std::vector<double>& eps_list,
                                   const DynamicsConfig& cfg, long long max_t, double tol);

}  // namespace forage
