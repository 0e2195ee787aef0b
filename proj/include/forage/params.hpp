#pragma once

namespace forage {

/// Dynamics parameters shared by the mean-field and finite-swarm engines.
/// Defaults follow the reference simulation setup.
struct DynamicsConfig {
  double rho = 0.005;    // evaporation rate, (0,1)
  double lambda = 0.9;   // diffusion factor, (0,1)
  double r = 5.0;        // goal reward, >= 0
  double eps = 0.5;      // exploration mix, (0,1]
  double w0 = 0.0;       // initial weight on active vertices
  int window = 1;        // residual moving-average width for convergence checks
};

}  // namespace forage
