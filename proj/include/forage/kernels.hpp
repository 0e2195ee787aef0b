#pragma once

#include <span>
#include <vector>

#include "forage/doubled.hpp"
#include "forage/graph.hpp"
#include "forage/matrix.hpp"

namespace forage {

/// Relative tolerance when comparing weights against the column maximum to
/// detect argmax ties; exact ties (symmetric closed forms) compare equal
/// anyway, this only guards against drift in computed weights.
inline constexpr double kTieRelTol = 1e-9;

/// Column-stochasticity check tolerance used across tests.
inline constexpr double kStochTol = 1e-12;

/// Uniform out-neighbor walk: column i spreads 1/deg(i) over the neighbors.
ColumnStochasticMatrix uniform_walk(const Graph& g);

/// Gradient matrix: column i puts mass 1/m_i on each out-neighbor attaining
/// the maximum weight, m_i = number of maximizers. w indexes base vertices.
ColumnStochasticMatrix gradient_matrix(const Graph& g, std::span<const double> w);

/// eps * uniform_walk + (1-eps) * gradient_matrix. Throws InvalidEpsilon
/// unless eps in (0,1].
ColumnStochasticMatrix epsilon_greedy(const Graph& g, std::span<const double> w, double eps);

/// Diagonal of R = I + Gamma(r) + lambda V(W): entry i is
/// 1 + gamma_i(r) + lambda * max over base neighbors j of the SAME copy's w_j,
/// gamma = r exactly at idx(1,s) and idx(2,t). Removed entries get 0.
std::vector<double> reward_diagonal(const DoubledGraph& dg, const std::vector<double>& w,
                                    double r, double lambda);

/// w <- (1-rho) w + rho * diag * occupied, elementwise. occupied must be 0/1
/// and zero at removed vertices.
void weight_step(std::vector<double>& w, const std::vector<char>& occupied,
                 const std::vector<double>& diag, double rho);

namespace ref {
/// Serial reference for the parallel weight_step.
void weight_step(std::vector<double>& w, const std::vector<char>& occupied,
                 const std::vector<double>& diag, double rho);
}  // namespace ref

}  // namespace forage
