#pragma once

#include "pmc/core.hpp"

namespace pmc {

/// Negative Poisson log-likelihood -sum_{Omega} (y log x - x), up to the
/// constant log(y!) term. Reads `x` only at observed cells.
double neg_log_likelihood(const Matrix& x, const ObservationSet& obs);

/// Gradient of neg_log_likelihood: 1 - y/x on Omega, zero elsewhere.
Matrix gradient(const Matrix& x, const ObservationSet& obs);

/// alpha / beta^2, the gradient Lipschitz constant over the box.
double lipschitz_constant(const FeasibleRegion& region);

/// Poisson KL divergence p log(p/q) - (p - q).
double kl(double p, double q);

/// Squared Hellinger distance between Poisson(p) and Poisson(q):
/// 2 - 2 exp(-(sqrt p - sqrt q)^2 / 2).
double hellinger_sq(double p, double q);

/// Entry-averaged divergences.
double kl_matrix(const Matrix& p, const Matrix& q);
double hellinger_sq_matrix(const Matrix& p, const Matrix& q);

/// T = (alpha - beta)^2 / (8 beta).
double hellinger_t(const FeasibleRegion& region);

/// c such that hellinger_sq_matrix(M, X) >= c * mse_per_entry(M, X) for all
/// M, X in the box: (1 - e^{-T}) / (4 alpha T), or 1/(4 alpha) when T = 0.
double hellinger_mse_floor(const FeasibleRegion& region);

/// (1 - e^{-t}) / t with its limit 1 at t = 0.
double one_minus_exp_over(double t);

} // namespace pmc
