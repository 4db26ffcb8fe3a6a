#pragma once

#include "seqcon/errors.hpp"

namespace seqcon {

/**
 * Special functions backing the Beta likelihood model and the copula sampler.
 * All functions are pure and thread-safe. Domain violations throw domain_error;
 * iterative non-convergence throws convergence_error.
 */

// ln Gamma(x), x > 0.
double log_gamma(double x);

// psi(x) = d/dx ln Gamma(x), x > 0.
double digamma(double x);

// ln B(a,b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b).
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation with the
// symmetry switch at x = a/(a+b). Monotone in x, I_0 = 0, I_1 = 1.
double reg_inc_beta(double a, double b, double x);

// Inverse of reg_inc_beta in x: returns s with I_s(a,b) = u for u in (0,1).
// Bracketed Newton iteration on [1e-15, 1 - 1e-15].
double beta_quantile(double a, double b, double u);

// Standard normal CDF and quantile (mutually inverse to ~1e-9).
double normal_cdf(double z);
double normal_quantile(double u);

} // namespace seqcon
