#pragma once

// Probability distribution functions backing every hypothesis test in the
// library. Everything is implemented on top of the regularized incomplete
// gamma/beta functions; the studentized range CDF uses nested Gauss-Legendre
// quadrature (Hartley/Harter formulation).

#include <stdexcept>

namespace clesh {

// Standard normal.
double normal_cdf(double x);
double normal_sf(double x);
// Inverse standard normal CDF (Wichura's PPND16, AS 241).
double normal_quantile(double p);

// Regularized incomplete gamma P(a, x) (lower) and Q(a, x) (upper).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

// Student's t with df degrees of freedom.
double t_cdf(double x, double df);
double t_sf(double x, double df);
// Two-sided tail mass P(|T| >= |x|).
double t_two_sided_p(double x, double df);

// Chi-square.
double chi_square_cdf(double x, double df);
double chi_square_sf(double x, double df);

// Fisher's F.
double f_cdf(double x, double df1, double df2);
double f_sf(double x, double df1, double df2);

// Studentized range distribution for k groups and df error degrees of
// freedom. Absolute accuracy ~1e-8 (nested 64-node Gauss-Legendre panels).
double studentized_range_cdf(double q, double k, double df);
double studentized_range_sf(double q, double k, double df);
// Quantile by bisection on the CDF.
double studentized_range_quantile(double p, double k, double df);

} // namespace clesh
