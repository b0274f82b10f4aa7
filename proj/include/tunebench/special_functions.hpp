#pragma once

namespace tunebench {

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Upper tail of the chi-squared distribution with `dof` degrees of freedom.
double chi_squared_sf(double x, int dof);

// Quantile of Student's t distribution, p in (0, 1).
double students_t_quantile(double p, int dof);

} // namespace tunebench
