#pragma once

namespace rcdim {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Series expansion for x < a + 1, Lentz continued fraction otherwise;
/// absolute error below 1e-14 over the ranges used here.
double gamma_p(double a, double x);

/// CDF of a central chi-squared with dof degrees of freedom.
double chi_squared_cdf(double x, double dof);

/// CDF of a noncentral chi-squared (dof, noncentrality lambda), evaluated
/// as a Poisson(lambda/2) mixture of central CDFs expanded outward from
/// the modal weight.
double noncentral_chi_squared_cdf(double x, int dof, double lambda);

}  // namespace rcdim
