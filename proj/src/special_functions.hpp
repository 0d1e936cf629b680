#ifndef CIDESIGN_SPECIAL_FUNCTIONS_HPP
#define CIDESIGN_SPECIAL_FUNCTIONS_HPP

namespace cid {

// Standard normal distribution function, survival function and density.
double normal_cdf(double x);
double normal_sf(double x);
double normal_pdf(double x);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x),
// series expansion for x < a + 1, continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta function I_x(a,b).
double beta_i(double a, double b, double x);

}  // namespace cid

#endif
