#ifndef CIDESIGN_DISTRIBUTIONS_HPP
#define CIDESIGN_DISTRIBUTIONS_HPP

#include "special_functions.hpp"

namespace cid {

// Number of degrees of freedom; must be >= 1.
class DegreesOfFreedom {
 public:
    explicit DegreesOfFreedom(int value);
    int value() const { return value_; }
    double as_double() const { return static_cast<double>(value_); }

 private:
    int value_;
};

// Norm of the standardized prior-discrepancy vector; must be finite and >= 0.
class NoncentralityNorm {
 public:
    explicit NoncentralityNorm(double value);
    double value() const { return value_; }

 private:
    double value_;
};

// Chi-squared density, distribution function and quantile function.
double chi2_pdf(double z, DegreesOfFreedom df);
double chi2_cdf(double z, DegreesOfFreedom df);
double chi2_inverse_cdf(double u, DegreesOfFreedom df);

// Noncentral chi-squared density with `df` degrees of freedom and
// noncentrality `lambda`, by the Poisson-weighted central-chi-squared series
// summed outward from its largest term.
double noncentral_chi2_pdf(double x, DegreesOfFreedom df, double lambda);

// Two-sided Student-t quantile t with P(-t <= T <= t) = 1 - alpha for T ~ t_df.
double t_quantile(DegreesOfFreedom df, double alpha);

// Density of V = sqrt(Q/s) where Q ~ noncentral chi-squared(s, ||gamma||^2).
double density_V(double v, DegreesOfFreedom s, NoncentralityNorm gamma);

// Density of W = sqrt(chi^2_m / m).
double density_W(double w, DegreesOfFreedom m);

// E(W) = sqrt(2/m) Gamma((m+1)/2) / Gamma(m/2).
double expected_W(DegreesOfFreedom m);

}  // namespace cid

#endif
