#ifndef CIDESIGN_EVALUATOR_HPP
#define CIDESIGN_EVALUATOR_HPP

#include <vector>

#include "distributions.hpp"
#include "spline.hpp"

namespace cid {

// Full problem description for curve evaluation.
struct ProblemConfig {
    int m = 1;
    int s = 1;
    double alpha = 0.05;
    double ell = 1.02;
    std::vector<double> gamma_grid;  // starts at 0, strictly increasing

    void validate() const;
};

// Paired (||gamma||, coverage, squared scaled expected length) samples.
struct PerformanceCurve {
    std::vector<double> gamma;
    std::vector<double> coverage;
    std::vector<double> sel_squared;
};

// Coverage probability of J(d) at the given ||gamma||.  The half-width
// function's constant tail must equal the two-sided t quantile implied by
// (m, alpha); absolute accuracy target 1e-7.
double coverage_probability(const DFunction& d, double gamma, int m, int s, double alpha);

// Scaled expected length of J(d) at the given ||gamma||; the tail of d plays
// the role of t(m).  Absolute accuracy target 1e-7.
double scaled_expected_length(const DFunction& d, double gamma, int m, int s);

// Closed-form criterion e(0; d) via a single x-integral; accuracy 1e-9.
double sel_at_zero(const DFunction& d, int m, int s);

// Coverage and squared scaled expected length of d over config.gamma_grid.
// Per-point quadrature failures are aggregated and reported with indices.
PerformanceCurve evaluate_curve(const DFunction& d, const ProblemConfig& config);

// Exact weight multiplying (d(x) - t(m)) in the scaled-expected-length
// x-integrand: int_0^inf f_V(xw; gamma) w^2 f_W(w) dw, reduced to a
// Poisson-mixture of closed-form terms.  Used by the design optimizer.
double sel_weight_kernel(double x, double gamma, int m, int s);

}  // namespace cid

#endif
