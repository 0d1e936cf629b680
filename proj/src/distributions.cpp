#include "distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cid {

namespace {

// log of the central chi-squared density with nu degrees of freedom.
double chi2_log_pdf(double z, double nu) {
    return (0.5 * nu - 1.0) * std::log(z) - 0.5 * z - 0.5 * nu * std::log(2.0) -
           std::lgamma(0.5 * nu);
}

double chi2_pdf_raw(double z, double nu) {
    if (z == 0.0) {
        if (nu == 2.0) return 0.5;
        return nu < 2.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return std::exp(chi2_log_pdf(z, nu));
}

// Sum of the Poisson-mixture series sum_j p_j f_{s+2j}(z) with weights
// p_j = e^{-lam/2} (lam/2)^j / j!.  The summand is log-concave in j, so we
// locate its peak by an uphill walk from the Poisson mode and then expand in
// both directions until the terms fall below 1e-16 of the running sum.
double poisson_mixture_sum(double z, int s, double lambda) {
    const double hl = 0.5 * lambda;
    auto log_term = [&](long j) {
        const double nu = s + 2.0 * j;
        return -hl + j * std::log(hl) - std::lgamma(j + 1.0) + chi2_log_pdf(z, nu);
    };
    // ratio T_{j+1}/T_j
    auto ratio_up = [&](long j) { return hl / (j + 1.0) * z / (s + 2.0 * j); };

    long peak = static_cast<long>(hl);
    constexpr long kMaxSteps = 2000000;
    long steps = 0;
    if (ratio_up(peak) > 1.0) {
        while (ratio_up(peak) > 1.0 && ++steps < kMaxSteps) ++peak;
    } else {
        while (peak > 0 && ratio_up(peak - 1) < 1.0 && ++steps < kMaxSteps) --peak;
    }
    if (steps >= kMaxSteps) throw std::runtime_error("noncentral_chi2_pdf: peak search overran");

    const double lt = log_term(peak);
    if (lt < std::log(std::numeric_limits<double>::min()) + 2.0) return 0.0;
    const double t_peak = std::exp(lt);
    double sum = t_peak;
    double term = t_peak;
    for (long j = peak; ; ++j) {
        term *= ratio_up(j);
        sum += term;
        if (term < 1e-16 * sum) break;
        if (j - peak > kMaxSteps) throw std::runtime_error("noncentral_chi2_pdf: series overran");
    }
    term = t_peak;
    for (long j = peak; j > 0; --j) {
        term /= ratio_up(j - 1);
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

}  // namespace

DegreesOfFreedom::DegreesOfFreedom(int value) : value_(value) {
    if (value < 1) throw std::domain_error("DegreesOfFreedom: value must be >= 1");
}

NoncentralityNorm::NoncentralityNorm(double value) : value_(value) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw std::domain_error("NoncentralityNorm: value must be finite and >= 0");
    }
}

double chi2_pdf(double z, DegreesOfFreedom df) {
    if (z < 0.0) throw std::domain_error("chi2_pdf: z must be >= 0");
    return chi2_pdf_raw(z, df.as_double());
}

double chi2_cdf(double z, DegreesOfFreedom df) {
    if (z < 0.0) throw std::domain_error("chi2_cdf: z must be >= 0");
    if (z == 0.0) return 0.0;
    return gamma_p(0.5 * df.as_double(), 0.5 * z);
}

double chi2_inverse_cdf(double u, DegreesOfFreedom df) {
    if (u < 0.0 || u >= 1.0) throw std::domain_error("chi2_inverse_cdf: u must be in [0,1)");
    if (u == 0.0) return 0.0;
    const double nu = df.as_double();
    double lo = 0.0;
    double hi = nu + 10.0;
    while (chi2_cdf(hi, df) < u) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("chi2_inverse_cdf: bracket expansion failed");
    }
    double z = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = chi2_cdf(z, df) - u;
        if (f > 0.0) hi = z; else lo = z;
        const double pdf = chi2_pdf_raw(z, nu);
        double step = pdf > 0.0 ? f / pdf : 0.0;
        double znew = z - step;
        if (!(znew > lo && znew < hi)) znew = 0.5 * (lo + hi);
        if (std::fabs(f) <= 1e-14 || hi - lo <= 1e-13 * (1.0 + z)) return znew;
        z = znew;
    }
    return z;
}

double noncentral_chi2_pdf(double x, DegreesOfFreedom df, double lambda) {
    if (x < 0.0) throw std::domain_error("noncentral_chi2_pdf: x must be >= 0");
    if (lambda < 0.0) throw std::domain_error("noncentral_chi2_pdf: lambda must be >= 0");
    if (lambda == 0.0) return chi2_pdf_raw(x, df.as_double());
    if (x == 0.0) {
        if (df.value() == 2) return 0.5 * std::exp(-0.5 * lambda);
        return df.value() < 2 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return poisson_mixture_sum(x, df.value(), lambda);
}

double t_quantile(DegreesOfFreedom df, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("t_quantile: alpha must be in (0,1)");
    const double nu = df.as_double();
    const double log_norm =
        std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) - 0.5 * std::log(nu * M_PI);
    auto two_sided = [&](double t) {
        // P(|T| <= t) = 1 - I_{nu/(nu+t^2)}(nu/2, 1/2)
        return 1.0 - beta_i(0.5 * nu, 0.5, nu / (nu + t * t));
    };
    auto pdf = [&](double t) {
        return std::exp(log_norm - 0.5 * (nu + 1.0) * std::log1p(t * t / nu));
    };
    double lo = 0.0;
    double hi = 2.0;
    while (two_sided(hi) < 1.0 - alpha) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("t_quantile: bracket expansion failed");
    }
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = two_sided(t) - (1.0 - alpha);
        if (f > 0.0) hi = t; else lo = t;
        const double dp = 2.0 * pdf(t);
        double tnew = dp > 0.0 ? t - f / dp : 0.5 * (lo + hi);
        if (!(tnew > lo && tnew < hi)) tnew = 0.5 * (lo + hi);
        if (std::fabs(f) <= 1e-14 || hi - lo <= 1e-12 * (1.0 + t)) return tnew;
        t = tnew;
    }
    return t;
}

double density_V(double v, DegreesOfFreedom s, NoncentralityNorm gamma) {
    if (v < 0.0) throw std::domain_error("density_V: v must be >= 0");
    const double lambda = gamma.value() * gamma.value();
    const int sv = s.value();
    if (v == 0.0) {
        // 2sv f(sv^2) has a finite nonzero limit only for s = 1.
        return sv == 1 ? std::exp(-0.5 * lambda) * std::sqrt(2.0 / M_PI) : 0.0;
    }
    const double z = sv * v * v;
    if (lambda == 0.0) return 2.0 * sv * v * chi2_pdf_raw(z, s.as_double());
    return 2.0 * sv * v * poisson_mixture_sum(z, sv, lambda);
}

double density_W(double w, DegreesOfFreedom m) {
    if (w < 0.0) throw std::domain_error("density_W: w must be >= 0");
    const double md = m.as_double();
    if (w == 0.0) {
        return m.value() == 1 ? std::sqrt(2.0 / M_PI) : 0.0;
    }
    return 2.0 * md * w * chi2_pdf_raw(md * w * w, md);
}

double expected_W(DegreesOfFreedom m) {
    const double md = m.as_double();
    return std::sqrt(2.0 / md) *
           std::exp(std::lgamma(0.5 * (md + 1.0)) - std::lgamma(0.5 * md));
}

}  // namespace cid
