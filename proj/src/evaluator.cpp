#include "evaluator.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace cid {

namespace {

constexpr int kOuterNodes = 40;        // per knot interval, doubled on demand
constexpr double kOuterTol = 1e-8;
constexpr int kInnerCovNodes = 80;     // u-integral on [0,1]
constexpr double kInnerCovTol = 1e-9;
constexpr int kInnerSelNodes = 64;     // w-integral
constexpr double kInnerSelTol = 1e-11;
constexpr int kMaxDoublings = 7;

// u-grid for the coverage inner integral at one node-count level: the
// substitution u = F_{m+1}(z) turns the w-expectation into an integral over
// [0,1] against the transformed nodes w(u) = sqrt(F_{m+1}^{-1}(u)/m).
struct CovInnerGrid {
    std::vector<double> w;        // w(u) at the Gauss nodes
    std::vector<double> sf_tail;  // Phi-bar(w * t(m))
    std::vector<double> weights;
};

class CovInnerCache {
 public:
    CovInnerCache(int m, double tail) : m_(m), tail_(tail) {}

    const CovInnerGrid& level(int n) {
        auto it = grids_.find(n);
        if (it != grids_.end()) return it->second;
        CovInnerGrid g;
        std::vector<double> u;
        gauss_nodes(n, 0.0, 1.0, u, g.weights);
        g.w.resize(n);
        g.sf_tail.resize(n);
        const DegreesOfFreedom df(m_ + 1);
        for (int i = 0; i < n; ++i) {
            const double z = chi2_inverse_cdf(u[i], df);
            g.w[i] = std::sqrt(z / m_);
            g.sf_tail[i] = normal_sf(g.w[i] * tail_);
        }
        return grids_.emplace(n, std::move(g)).first->second;
    }

 private:
    int m_;
    double tail_;
    std::map<int, CovInnerGrid> grids_;
};

void check_tail_consistency(const DFunction& d, int m, double alpha) {
    const double t = t_quantile(DegreesOfFreedom(m), alpha);
    if (std::fabs(d.tail() - t) > 1e-8 * t) {
        std::ostringstream os;
        os << "coverage_probability: d has tail " << d.tail()
           << " but t(" << m << ") at alpha=" << alpha << " is " << t;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

void ProblemConfig::validate() const {
    DegreesOfFreedom(m);
    DegreesOfFreedom(s);
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ProblemConfig: alpha must be in (0,1)");
    if (!(ell >= 1.0)) throw std::invalid_argument("ProblemConfig: ell must be >= 1");
    if (gamma_grid.empty()) throw std::invalid_argument("ProblemConfig: gamma grid is empty");
    if (gamma_grid.front() != 0.0) throw std::invalid_argument("ProblemConfig: gamma grid must start at 0");
    for (std::size_t i = 0; i + 1 < gamma_grid.size(); ++i) {
        if (!(gamma_grid[i] < gamma_grid[i + 1])) {
            throw std::invalid_argument("ProblemConfig: gamma grid must be strictly increasing");
        }
    }
}

double coverage_probability(const DFunction& d, double gamma, int m, int s, double alpha) {
    const DegreesOfFreedom dfs(s);
    const NoncentralityNorm gn(gamma);
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("coverage_probability: bad alpha");
    check_tail_consistency(d, m, alpha);

    const double ew = expected_W(DegreesOfFreedom(m));
    CovInnerCache cache(m, d.tail());

    // E(W) int_0^1 g(u; x, ||gamma||) du, doubled until stable.
    auto inner = [&](double x) {
        const double dx = d(x);
        auto level_value = [&](int n) {
            const CovInnerGrid& g = cache.level(n);
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                const double diff = g.sf_tail[i] - normal_sf(g.w[i] * dx);
                if (diff != 0.0) sum += g.weights[i] * diff * density_V(x * g.w[i], dfs, gn);
            }
            return sum;
        };
        int n = kInnerCovNodes;
        double prev = level_value(n);
        double diff = 0.0;
        for (int k = 0; k < kMaxDoublings; ++k) {
            n *= 2;
            const double cur = level_value(n);
            diff = std::fabs(cur - prev);
            if (diff < kInnerCovTol) return ew * cur;
            prev = cur;
        }
        throw QuadratureError("coverage_probability: inner u-integral did not settle", diff);
    };

    const double total = adaptive_gauss_panels(
        [&](double x) { return 2.0 * inner(x); },
        d.grid().knots(), kOuterNodes, kOuterTol, kMaxDoublings);
    return 1.0 - alpha + total;
}

double scaled_expected_length(const DFunction& d, double gamma, int m, int s) {
    const DegreesOfFreedom dfm(m), dfs(s);
    const NoncentralityNorm gn(gamma);
    const double t = d.tail();
    const double ew = expected_W(dfm);
    const double scale = 1.0 / (t * ew);

    // Truncation for the inner w-integral: beyond both the f_W tail and, for
    // x > 0, the reach of f_V's support.
    const double w_tail = std::sqrt((chi2_inverse_cdf(1.0 - 1e-14, DegreesOfFreedom(m + 2)) + 40.0) / m);
    const double v_hi = (gamma + 16.0) / std::sqrt(static_cast<double>(s)) + 16.0;

    auto inner = [&](double x) {
        const double w_hi = x > 0.0 ? std::min(w_tail, v_hi / x) : w_tail;
        return adaptive_gauss(
            [&](double w) {
                return density_V(x * w, dfs, gn) * w * w * density_W(w, dfm);
            },
            0.0, w_hi, kInnerSelNodes, kInnerSelTol, kMaxDoublings);
    };

    const double total = adaptive_gauss_panels(
        [&](double x) { return scale * (d(x) - t) * inner(x); },
        d.grid().knots(), kOuterNodes, kOuterTol, kMaxDoublings);
    return 1.0 + total;
}

double sel_at_zero(const DFunction& d, int m, int s) {
    const DegreesOfFreedom dfm(m);
    const double t = d.tail();
    const double ew = expected_W(dfm);
    const double md = static_cast<double>(m);
    const double sd = static_cast<double>(s);
    const double log_c = 1.5 * std::log(2.0) + 0.5 * sd * std::log(sd) +
                         std::lgamma(0.5 * (sd + md + 1.0)) - std::lgamma(0.5 * md) -
                         std::lgamma(0.5 * sd) + 0.5 * md * std::log(md);
    const double c = std::exp(log_c) / (t * ew);

    const double total = adaptive_gauss_panels(
        [&](double x) {
            return c * (d(x) - t) * std::pow(x, sd - 1.0) /
                   std::pow(sd * x * x + md, 0.5 * (sd + md + 1.0));
        },
        d.grid().knots(), kOuterNodes, 1e-10, kMaxDoublings);
    return 1.0 + total;
}

PerformanceCurve evaluate_curve(const DFunction& d, const ProblemConfig& config) {
    config.validate();
    PerformanceCurve curve;
    curve.gamma = config.gamma_grid;
    const std::size_t n = curve.gamma.size();
    curve.coverage.assign(n, 0.0);
    curve.sel_squared.assign(n, 0.0);
    std::vector<std::string> failures(n);

    parallel_for(n, [&](std::size_t i) {
        try {
            curve.coverage[i] = coverage_probability(d, curve.gamma[i], config.m, config.s, config.alpha);
            const double sel = scaled_expected_length(d, curve.gamma[i], config.m, config.s);
            curve.sel_squared[i] = sel * sel;
        } catch (const QuadratureError& e) {
            failures[i] = e.what();
        }
    });

    std::ostringstream bad;
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!failures[i].empty()) {
            bad << (any ? "; " : "") << "index " << i << " (gamma=" << curve.gamma[i]
                << "): " << failures[i];
            any = true;
        }
    }
    if (any) throw QuadratureError("evaluate_curve: " + bad.str(), 0.0);
    return curve;
}

double sel_weight_kernel(double x, double gamma, int m, int s) {
    if (x < 0.0) throw std::domain_error("sel_weight_kernel: x must be >= 0");
    const NoncentralityNorm gn(gamma);
    const double lambda = gamma * gamma;
    const double md = static_cast<double>(m);
    const double y = s * x * x;

    if (x == 0.0) {
        if (s != 1) return 0.0;
        return std::exp(-0.5 * lambda) * 2.0 * std::sqrt(2.0) *
               std::exp(std::lgamma(0.5 * (md + 2.0)) - std::lgamma(0.5 * md) -
                        std::lgamma(0.5) - std::log(md));
    }

    // Poisson mixture of the closed-form w-integrals for each central
    // component sigma = s + 2j:
    //   int f_sigma(y w^2) w^3 f_W(w) dw =
    //     sqrt(2) m^{m/2} y^{sigma/2-1} Gamma((sigma+m+1)/2)
    //       / ((y+m)^{(sigma+m+1)/2} Gamma(m/2) Gamma(sigma/2))
    const double hl = 0.5 * lambda;
    auto log_term = [&](long j) {
        const double sig = s + 2.0 * j;
        const double lp = lambda > 0.0 ? -hl + j * std::log(hl) - std::lgamma(j + 1.0)
                                       : (j == 0 ? 0.0 : -1e308);
        return lp + (0.5 * sig - 1.0) * std::log(y) +
               std::lgamma(0.5 * (sig + md + 1.0)) - std::lgamma(0.5 * sig) -
               0.5 * (sig + md + 1.0) * std::log(y + md);
    };
    auto ratio_up = [&](long j) {
        const double sig = s + 2.0 * j;
        return hl / (j + 1.0) * y * (sig + md + 1.0) / (sig * (y + md));
    };

    double sum;
    if (lambda == 0.0) {
        sum = std::exp(log_term(0));
    } else {
        long peak = static_cast<long>(hl);
        constexpr long kMaxSteps = 2000000;
        long steps = 0;
        if (ratio_up(peak) > 1.0) {
            while (ratio_up(peak) > 1.0 && ++steps < kMaxSteps) ++peak;
        } else {
            while (peak > 0 && ratio_up(peak - 1) < 1.0 && ++steps < kMaxSteps) --peak;
        }
        if (steps >= kMaxSteps) throw std::runtime_error("sel_weight_kernel: peak search overran");
        const double lt = log_term(peak);
        if (lt < -700.0) return 0.0;
        const double t_peak = std::exp(lt);
        sum = t_peak;
        double term = t_peak;
        for (long j = peak;; ++j) {
            term *= ratio_up(j);
            sum += term;
            if (term < 1e-17 * sum) break;
            if (j - peak > kMaxSteps) throw std::runtime_error("sel_weight_kernel: series overran");
        }
        term = t_peak;
        for (long j = peak; j > 0; --j) {
            term /= ratio_up(j - 1);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
    }
    const double front = 2.0 * s * x * std::sqrt(2.0) *
                         std::exp(0.5 * md * std::log(md) - std::lgamma(0.5 * md));
    return front * sum;
}

}  // namespace cid
