#include "montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "distributions.hpp"
#include "parallel.hpp"

namespace cid {

namespace {
constexpr std::uint64_t kChunk = 1 << 16;

struct ChunkSums {
    std::uint64_t covered = 0;
    double ratio_sum = 0.0;
    double ratio_sq_sum = 0.0;
};
}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

NormalSampler::NormalSampler(std::uint64_t seed) : state_(seed) {}

std::uint64_t NormalSampler::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double NormalSampler::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 in (0,1] so the log is finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    const double u2 = static_cast<double>(next_u64() >> 11) * 0x1p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

void SimulationPlan::validate() const {
    DegreesOfFreedom(m);
    DegreesOfFreedom(s);
    NoncentralityNorm(gamma);
    if (replications < 10000) {
        throw std::invalid_argument("SimulationPlan: need at least 10^4 replications");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("SimulationPlan: alpha must be in (0,1)");
    }
}

SimulationResult simulate(const DFunction& d, const SimulationPlan& plan) {
    plan.validate();
    const double t = d.tail();
    const double denom = t * expected_W(DegreesOfFreedom(plan.m));
    const std::uint64_t n = plan.replications;
    const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<ChunkSums> partial(chunks);

    parallel_for(chunks, [&](std::size_t c) {
        NormalSampler rng(splitmix64(plan.seed) + splitmix64(c + 1));
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min<std::uint64_t>(lo + kChunk, n);
        ChunkSums sums;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const double g = rng.next();
            // Q ~ noncentral chi^2_s(gamma^2): shifted first coordinate.
            double q = rng.next() + plan.gamma;
            q *= q;
            for (int j = 1; j < plan.s; ++j) {
                const double z = rng.next();
                q += z * z;
            }
            double w2 = 0.0;
            for (int j = 0; j < plan.m; ++j) {
                const double z = rng.next();
                w2 += z * z;
            }
            const double w = std::sqrt(w2 / plan.m);
            const double v = std::sqrt(q / plan.s);
            const double half = w * d(v / w);
            if (std::fabs(g) <= half) ++sums.covered;
            const double ratio = half / denom;
            sums.ratio_sum += ratio;
            sums.ratio_sq_sum += ratio * ratio;
        }
        partial[c] = sums;
    });

    ChunkSums total;
    for (const ChunkSums& s : partial) {
        total.covered += s.covered;
        total.ratio_sum += s.ratio_sum;
        total.ratio_sq_sum += s.ratio_sq_sum;
    }
    const double nd = static_cast<double>(n);
    SimulationResult out;
    out.coverage_estimate = static_cast<double>(total.covered) / nd;
    out.coverage_stderr =
        std::sqrt(out.coverage_estimate * (1.0 - out.coverage_estimate) / nd);
    out.sel_estimate = total.ratio_sum / nd;
    const double var =
        (total.ratio_sq_sum - nd * out.sel_estimate * out.sel_estimate) / (nd - 1.0);
    out.sel_stderr = std::sqrt(std::max(var, 0.0) / nd);
    return out;
}

}  // namespace cid
