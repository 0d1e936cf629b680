#ifndef CIDESIGN_MONTECARLO_HPP
#define CIDESIGN_MONTECARLO_HPP

#include <cstdint>

#include "spline.hpp"

namespace cid {

struct SimulationPlan {
    std::uint64_t replications = 1000000;
    std::uint64_t seed = 0;
    int m = 1;
    int s = 1;
    double gamma = 0.0;
    double alpha = 0.05;

    void validate() const;
};

struct SimulationResult {
    double coverage_estimate = 0.0;
    double coverage_stderr = 0.0;
    double sel_estimate = 0.0;
    double sel_stderr = 0.0;
};

// Deterministic normal generator: mt19937_64 stream + Box-Muller.  Seeding is
// explicit so results are reproducible; distinct streams are derived from a
// base seed with a SplitMix64 scramble.
class NormalSampler {
 public:
    explicit NormalSampler(std::uint64_t seed);
    double next();

 private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
    std::uint64_t next_u64();
};

std::uint64_t splitmix64(std::uint64_t x);

// Simulation oracle for coverage and scaled expected length: draws the
// (G, V, W) reduction directly.  Replications are processed in fixed-size
// chunks with per-chunk derived seeds and merged in chunk order, so the
// result does not depend on the worker count.
SimulationResult simulate(const DFunction& d, const SimulationPlan& plan);

}  // namespace cid

#endif
