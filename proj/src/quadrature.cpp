#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "errors.hpp"

namespace cid {

namespace {

GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int mid = (n + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        // Newton on P_n starting from the Chebyshev-based estimate of root i.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

void gauss_nodes(int n, double a, double b,
                 std::vector<double>& nodes, std::vector<double>& weights) {
    const GaussRule& rule = gauss_legendre(n);
    nodes.resize(n);
    weights.resize(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        nodes[i] = mid + half * rule.nodes[i];
        weights[i] = half * rule.weights[i];
    }
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n) {
    const GaussRule& rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      int n0, double tol, int max_doublings) {
    const double edges[2] = {a, b};
    return adaptive_gauss_panels(f, edges, n0, tol, max_doublings);
}

double adaptive_gauss_panels(const std::function<double(double)>& f,
                             std::span<const double> edges,
                             int n0, double tol, int max_doublings) {
    auto value_at = [&](int n) {
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            total += gauss_integrate(f, edges[i], edges[i + 1], n);
        }
        return total;
    };
    int n = n0;
    double prev = value_at(n);
    double diff = 0.0;
    for (int k = 0; k < max_doublings; ++k) {
        n *= 2;
        const double cur = value_at(n);
        diff = std::fabs(cur - prev);
        if (diff < tol) return cur;
        prev = cur;
    }
    throw QuadratureError("adaptive_gauss: tolerance not reached", diff);
}

}  // namespace cid
