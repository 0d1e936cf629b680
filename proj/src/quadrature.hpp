#ifndef CIDESIGN_QUADRATURE_HPP
#define CIDESIGN_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

namespace cid {

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on (-1,1); computed by Newton iteration on the
// Legendre polynomial and cached per n.
const GaussRule& gauss_legendre(int n);

// Nodes/weights of the n-point rule mapped to [a, b].
void gauss_nodes(int n, double a, double b,
                 std::vector<double>& nodes, std::vector<double>& weights);

// Integrate f over [a,b] with an n-point rule.
double gauss_integrate(const std::function<double(double)>& f, double a, double b, int n);

// Integrate over [a,b], doubling the node count from n0 until two successive
// estimates differ by less than tol (throws QuadratureError on failure).
double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      int n0, double tol, int max_doublings = 7);

// As above but for an integral split into panels [edges[i], edges[i+1]];
// all panels use the same per-panel node count, doubled together.
double adaptive_gauss_panels(const std::function<double(double)>& f,
                             std::span<const double> edges,
                             int n0, double tol, int max_doublings = 7);

}  // namespace cid

#endif
