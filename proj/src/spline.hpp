#ifndef CIDESIGN_SPLINE_HPP
#define CIDESIGN_SPLINE_HPP

#include <cstddef>
#include <vector>

namespace cid {

// Strictly increasing knot abscissae 0 = x_1 < x_2 < ... < x_q = k, q >= 3.
class KnotGrid {
 public:
    explicit KnotGrid(std::vector<double> knots);
    const std::vector<double>& knots() const { return knots_; }
    std::size_t size() const { return knots_.size(); }
    double k() const { return knots_.back(); }

 private:
    std::vector<double> knots_;
};

// Natural cubic interpolating spline (zero second derivative at both ends).
// No sign restrictions; used directly for cardinal-basis computations.
class NaturalSpline {
 public:
    NaturalSpline(const std::vector<double>& x, const std::vector<double>& y);
    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;
    const std::vector<double>& moments() const { return m2_; }

    // Minimum of the spline over [x_front, x_back], from per-interval cubic
    // critical points plus a dense sample (samples_per_interval points).
    double minimum(int samples_per_interval = 512) const;

 private:
    std::size_t interval(double x) const;
    std::vector<double> x_, y_, m2_;
};

// The half-width multiplier d: natural cubic spline through
// (x_1, values_1), ..., (x_{q-1}, values_{q-1}), (x_q, tail) on [0, k],
// identically equal to tail for x >= k.  Construction rejects nonpositive
// knot values and splines that are not strictly positive on [0, k].
class DFunction {
 public:
    DFunction(KnotGrid grid, std::vector<double> values, double tail);

    double operator()(double x) const;
    double second_derivative(double x) const;

    const KnotGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double tail() const { return tail_; }
    double k() const { return grid_.k(); }
    double min_on_support() const { return min_on_support_; }
    const NaturalSpline& spline() const { return spline_; }

 private:
    KnotGrid grid_;
    std::vector<double> values_;
    double tail_;
    NaturalSpline spline_;
    double min_on_support_;
};

}  // namespace cid

#endif
