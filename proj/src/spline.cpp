#include "spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cid {

KnotGrid::KnotGrid(std::vector<double> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 3) throw std::invalid_argument("KnotGrid: need at least 3 knots");
    if (knots_.front() != 0.0) throw std::invalid_argument("KnotGrid: first knot must be 0");
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        if (!(knots_[i] < knots_[i + 1])) {
            throw std::invalid_argument("KnotGrid: knots must be strictly increasing");
        }
    }
    if (!(knots_.back() > 0.0) || !std::isfinite(knots_.back())) {
        throw std::invalid_argument("KnotGrid: k must be positive and finite");
    }
}

NaturalSpline::NaturalSpline(const std::vector<double>& x, const std::vector<double>& y)
    : x_(x), y_(y), m2_(x.size(), 0.0) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n) throw std::invalid_argument("NaturalSpline: bad inputs");
    // Tridiagonal system for the interior second-derivative moments,
    // natural end conditions m2[0] = m2[n-1] = 0.
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        diag[i] = (h0 + h1) / 3.0;
        upper[i] = h1 / 6.0;
        rhs[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    }
    // forward elimination (lower entry at row i is h0/6 = upper[i-1])
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double w = upper[i - 1] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m2_[i] = (rhs[i] - upper[i] * m2_[i + 1]) / diag[i];
        if (i == 1) break;
    }
}

std::size_t NaturalSpline::interval(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i == 0) return 0;
    if (i >= x_.size()) return x_.size() - 2;
    return i - 1;
}

double NaturalSpline::value(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m2_[i] + (b * b * b - b) * m2_[i + 1]) * h * h / 6.0;
}

double NaturalSpline::derivative(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * b * b - 1.0) * m2_[i + 1] - (3.0 * a * a - 1.0) * m2_[i]) * h / 6.0;
}

double NaturalSpline::second_derivative(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * m2_[i] + b * m2_[i + 1];
}

double NaturalSpline::minimum(int samples_per_interval) const {
    double lo = y_.front();
    auto consider = [&](double v) { lo = std::min(lo, v); };
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        consider(y_[i + 1]);
        const double h = x_[i + 1] - x_[i];
        for (int j = 1; j < samples_per_interval; ++j) {
            consider(value(x_[i] + h * j / samples_per_interval));
        }
        // cubic critical points: derivative is quadratic in x
        // S'(x) = c0 + c1 (x - x_i) + c2 (x - x_i)^2 with
        const double dy = (y_[i + 1] - y_[i]) / h;
        const double c0 = dy - h * (2.0 * m2_[i] + m2_[i + 1]) / 6.0;
        const double c1 = m2_[i];
        const double c2 = (m2_[i + 1] - m2_[i]) / (2.0 * h);
        double roots[2];
        int nroots = 0;
        if (c2 != 0.0) {
            const double disc = c1 * c1 - 4.0 * c2 * c0;
            if (disc >= 0.0) {
                const double sq = std::sqrt(disc);
                roots[nroots++] = (-c1 + sq) / (2.0 * c2);
                roots[nroots++] = (-c1 - sq) / (2.0 * c2);
            }
        } else if (c1 != 0.0) {
            roots[nroots++] = -c0 / c1;
        }
        for (int r = 0; r < nroots; ++r) {
            const double t = roots[r];
            if (t > 0.0 && t < h) consider(value(x_[i] + t));
        }
    }
    return lo;
}

DFunction::DFunction(KnotGrid grid, std::vector<double> values, double tail)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      tail_(tail),
      spline_([&] {
          if (values_.size() != grid_.size() - 1) {
              throw std::invalid_argument("DFunction: need one value per knot except the last");
          }
          for (double v : values_) {
              if (!(v > 0.0) || !std::isfinite(v)) {
                  throw std::invalid_argument("DFunction: knot values must be positive");
              }
          }
          if (!(tail_ > 0.0) || !std::isfinite(tail_)) {
              throw std::invalid_argument("DFunction: tail must be positive");
          }
          std::vector<double> y = values_;
          y.push_back(tail_);
          return NaturalSpline(grid_.knots(), y);
      }()),
      min_on_support_(spline_.minimum()) {
    if (!(min_on_support_ > 0.0)) {
        throw std::invalid_argument("DFunction: spline dips to " +
                                    std::to_string(min_on_support_) + " on [0,k]");
    }
}

double DFunction::operator()(double x) const {
    if (x < 0.0) throw std::domain_error("DFunction: x must be >= 0");
    if (x >= grid_.k()) return tail_;
    return spline_.value(x);
}

double DFunction::second_derivative(double x) const {
    if (x < 0.0) throw std::domain_error("DFunction: x must be >= 0");
    if (x >= grid_.k()) return 0.0;
    return spline_.second_derivative(x);
}

}  // namespace cid
