#ifndef CIDESIGN_REGRESSION_HPP
#define CIDESIGN_REGRESSION_HPP

#include <Eigen/Dense>
#include <array>
#include <string>
#include <utility>

#include "spline.hpp"

namespace cid {

// Linear model Y = X beta + eps with interest theta = a'beta and uncertain
// prior information tau = C'beta - t = 0.  The method requires
// a'(X'X)^{-1}C = 0 (checked, not assumed).
struct RegressionProblem {
    Eigen::MatrixXd X;  // n x p, full column rank
    Eigen::VectorXd a;  // p
    Eigen::MatrixXd C;  // p x s, full column rank, s < p
    Eigen::VectorXd t;  // s
};

struct DataSummary {
    double theta_hat = 0.0;
    Eigen::VectorXd tau_hat;
    double sigma2_hat = 0.0;
    double v11 = 0.0;
    Eigen::MatrixXd V22;
    double F = 0.0;
    int m = 0;
    int s = 0;
};

struct IntervalReport {
    double lower = 0.0;
    double upper = 0.0;
    double half_width = 0.0;
    double standard_lower = 0.0;
    double standard_upper = 0.0;
    bool used_standard = false;
    double sqrt_F = 0.0;
};

// Least squares via Householder QR; throws on rank deficiency, on violation
// of the orthogonality condition, and on degenerate (exact-fit) data.
DataSummary summarize(const RegressionProblem& problem, const Eigen::VectorXd& y);

// J(d) and the standard interval from a data summary.
IntervalReport interval(const DataSummary& summary, const DFunction& d);

// Single-replicate 2^3 factorial with the three-factor interaction dropped:
// responses in standard Yates order, interest a1 b1 + a2 b2 + a3 b3, prior
// information that the three two-factor interactions vanish (m = 1, s = 3).
std::pair<RegressionProblem, Eigen::VectorXd> factorial_2_3(
    const std::array<double, 8>& responses, const std::array<double, 3>& a);

// gamma = (1/sigma) V22^{-1/2} tau with the symmetric square root from an
// eigendecomposition of V22.
Eigen::VectorXd gamma_vector(const Eigen::MatrixXd& V22, const Eigen::VectorXd& tau,
                             double sigma);
double gamma_norm(const Eigen::MatrixXd& V22, const Eigen::VectorXd& tau, double sigma);

// Input files: CSV whose first column is the response and remaining columns
// the predictors, plus a whitespace sidecar declaring a (one row), the p rows
// of C, and t (one row).
std::pair<RegressionProblem, Eigen::VectorXd> load_problem(
    const std::string& csv_path, const std::string& sidecar_path);

}  // namespace cid

#endif
