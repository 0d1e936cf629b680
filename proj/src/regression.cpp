#include "regression.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "errors.hpp"

namespace cid {

DataSummary summarize(const RegressionProblem& problem, const Eigen::VectorXd& y) {
    const Eigen::Index n = problem.X.rows();
    const Eigen::Index p = problem.X.cols();
    const Eigen::Index s = problem.C.cols();
    if (y.size() != n) throw std::invalid_argument("summarize: y has wrong length");
    if (problem.a.size() != p || problem.C.rows() != p || problem.t.size() != s) {
        throw std::invalid_argument("summarize: inconsistent dimensions");
    }
    if (!(s >= 1 && s < p)) throw std::invalid_argument("summarize: need 1 <= s < p");
    if (n <= p) throw std::invalid_argument("summarize: need n > p");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rank_qr(problem.X);
    if (rank_qr.rank() < p) throw std::invalid_argument("summarize: X is rank deficient");
    if (Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(problem.C).rank() < s) {
        throw std::invalid_argument("summarize: C is rank deficient");
    }

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(problem.X);
    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd resid = y - problem.X * beta;
    const int m = static_cast<int>(n - p);

    DataSummary out;
    out.m = m;
    out.s = static_cast<int>(s);
    out.theta_hat = problem.a.dot(beta);
    out.tau_hat = problem.C.transpose() * beta - problem.t;
    out.sigma2_hat = resid.squaredNorm() / m;

    // Z = R^{-T} [a C] gives v11 = |Z_a|^2, V22 = Z_C' Z_C and the
    // cross-covariance a'(X'X)^{-1}C = Z_a' Z_C.
    const Eigen::MatrixXd R =
        qr.matrixQR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    Eigen::MatrixXd AC(p, s + 1);
    AC.col(0) = problem.a;
    AC.rightCols(s) = problem.C;
    const Eigen::MatrixXd Z = R.transpose().triangularView<Eigen::Lower>().solve(AC);
    const Eigen::VectorXd za = Z.col(0);
    const Eigen::MatrixXd zc = Z.rightCols(s);
    out.v11 = za.squaredNorm();
    if (!(out.v11 > 0.0)) throw std::invalid_argument("summarize: a must be nonzero");
    out.V22 = zc.transpose() * zc;

    const Eigen::VectorXd cross = zc.transpose() * za;
    double zc_max = 0.0;
    for (Eigen::Index j = 0; j < s; ++j) zc_max = std::max(zc_max, zc.col(j).norm());
    if (cross.lpNorm<Eigen::Infinity>() > 1e-10 * za.norm() * zc_max) {
        throw NotApplicableError(
            "summarize: a'(X'X)^{-1}C != 0, the interval construction does not apply");
    }

    if (out.sigma2_hat <= 1e-28 * (y.squaredNorm() / n + 1.0)) {
        throw DegenerateDataError("summarize: residual variance is zero (exact fit)");
    }

    const Eigen::VectorXd w = out.V22.llt().solve(out.tau_hat);
    out.F = out.tau_hat.dot(w) / s / out.sigma2_hat;
    return out;
}

IntervalReport interval(const DataSummary& summary, const DFunction& d) {
    if (!(summary.sigma2_hat > 0.0)) {
        throw std::invalid_argument("interval: summary has nonpositive residual variance");
    }
    IntervalReport out;
    out.sqrt_F = std::sqrt(summary.F);
    const double scale = std::sqrt(summary.v11 * summary.sigma2_hat);
    out.half_width = scale * d(out.sqrt_F);
    out.lower = summary.theta_hat - out.half_width;
    out.upper = summary.theta_hat + out.half_width;
    const double std_half = scale * d.tail();
    out.standard_lower = summary.theta_hat - std_half;
    out.standard_upper = summary.theta_hat + std_half;
    out.used_standard = out.sqrt_F >= d.k();
    return out;
}

std::pair<RegressionProblem, Eigen::VectorXd> factorial_2_3(
    const std::array<double, 8>& responses, const std::array<double, 3>& a) {
    if (a[0] == 0.0 && a[1] == 0.0 && a[2] == 0.0) {
        throw std::invalid_argument("factorial_2_3: a must be nonzero");
    }
    RegressionProblem problem;
    problem.X.resize(8, 7);
    Eigen::VectorXd y(8);
    for (int run = 0; run < 8; ++run) {
        const double x1 = (run & 1) ? 1.0 : -1.0;
        const double x2 = (run & 2) ? 1.0 : -1.0;
        const double x3 = (run & 4) ? 1.0 : -1.0;
        problem.X.row(run) << 1.0, x1, x2, x3, x1 * x2, x1 * x3, x2 * x3;
        y[run] = responses[run];
    }
    problem.a.resize(7);
    problem.a << 0.0, a[0], a[1], a[2], 0.0, 0.0, 0.0;
    problem.C = Eigen::MatrixXd::Zero(7, 3);
    problem.C(4, 0) = 1.0;
    problem.C(5, 1) = 1.0;
    problem.C(6, 2) = 1.0;
    problem.t = Eigen::VectorXd::Zero(3);
    return {std::move(problem), std::move(y)};
}

Eigen::VectorXd gamma_vector(const Eigen::MatrixXd& V22, const Eigen::VectorXd& tau,
                             double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gamma_vector: sigma must be positive");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(V22);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
        throw std::invalid_argument("gamma_vector: V22 must be positive definite");
    }
    const Eigen::VectorXd inv_sqrt = eig.eigenvalues().array().rsqrt();
    return (eig.eigenvectors() * inv_sqrt.asDiagonal() *
            eig.eigenvectors().transpose() * tau) /
           sigma;
}

double gamma_norm(const Eigen::MatrixXd& V22, const Eigen::VectorXd& tau, double sigma) {
    return gamma_vector(V22, tau, sigma).norm();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_double(const std::string& text, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(text, &pos);
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        return pos == text.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

std::pair<RegressionProblem, Eigen::VectorXd> load_problem(
    const std::string& csv_path, const std::string& sidecar_path) {
    std::ifstream csv(csv_path);
    if (!csv) throw std::invalid_argument("load_problem: cannot open " + csv_path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (!parse_double(fields[i], row[i])) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first) {  // header row
                first = false;
                continue;
            }
            throw std::invalid_argument("load_problem: non-numeric data row in " + csv_path);
        }
        first = false;
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("load_problem: no data rows in " + csv_path);
    const std::size_t ncol = rows.front().size();
    if (ncol < 2) throw std::invalid_argument("load_problem: need a response and predictors");
    for (const auto& r : rows) {
        if (r.size() != ncol) {
            throw std::invalid_argument("load_problem: ragged CSV rows in " + csv_path);
        }
    }
    const std::size_t n = rows.size();
    const std::size_t p = ncol - 1;
    Eigen::VectorXd y(n);
    Eigen::MatrixXd X(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = rows[i][0];
        for (std::size_t j = 0; j < p; ++j) X(i, j) = rows[i][j + 1];
    }

    std::ifstream side(sidecar_path);
    if (!side) throw std::invalid_argument("load_problem: cannot open " + sidecar_path);
    std::vector<std::vector<double>> srows;
    while (std::getline(side, line)) {
        std::istringstream is(line);
        std::vector<double> row;
        double v = 0.0;
        while (is >> v) row.push_back(v);
        if (!row.empty()) srows.push_back(std::move(row));
    }
    // layout: a (1 row of p), C (p rows of s), t (1 row of s)
    if (srows.size() != p + 2) {
        throw std::invalid_argument("load_problem: sidecar must have 1 + p + 1 rows");
    }
    if (srows[0].size() != p) {
        throw std::invalid_argument("load_problem: sidecar row 1 must hold the p entries of a");
    }
    const std::size_t s = srows.back().size();
    RegressionProblem problem;
    problem.a = Eigen::Map<Eigen::VectorXd>(srows[0].data(), p);
    problem.C.resize(p, s);
    for (std::size_t i = 0; i < p; ++i) {
        if (srows[i + 1].size() != s) {
            throw std::invalid_argument("load_problem: sidecar C rows must have s entries");
        }
        for (std::size_t j = 0; j < s; ++j) problem.C(i, j) = srows[i + 1][j];
    }
    problem.t = Eigen::Map<Eigen::VectorXd>(srows.back().data(), s);
    problem.X = std::move(X);
    return {std::move(problem), std::move(y)};
}

}  // namespace cid
