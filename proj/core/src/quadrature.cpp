#include "smallmiss/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace smallmiss {

ChiSquareRule chi_square_rule(double df, int node_count) {
    if (!(df > 0.0)) {
        throw std::domain_error("chi_square_rule: df must be positive");
    }
    if (node_count < 1) {
        throw std::domain_error("chi_square_rule: need at least one node");
    }

    // Golub-Welsch on the Jacobi matrix of the generalized Laguerre
    // polynomials with alpha = df/2 - 1: diagonal 2k + alpha + 1,
    // off-diagonal sqrt(k (k + alpha)).  Eigenvalues are the nodes of the
    // Gamma(df/2, 1) measure; squared first eigenvector components are the
    // weights, already normalized to sum to one.
    const double alpha = df / 2.0 - 1.0;
    const int n = node_count;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
    for (int k = 0; k < n; ++k) {
        diag[k] = 2.0 * k + alpha + 1.0;
    }
    for (int k = 1; k < n; ++k) {
        sub[k - 1] = std::sqrt(k * (k + alpha));
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)),
                                  Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("chi_square_rule: eigensolver failed");
    }

    ChiSquareRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = 2.0 * solver.eigenvalues()[i];  // Gamma scale 2
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = v0 * v0;
    }
    return rule;
}

namespace detail {

namespace {

double tensor_expectation(const std::function<double(double, double)>& g,
                          double df_u, int nodes) {
    const ChiSquareRule w_rule = chi_square_rule(1.0, nodes);
    if (df_u == 0.0) {
        double acc = 0.0;
        for (std::size_t j = 0; j < w_rule.nodes.size(); ++j) {
            acc += w_rule.weights[j] * g(0.0, w_rule.nodes[j]);
        }
        return acc;
    }
    const ChiSquareRule u_rule = chi_square_rule(df_u, nodes);
    double acc = 0.0;
    for (std::size_t i = 0; i < u_rule.nodes.size(); ++i) {
        double inner = 0.0;
        for (std::size_t j = 0; j < w_rule.nodes.size(); ++j) {
            inner += w_rule.weights[j] * g(u_rule.nodes[i], w_rule.nodes[j]);
        }
        acc += u_rule.weights[i] * inner;
    }
    return acc;
}

bool within_tol(double coarse, double fine, double rel_tol) {
    const double scale = std::max(std::fabs(fine), 1e-300);
    return std::fabs(fine - coarse) <= rel_tol * scale;
}

}  // namespace

double chi2_pair_expectation(const std::function<double(double, double)>& g,
                             double df_u, const QuadratureSpec& spec) {
    if (df_u < 0.0) {
        throw std::domain_error(
            "chi2_pair_expectation: df_u must be non-negative");
    }
    const int n0 = std::max(spec.nodes_per_axis, 2);
    const double coarse = tensor_expectation(g, df_u, n0);
    const double fine = tensor_expectation(g, df_u, 2 * n0);
    if (within_tol(coarse, fine, spec.target_rel_tol)) {
        return fine;
    }
    const double finest = tensor_expectation(g, df_u, 4 * n0);
    if (within_tol(fine, finest, spec.target_rel_tol)) {
        return finest;
    }
    throw std::runtime_error(
        "chi2_pair_expectation: quadrature failed to converge after two "
        "node doublings");
}

}  // namespace detail

double numeric_expectation(const std::function<double(double, double)>& g,
                           double df_u, const QuadratureSpec& spec) {
    if (!(df_u > 0.0)) {
        throw std::domain_error("numeric_expectation: df_u must be positive");
    }
    return detail::chi2_pair_expectation(g, df_u, spec);
}

}  // namespace smallmiss
