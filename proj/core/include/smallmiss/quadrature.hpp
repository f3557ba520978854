#ifndef SMALLMISS_QUADRATURE_HPP
#define SMALLMISS_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace smallmiss {

/// Quadrature controls: expectations are accepted once doubling the node
/// count moves the result by less than target_rel_tol.
struct QuadratureSpec {
    int nodes_per_axis = 96;
    double target_rel_tol = 1e-9;
};

/// Nodes and normalized weights such that E[g(X)] ~ sum_i weights[i] *
/// g(nodes[i]) for X ~ chi2_df.  Built from the generalized Gauss-Laguerre
/// rule with exponent df/2 - 1 (the df = 1 axis carries the -1/2 exponent
/// that absorbs the integrable singularity at the origin).
struct ChiSquareRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Throws std::domain_error for df <= 0 or non-positive node counts.
ChiSquareRule chi_square_rule(double df, int node_count);

/// E[g(U, W)] for independent U ~ chi2_{df_u} and W ~ chi2_1, evaluated by
/// the tensor-product rule at spec.nodes_per_axis nodes and accepted after
/// one doubling that satisfies target_rel_tol.  Throws std::domain_error
/// for df_u <= 0 and std::runtime_error when two successive doublings both
/// fail the tolerance.
double numeric_expectation(const std::function<double(double, double)>& g,
                           double df_u, const QuadratureSpec& spec);

namespace detail {

/// As numeric_expectation but df_u == 0 collapses the U axis to the point
/// mass at zero.
double chi2_pair_expectation(const std::function<double(double, double)>& g,
                             double df_u, const QuadratureSpec& spec);

}  // namespace detail

}  // namespace smallmiss

#endif
