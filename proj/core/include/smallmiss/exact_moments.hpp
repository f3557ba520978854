#ifndef SMALLMISS_EXACT_MOMENTS_HPP
#define SMALLMISS_EXACT_MOMENTS_HPP

#include <optional>

#include "smallmiss/estimators.hpp"
#include "smallmiss/quadrature.hpp"

namespace smallmiss {

/// Which multiple-imputation moments to evaluate: a finite number of
/// imputations, or the infinite-imputation limit when imputations is
/// unset.
struct MIMomentRequest {
    EstimatorConfig config;
    SampleSpec spec;
    std::optional<int> imputations = 1;  // nullopt -> infinite
};

/// Exact moments of the single-imputation estimators of mu, sigma^2 and
/// sigma.  With n_mis = 0 imputation is a no-op and the moments are the
/// complete-sample statistics (variance with n-1 divisor).  The ML-family
/// sigma moments involve one expectation without closed form, evaluated by
/// quadrature over the pair (U ~ chi2_{n_mis-1}, W ~ chi2_1).
MomentTriple si_moments(const EstimatorConfig& config, const SampleSpec& spec,
                        const QuadratureSpec& quad);

/// Exact moments of the infinite-imputation estimators.  Expectations (and
/// so biases) coincide with the single-imputation ones; standard errors
/// shrink to the conditional-expectation limit, and the mean estimator has
/// SE sigma/sqrt(n_obs) under both families.
MomentTriple inf_moments(const EstimatorConfig& config, const SampleSpec& spec,
                         const QuadratureSpec& quad);

/// Exact moments with D imputations: the variance of each estimator is
/// (1 - 1/D) * V_inf + (1/D) * V_si; biases equal the single-imputation
/// biases.  D = 1 reproduces si_moments exactly; an unset D returns
/// inf_moments.
MomentTriple mi_moments(const MIMomentRequest& request,
                        const QuadratureSpec& quad);

}  // namespace smallmiss

#endif
