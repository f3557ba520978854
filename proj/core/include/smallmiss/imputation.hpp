#ifndef SMALLMISS_IMPUTATION_HPP
#define SMALLMISS_IMPUTATION_HPP

#include <optional>
#include <vector>

#include "smallmiss/estimators.hpp"
#include "smallmiss/rng.hpp"

namespace smallmiss {

/// Observed values together with one set of imputed values.
struct CompletedSample {
    ObservedSample observed;
    std::vector<double> imputed;

    int n() const {
        return observed.n_obs() + static_cast<int>(imputed.size());
    }
};

/// Result of a multiple-imputation run with D imputations: the D
/// single-imputation estimates, their means (each component pooled
/// separately, so pooled.sigma_hat is the mean of the sigma_hat values,
/// not the root of pooled.sigma2_hat), and the variance components used
/// by the standard-error estimators.  between_mu divides by D - 1 and is
/// therefore unset at D = 1.
struct MIResult {
    Family family = Family::MLike;
    int imputation_count = 0;  // D
    std::vector<ParamEstimate> per_imputation;
    std::vector<ParamEstimate> imputation_params;  // observed-data estimate used in each iteration
    ParamEstimate pooled;
    double within_mean_sigma2 = 0.0;
    std::optional<double> between_mu;
};

/// Fill n_mis slots with mu_hat + sigma_hat * z, z ~ N(0,1) i.i.d.
CompletedSample impute_once(const ObservedSample& obs,
                            const ParamEstimate& est, int n_mis,
                            RngStream& rng);

/// Mean, variance (n-1 divisor) and standard deviation of the completed
/// sample.  Throws std::invalid_argument when the sample has fewer than
/// two values.
ParamEstimate si_estimate(const CompletedSample& comp);

/// Run the D-iteration imputation loop on one observed dataset.  ML-like
/// configurations compute the observed-data estimate once and reuse it in
/// every iteration; posterior-draw configurations draw a fresh estimate
/// per iteration.
MIResult run_mi(const SampleSpec& spec, const EstimatorConfig& config, int d,
                RngStream& rng, const ObservedSample& obs);

}  // namespace smallmiss

#endif
