#ifndef SMALLMISS_SE_ESTIMATION_HPP
#define SMALLMISS_SE_ESTIMATION_HPP

#include <optional>

#include "smallmiss/estimators.hpp"
#include "smallmiss/imputation.hpp"

namespace smallmiss {

enum class SEMethod { ObservedML, WangRobins, RubinRules };

struct SEEstimate {
    double value = 0.0;
    SEMethod method = SEMethod::ObservedML;
};

/// sigma_hat / sqrt(n_obs): the standard error estimate attached to an
/// observed-data mean.
SEEstimate se_observed_mu(const ParamEstimate& est, int n_obs);

/// Wang-Robins standard error of the pooled mean under ML imputation:
/// sqrt(sigma2_obs/n_obs + n_mis * sigma2_mi / (D n^2)).  Throws
/// std::invalid_argument when mi was produced under posterior draws.
SEEstimate se_mi_ml_mu(const ParamEstimate& obs_est, const MIResult& mi,
                       const SampleSpec& spec);

/// Rubin's rules standard error of the pooled mean under PD imputation:
/// sqrt(within + (D+1)/D * between) with within = sigma2_mi / n.  Throws
/// std::invalid_argument when mi was produced under ML-like estimation or
/// has fewer than two imputations.
SEEstimate se_mi_pd_mu(const MIResult& mi, int n);

/// Exact bias of the Rubin variance estimator for the mean under PD
/// imputation:
///   -sigma^2 n_mis (n + n_obs - 1)(nu_prior - 2) /
///     ((n-1) n n_obs (n_obs + nu_prior - 3)),
/// which is (n + n_obs - 1)/(n n_obs) times the bias of the pooled
/// variance estimator; unset when n_obs + nu_prior - 3 <= 0.
std::optional<double> rubin_variance_bias(double nu_prior,
                                          const SampleSpec& spec);

}  // namespace smallmiss

#endif
