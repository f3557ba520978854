#include "smallmiss/se_estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace smallmiss {

SEEstimate se_observed_mu(const ParamEstimate& est, int n_obs) {
    if (n_obs < 2) {
        throw std::invalid_argument("se_observed_mu: n_obs must be at least 2");
    }
    return SEEstimate{est.sigma_hat / std::sqrt(static_cast<double>(n_obs)),
                      SEMethod::ObservedML};
}

SEEstimate se_mi_ml_mu(const ParamEstimate& obs_est, const MIResult& mi,
                       const SampleSpec& spec) {
    if (mi.family != Family::MLike) {
        throw std::invalid_argument(
            "se_mi_ml_mu: result was not produced under ML imputation");
    }
    spec.validate();
    const double n = spec.n();
    const double var = obs_est.sigma2_hat / spec.n_obs +
                       spec.n_mis * mi.within_mean_sigma2 /
                           (mi.imputation_count * n * n);
    return SEEstimate{std::sqrt(var), SEMethod::WangRobins};
}

SEEstimate se_mi_pd_mu(const MIResult& mi, int n) {
    if (mi.family != Family::PosteriorDraw) {
        throw std::invalid_argument(
            "se_mi_pd_mu: result was not produced under PD imputation");
    }
    if (mi.imputation_count < 2 || !mi.between_mu) {
        throw std::invalid_argument(
            "se_mi_pd_mu: Rubin's rules need at least two imputations");
    }
    const double d = mi.imputation_count;
    const double var =
        mi.within_mean_sigma2 / n + (d + 1) / d * *mi.between_mu;
    return SEEstimate{std::sqrt(var), SEMethod::RubinRules};
}

std::optional<double> rubin_variance_bias(double nu_prior,
                                          const SampleSpec& spec) {
    spec.validate();
    const double n_obs = spec.n_obs;
    const double n = spec.n();
    const double denom = n_obs + nu_prior - 3;
    if (!(denom > 0.0)) {
        return std::nullopt;
    }
    const double s2 = spec.sigma * spec.sigma;
    return -s2 * spec.n_mis * (n + n_obs - 1) * (nu_prior - 2) /
           ((n - 1) * n * n_obs * denom);
}

}  // namespace smallmiss
