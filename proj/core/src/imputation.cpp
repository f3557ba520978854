#include "smallmiss/imputation.hpp"

#include <cmath>
#include <stdexcept>

namespace smallmiss {

CompletedSample impute_once(const ObservedSample& obs,
                            const ParamEstimate& est, int n_mis,
                            RngStream& rng) {
    if (n_mis < 0) {
        throw std::invalid_argument("impute_once: n_mis must be non-negative");
    }
    if (!(est.sigma_hat >= 0.0)) {
        throw std::invalid_argument(
            "impute_once: estimate has negative sigma_hat");
    }
    CompletedSample comp;
    comp.observed = obs;
    comp.imputed.resize(static_cast<std::size_t>(n_mis));
    for (double& v : comp.imputed) {
        v = est.mu_hat + est.sigma_hat * sample_normal(rng, 0.0, 1.0);
    }
    return comp;
}

ParamEstimate si_estimate(const CompletedSample& comp) {
    const int n = comp.n();
    if (n < 2) {
        throw std::invalid_argument(
            "si_estimate: completed sample must have at least two values");
    }
    double sum = comp.observed.mean * comp.observed.n_obs();
    for (double v : comp.imputed) {
        sum += v;
    }
    const double mean = sum / n;
    double css = 0.0;
    for (double v : comp.observed.values) {
        const double d = v - mean;
        css += d * d;
    }
    for (double v : comp.imputed) {
        const double d = v - mean;
        css += d * d;
    }
    return ParamEstimate::from_mu_sigma2(mean, css / (n - 1));
}

MIResult run_mi(const SampleSpec& spec, const EstimatorConfig& config, int d,
                RngStream& rng, const ObservedSample& obs) {
    spec.validate();
    if (d < 1) {
        throw std::invalid_argument("run_mi: need at least one imputation");
    }
    if (obs.n_obs() != spec.n_obs) {
        throw std::invalid_argument(
            "run_mi: observed sample size does not match spec.n_obs");
    }

    MIResult result;
    result.family = config.family;
    result.imputation_count = d;
    result.per_imputation.reserve(static_cast<std::size_t>(d));
    result.imputation_params.reserve(static_cast<std::size_t>(d));

    ParamEstimate mlike_est;
    if (config.family == Family::MLike) {
        mlike_est = estimate_mlike(obs, config.c_m);
    }

    double sum_mu = 0.0, sum_s2 = 0.0, sum_s = 0.0;
    for (int iter = 0; iter < d; ++iter) {
        const ParamEstimate est = config.family == Family::MLike
                                      ? mlike_est
                                      : draw_pd(obs, config.nu_prior, rng);
        const CompletedSample comp = impute_once(obs, est, spec.n_mis, rng);
        const ParamEstimate si = si_estimate(comp);
        result.imputation_params.push_back(est);
        result.per_imputation.push_back(si);
        sum_mu += si.mu_hat;
        sum_s2 += si.sigma2_hat;
        sum_s += si.sigma_hat;
    }

    result.pooled =
        ParamEstimate{sum_mu / d, sum_s2 / d, sum_s / d};
    result.within_mean_sigma2 = result.pooled.sigma2_hat;
    if (d >= 2) {
        double ss = 0.0;
        for (const ParamEstimate& si : result.per_imputation) {
            const double dev = si.mu_hat - result.pooled.mu_hat;
            ss += dev * dev;
        }
        result.between_mu = ss / (d - 1);
    }
    return result;
}

}  // namespace smallmiss
