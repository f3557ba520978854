#ifndef SMALLMISS_ESTIMATORS_HPP
#define SMALLMISS_ESTIMATORS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smallmiss/rng.hpp"

namespace smallmiss {

enum class Family { MLike, PosteriorDraw };

/// Which estimator family to use and its single tuning constant:
/// the denominator constant c_M for ML-like estimation, or the prior
/// degrees of freedom nu_prior for posterior-draw estimation.
struct EstimatorConfig {
    Family family = Family::MLike;
    double c_m = 0.0;       // meaningful iff family == MLike
    double nu_prior = 0.0;  // meaningful iff family == PosteriorDraw

    static EstimatorConfig mlike(double c_m);
    static EstimatorConfig posterior_draw(double nu_prior);

    /// Named presets: M0, M1, M2 and PD-2, PD0, PD1, PD2, PD4, PD6, PD7.
    /// Throws std::invalid_argument for unknown names.
    static EstimatorConfig preset(std::string_view name);

    /// Row label in table output: "M<c>" or "PD<nu>".
    std::string label() const;
};

/// The nine estimator rows the summary tables print, in row order.
const std::vector<std::string>& table_presets();

/// Population parameters and missingness layout.
struct SampleSpec {
    double mu = 1.0;
    double sigma = 1.0;
    int n_obs = 0;
    int n_mis = 0;

    int n() const { return n_obs + n_mis; }

    /// Throws std::invalid_argument unless sigma > 0, n_obs >= 2, n_mis >= 0.
    void validate() const;
};

/// Observed values with their cached summaries: the mean and the centered
/// sum of squares sum((y_i - mean)^2).
struct ObservedSample {
    std::vector<double> values;
    double mean = 0.0;
    double css = 0.0;

    int n_obs() const { return static_cast<int>(values.size()); }

    static ObservedSample from_values(std::vector<double> values);
};

/// A point-estimate triple; sigma_hat is always the exact square root of
/// sigma2_hat.
struct ParamEstimate {
    double mu_hat = 0.0;
    double sigma2_hat = 0.0;
    double sigma_hat = 0.0;

    static ParamEstimate from_mu_sigma2(double mu_hat, double sigma2_hat);
};

/// Moment summary of one estimator for one parameter.  Components whose
/// closed form divides by zero or takes the root of a negative number are
/// unset ("undef" in table output); rmse is unset iff bias or se is.
struct MomentSummary {
    std::optional<double> expectation;
    std::optional<double> bias;
    std::optional<double> se;
    std::optional<double> rmse;
};

/// Moment summaries for the three estimated parameters.
struct MomentTriple {
    MomentSummary mu;
    MomentSummary sigma2;
    MomentSummary sigma;
};

/// Assemble a MomentSummary from an expectation and a variance, either of
/// which may be missing; rmse is derived as sqrt(bias^2 + se^2).
MomentSummary summarize_moments(double truth, std::optional<double> expectation,
                                std::optional<double> variance);

/// n_obs i.i.d. draws from N(mu, sigma^2) with cached summaries.
ObservedSample generate_observed(const SampleSpec& spec, RngStream& rng);

/// ML-like point estimates: mean of the observed values and
/// css / (n_obs - 1 + c_m).  Throws std::invalid_argument when
/// n_obs - 1 + c_m <= 0.
ParamEstimate estimate_mlike(const ObservedSample& sample, double c_m);

/// Posterior-draw point estimates: sigma2_hat = css / U with
/// U ~ chi2_{nu_prior + n_obs - 1}, and mu_hat = mean + sigma_hat * Z with
/// Z ~ N(0, 1/n_obs).  Fresh randomness on every call.  Throws
/// std::invalid_argument when nu_prior + n_obs - 1 <= 0.
ParamEstimate draw_pd(const ObservedSample& sample, double nu_prior,
                      RngStream& rng);

/// Exact bias/SE/RMSE of the observed-data estimators of mu, sigma^2 and
/// sigma.  Inadmissible combinations yield unset components rather than
/// errors; bias of mu is exactly 0 for both families.
MomentTriple observed_moments(const EstimatorConfig& config,
                              const SampleSpec& spec);

}  // namespace smallmiss

#endif
