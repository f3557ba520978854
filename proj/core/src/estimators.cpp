#include "smallmiss/estimators.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "smallmiss/special_functions.hpp"

namespace smallmiss {

EstimatorConfig EstimatorConfig::mlike(double c_m) {
    EstimatorConfig config;
    config.family = Family::MLike;
    config.c_m = c_m;
    return config;
}

EstimatorConfig EstimatorConfig::posterior_draw(double nu_prior) {
    EstimatorConfig config;
    config.family = Family::PosteriorDraw;
    config.nu_prior = nu_prior;
    return config;
}

EstimatorConfig EstimatorConfig::preset(std::string_view name) {
    if (name == "M0") return mlike(0);
    if (name == "M1") return mlike(1);
    if (name == "M2") return mlike(2);
    if (name == "PD-2") return posterior_draw(-2);
    if (name == "PD0") return posterior_draw(0);
    if (name == "PD1") return posterior_draw(1);
    if (name == "PD2") return posterior_draw(2);
    if (name == "PD4") return posterior_draw(4);
    if (name == "PD6") return posterior_draw(6);
    if (name == "PD7") return posterior_draw(7);
    throw std::invalid_argument("unknown estimator preset: " +
                                std::string(name));
}

namespace {

std::string format_constant(double value) {
    char buf[32];
    if (value == static_cast<long long>(value) && std::fabs(value) < 1e15) {
        std::snprintf(buf, sizeof buf, "%lld",
                      static_cast<long long>(value));
    } else {
        std::snprintf(buf, sizeof buf, "%g", value);
    }
    return buf;
}

}  // namespace

std::string EstimatorConfig::label() const {
    if (family == Family::MLike) {
        return "M" + format_constant(c_m);
    }
    return "PD" + format_constant(nu_prior);
}

const std::vector<std::string>& table_presets() {
    static const std::vector<std::string> presets = {
        "M0", "M1", "M2", "PD-2", "PD0", "PD2", "PD4", "PD6", "PD7"};
    return presets;
}

void SampleSpec::validate() const {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("SampleSpec: sigma must be positive");
    }
    if (n_obs < 2) {
        throw std::invalid_argument("SampleSpec: n_obs must be at least 2");
    }
    if (n_mis < 0) {
        throw std::invalid_argument("SampleSpec: n_mis must be non-negative");
    }
}

ObservedSample ObservedSample::from_values(std::vector<double> values) {
    ObservedSample sample;
    sample.values = std::move(values);
    const auto n = sample.values.size();
    if (n == 0) {
        return sample;
    }
    double sum = 0.0;
    for (double v : sample.values) {
        sum += v;
    }
    sample.mean = sum / static_cast<double>(n);
    double css = 0.0;
    for (double v : sample.values) {
        const double d = v - sample.mean;
        css += d * d;
    }
    sample.css = css;
    return sample;
}

ParamEstimate ParamEstimate::from_mu_sigma2(double mu_hat, double sigma2_hat) {
    return ParamEstimate{mu_hat, sigma2_hat, std::sqrt(sigma2_hat)};
}

MomentSummary summarize_moments(double truth, std::optional<double> expectation,
                                std::optional<double> variance) {
    MomentSummary out;
    if (!expectation) {
        return out;
    }
    out.expectation = *expectation;
    out.bias = *expectation - truth;
    if (variance) {
        const double se = std::sqrt(std::max(*variance, 0.0));
        out.se = se;
        out.rmse = std::hypot(*out.bias, se);
    }
    return out;
}

ObservedSample generate_observed(const SampleSpec& spec, RngStream& rng) {
    spec.validate();
    std::vector<double> values(static_cast<std::size_t>(spec.n_obs));
    for (double& v : values) {
        v = sample_normal(rng, spec.mu, spec.sigma);
    }
    return ObservedSample::from_values(std::move(values));
}

ParamEstimate estimate_mlike(const ObservedSample& sample, double c_m) {
    const double denom = (sample.n_obs() - 1) + c_m;
    if (!(denom > 0.0)) {
        throw std::invalid_argument(
            "estimate_mlike: inadmissible constant, n_obs - 1 + c_m must be "
            "positive");
    }
    return ParamEstimate::from_mu_sigma2(sample.mean, sample.css / denom);
}

ParamEstimate draw_pd(const ObservedSample& sample, double nu_prior,
                      RngStream& rng) {
    const double nu_pd = nu_prior + (sample.n_obs() - 1);
    if (!(nu_pd > 0.0)) {
        throw std::invalid_argument(
            "draw_pd: inadmissible prior, nu_prior + n_obs - 1 must be "
            "positive");
    }
    const double u = sample_chi_square(rng, nu_pd);
    const double sigma2 = sample.css / u;
    const double sigma = std::sqrt(sigma2);
    const double z = sample_normal(
        rng, 0.0, 1.0 / std::sqrt(static_cast<double>(sample.n_obs())));
    return ParamEstimate{sample.mean + sigma * z, sigma2, sigma};
}

namespace {

// E[sqrt(X)] for X ~ chi2_k: sqrt(2) Gamma((k+1)/2) / Gamma(k/2).
double expect_sqrt_chi2(double k) {
    return std::exp(0.5 * M_LN2 + log_gamma((k + 1) / 2) - log_gamma(k / 2));
}

}  // namespace

MomentTriple observed_moments(const EstimatorConfig& config,
                              const SampleSpec& spec) {
    spec.validate();
    const double sigma = spec.sigma;
    const double s2 = sigma * sigma;
    const double n_obs = spec.n_obs;
    const double nu = n_obs - 1;

    MomentTriple out;
    if (config.family == Family::MLike) {
        out.mu = summarize_moments(spec.mu, spec.mu, s2 / n_obs);
        const double nc = nu + config.c_m;
        if (nc > 0.0) {
            out.sigma2 = summarize_moments(s2, s2 * nu / nc,
                                           s2 * s2 * 2 * nu / (nc * nc));
            const double r = expect_sqrt_chi2(nu);
            const double es = sigma * r / std::sqrt(nc);
            out.sigma = summarize_moments(sigma, es,
                                          s2 * (nu - r * r) / nc);
        }
        return out;
    }

    const double nu_pd = config.nu_prior + nu;
    std::optional<double> mu_var;
    if (nu_pd > 2.0) {
        mu_var = (s2 / n_obs) * (1.0 + nu / (nu_pd - 2));
    }
    out.mu = summarize_moments(spec.mu, spec.mu, mu_var);
    if (nu_pd > 0.0) {
        std::optional<double> e2, v2;
        if (nu_pd > 2.0) {
            e2 = s2 * nu / (nu_pd - 2);
        }
        if (nu_pd > 4.0) {
            v2 = s2 * s2 * 2 * nu * (nu + nu_pd - 2) /
                 ((nu_pd - 2) * (nu_pd - 2) * (nu_pd - 4));
        }
        out.sigma2 = summarize_moments(s2, e2, v2);
        std::optional<double> es, vs;
        if (nu_pd > 1.0) {
            es = sigma * std::exp(log_gamma(n_obs / 2) +
                                  log_gamma((nu_pd - 1) / 2) -
                                  log_gamma(nu / 2) - log_gamma(nu_pd / 2));
        }
        if (nu_pd > 2.0) {
            vs = s2 * nu / (nu_pd - 2) - *es * *es;
        }
        out.sigma = summarize_moments(sigma, es, vs);
    }
    return out;
}

}  // namespace smallmiss
