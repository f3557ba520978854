#include "smallmiss/exact_moments.hpp"

#include <cmath>
#include <stdexcept>

#include "smallmiss/special_functions.hpp"

namespace smallmiss {

namespace {

double expect_sqrt_chi2(double k) {
    return std::exp(0.5 * M_LN2 + log_gamma((k + 1) / 2) - log_gamma(k / 2));
}

// Expectation, single-imputation variance and infinite-imputation variance
// for one parameter; unset where the moment does not exist.
struct ComponentMoments {
    std::optional<double> expectation;
    std::optional<double> var_si;
    std::optional<double> var_inf;
};

struct MomentParts {
    ComponentMoments mu;
    ComponentMoments sigma2;
    ComponentMoments sigma;
};

// Both imputation families yield a completed-sample variance of the form
// sigma^2 * U_obs/(n-1) * (1 + R) with U_obs ~ chi2_{n_obs-1} independent
// of the imputation-noise factor R, so every moment below reduces to
// chi-square moment algebra plus one scalar kappa = E[sqrt(1 + R)].  The
// infinite-imputation estimators replace the factors that vary across
// imputations by their expectations, leaving scaled functions of U_obs
// alone.
MomentParts compute_parts(const EstimatorConfig& config,
                          const SampleSpec& spec, const QuadratureSpec& quad) {
    const double sigma = spec.sigma;
    const double s2 = sigma * sigma;
    const double s4 = s2 * s2;
    const double n_obs = spec.n_obs;
    const double m = spec.n_mis;
    const double n = spec.n();
    const double nu = n_obs - 1;
    const double q = n_obs / n;
    const double es_uobs = expect_sqrt_chi2(nu);
    const double var_sqrt_uobs = nu - es_uobs * es_uobs;

    MomentParts parts;
    parts.mu.expectation = spec.mu;

    if (config.family == Family::MLike) {
        const double nc = nu + config.c_m;
        if (!(nc > 0.0)) {
            return parts;
        }
        parts.mu.var_si = s2 * (1.0 / n_obs + m * nu / (n * n * nc));
        parts.mu.var_inf = s2 / n_obs;

        // Imputation-noise numerator A = U_imp + q W with U_imp ~
        // chi2_{m-1}, W ~ chi2_1; first two raw moments are polynomial.
        const double a1 = (m - 1) + q;
        const double a2 = 2 * (m - 1) + 2 * q * q + a1 * a1;
        const double scale2 = 1.0 + a1 / nc;
        parts.sigma2.expectation = s2 * nu / (n - 1) * scale2;
        const double e4 = s4 * nu * (nu + 2) / ((n - 1) * (n - 1)) *
                          (1.0 + 2 * a1 / nc + a2 / (nc * nc));
        parts.sigma2.var_si =
            e4 - *parts.sigma2.expectation * *parts.sigma2.expectation;
        parts.sigma2.var_inf =
            s4 * 2 * nu * scale2 * scale2 / ((n - 1) * (n - 1));

        const double kappa = detail::chi2_pair_expectation(
            [nc, q](double u, double w) {
                return std::sqrt(1.0 + (u + q * w) / nc);
            },
            m - 1, quad);
        const double es = sigma * es_uobs / std::sqrt(n - 1) * kappa;
        parts.sigma.expectation = es;
        parts.sigma.var_si = *parts.sigma2.expectation - es * es;
        parts.sigma.var_inf = s2 * kappa * kappa * var_sqrt_uobs / (n - 1);
        return parts;
    }

    const double nu_pd = config.nu_prior + nu;
    if (!(nu_pd > 0.0)) {
        return parts;
    }
    if (nu_pd > 2.0) {
        parts.mu.var_si = (s2 / n_obs) * (1.0 + m * nu / (n * (nu_pd - 2)));
    }
    if (nu_pd > 1.0) {
        parts.mu.var_inf = s2 / n_obs;
    }

    // Noise factor R = U_si / U_pd with U_si ~ chi2_m, U_pd ~ chi2_{nu_pd}.
    if (nu_pd > 2.0) {
        // 1 + m/(nu_pd - 2) kept as one ratio so that nu_pd - 2 = nu
        // cancels exactly and the bias vanishes identically there.
        const double scale_num = nu_pd - 2 + m;
        parts.sigma2.expectation =
            s2 * (nu * scale_num) / ((n - 1) * (nu_pd - 2));
        parts.sigma2.var_inf = s4 * 2 * nu * scale_num * scale_num /
                               ((n - 1) * (n - 1) * (nu_pd - 2) * (nu_pd - 2));
        if (nu_pd > 4.0) {
            const double e4 =
                s4 * nu * (nu + 2) / ((n - 1) * (n - 1)) *
                (1.0 + 2 * m / (nu_pd - 2) +
                 m * (m + 2) / ((nu_pd - 2) * (nu_pd - 4)));
            parts.sigma2.var_si =
                e4 - *parts.sigma2.expectation * *parts.sigma2.expectation;
        }
    }
    if (nu_pd > 1.0) {
        // kappa = E[sqrt(1 + R)] = E[Beta(nu_pd/2, m/2)^{-1/2}].
        const double kappa =
            std::exp(log_gamma((nu_pd - 1) / 2) + log_gamma((nu_pd + m) / 2) -
                     log_gamma(nu_pd / 2) - log_gamma((nu_pd + m - 1) / 2));
        const double es = sigma * es_uobs / std::sqrt(n - 1) * kappa;
        parts.sigma.expectation = es;
        if (nu_pd > 2.0) {
            parts.sigma.var_si = *parts.sigma2.expectation - es * es;
        }
        parts.sigma.var_inf = s2 * kappa * kappa * var_sqrt_uobs / (n - 1);
    }
    return parts;
}

enum class Mode { Si, Inf };

MomentTriple summarize_parts(const MomentParts& parts, const SampleSpec& spec,
                             Mode mode) {
    const auto pick = [mode](const ComponentMoments& c) {
        return mode == Mode::Si ? c.var_si : c.var_inf;
    };
    MomentTriple out;
    out.mu = summarize_moments(spec.mu, parts.mu.expectation, pick(parts.mu));
    out.sigma2 = summarize_moments(spec.sigma * spec.sigma,
                                   parts.sigma2.expectation,
                                   pick(parts.sigma2));
    out.sigma = summarize_moments(spec.sigma, parts.sigma.expectation,
                                  pick(parts.sigma));
    return out;
}

// With nothing missing the completed sample is the observed sample and the
// analysis statistics are the n-1 divisor ones, whatever the config.
MomentTriple complete_sample_moments(const SampleSpec& spec) {
    return observed_moments(EstimatorConfig::mlike(0), spec);
}

}  // namespace

MomentTriple si_moments(const EstimatorConfig& config, const SampleSpec& spec,
                        const QuadratureSpec& quad) {
    spec.validate();
    if (spec.n_mis == 0) {
        return complete_sample_moments(spec);
    }
    return summarize_parts(compute_parts(config, spec, quad), spec, Mode::Si);
}

MomentTriple inf_moments(const EstimatorConfig& config, const SampleSpec& spec,
                         const QuadratureSpec& quad) {
    spec.validate();
    if (spec.n_mis == 0) {
        return complete_sample_moments(spec);
    }
    return summarize_parts(compute_parts(config, spec, quad), spec, Mode::Inf);
}

MomentTriple mi_moments(const MIMomentRequest& request,
                        const QuadratureSpec& quad) {
    request.spec.validate();
    if (!request.imputations) {
        return inf_moments(request.config, request.spec, quad);
    }
    const int d = *request.imputations;
    if (d < 1) {
        throw std::invalid_argument("mi_moments: need at least one imputation");
    }
    if (d == 1 || request.spec.n_mis == 0) {
        return si_moments(request.config, request.spec, quad);
    }

    const MomentParts parts = compute_parts(request.config, request.spec, quad);
    const auto mix = [d](const ComponentMoments& c) -> std::optional<double> {
        if (!c.var_si || !c.var_inf) {
            return std::nullopt;
        }
        const double w = 1.0 / d;
        return (1.0 - w) * *c.var_inf + w * *c.var_si;
    };
    MomentTriple out;
    out.mu = summarize_moments(request.spec.mu, parts.mu.expectation,
                               mix(parts.mu));
    out.sigma2 = summarize_moments(request.spec.sigma * request.spec.sigma,
                                   parts.sigma2.expectation, mix(parts.sigma2));
    out.sigma = summarize_moments(request.spec.sigma, parts.sigma.expectation,
                                  mix(parts.sigma));
    return out;
}

}  // namespace smallmiss
