// Seeded Monte Carlo verification of the closed-form moment engines.
// Every gate is |empirical - exact| < 4 Monte Carlo SEs with the SE taken
// from the simulated sample itself, so the checks are deterministic for a
// fixed master seed.
#include <doctest.h>

#include <cmath>
#include <vector>

#include "smallmiss/exact_moments.hpp"
#include "smallmiss/harness.hpp"
#include "smallmiss/se_estimation.hpp"
#include "test_helpers.hpp"

using namespace smallmiss;
using test_helpers::MeanVar;
using test_helpers::mean_var;

namespace {

const QuadratureSpec kQuad;

struct Columns {
    std::vector<double> mu, sigma2, sigma;
};

Columns simulate_observed(const EstimatorConfig& config, int n_obs,
                          long reps, std::uint64_t seed) {
    const SampleSpec spec{1, 1, n_obs, 0};
    Columns cols;
    cols.mu.resize(reps);
    cols.sigma2.resize(reps);
    cols.sigma.resize(reps);
    detail::parallel_for(reps, 0, [&](long rep) {
        RngStream rng(seed, static_cast<std::uint64_t>(rep));
        const auto obs = generate_observed(spec, rng);
        const ParamEstimate est =
            config.family == Family::MLike
                ? estimate_mlike(obs, config.c_m)
                : draw_pd(obs, config.nu_prior, rng);
        cols.mu[rep] = est.mu_hat;
        cols.sigma2[rep] = est.sigma2_hat;
        cols.sigma[rep] = est.sigma_hat;
    });
    return cols;
}

void gate_moment(const MomentSummary& closed, const MeanVar& mv,
                 const char* what) {
    CAPTURE(what);
    if (closed.expectation) {
        CHECK(std::fabs(mv.mean - *closed.expectation) <
              4.0 * mv.mean_se());
    }
    if (closed.se) {
        CHECK(std::fabs(mv.sd() - *closed.se) < 4.0 * mv.sd_se());
    }
}

}  // namespace

TEST_CASE("observed-data estimators match their closed-form moments") {
    // PD-2 at n_obs = 5 is excluded: its variance moments do not exist.
    const long reps = 200000;
    int idx = 0;
    for (const char* name :
         {"M0", "M1", "M2", "PD0", "PD2", "PD4", "PD6", "PD7"}) {
        for (int n_obs : {5, 20}) {
            const EstimatorConfig config = EstimatorConfig::preset(name);
            const auto closed =
                observed_moments(config, SampleSpec{1, 1, n_obs, 0});
            const auto cols =
                simulate_observed(config, n_obs, reps, 9000 + idx++);
            CAPTURE(name);
            CAPTURE(n_obs);
            gate_moment(closed.mu, mean_var(cols.mu), "mu");
            gate_moment(closed.sigma2, mean_var(cols.sigma2), "sigma2");
            gate_moment(closed.sigma, mean_var(cols.sigma), "sigma");
        }
    }
}

TEST_CASE("posterior-draw variance expectations at n_obs = 5") {
    const long reps = 1000000;
    for (const auto& [nu_prior, expected, seed] :
         {std::tuple{0.0, 2.0, std::uint64_t{101}},
          std::tuple{2.0, 1.0, std::uint64_t{102}}}) {
        const auto cols =
            simulate_observed(EstimatorConfig::posterior_draw(nu_prior), 5,
                              reps, seed);
        const auto mv = mean_var(cols.sigma2);
        CAPTURE(nu_prior);
        CHECK(std::fabs(mv.mean - expected) < 4.0 * mv.mean_se());
    }
}

TEST_CASE("observed means are unbiased empirically") {
    const long reps = 1000000;
    const auto cols =
        simulate_observed(EstimatorConfig::mlike(0), 5, reps, 103);
    const auto mv = mean_var(cols.mu);
    CHECK(std::fabs(mv.mean - 1.0) <
          4.0 * (1.0 / std::sqrt(5.0)) / std::sqrt(double(reps)));
}

TEST_CASE("pooled estimates match the exact MI moments across the grid") {
    const long reps = 200000;
    int idx = 0;
    for (const auto& name : table_presets()) {
        for (int n : {5, 20}) {
            for (int d : {1, 5}) {
                const EstimatorConfig config = EstimatorConfig::preset(name);
                const SampleSpec spec{1, 1, n, n};
                const auto closed = mi_moments({config, spec, d}, kQuad);
                const auto sim = simulate_mi_moments(spec, config, d, reps,
                                                     20000 + idx++);
                CAPTURE(name);
                CAPTURE(n);
                CAPTURE(d);
                const auto gate = [](const MomentSummary& cl,
                                     const ReplicationSummary::Stat& st) {
                    if (cl.expectation) {
                        CHECK(std::fabs(st.mean - *cl.expectation) <
                              4.0 * st.mean_se);
                    }
                    if (cl.se) {
                        CHECK(std::fabs(st.sd - *cl.se) < 4.0 * st.sd_se);
                    }
                };
                gate(closed.mu, sim.mu);
                gate(closed.sigma2, sim.sigma2);
                gate(closed.sigma, sim.sigma);
            }
        }
    }
}

TEST_CASE("pooled variance SE at n = 40 with five imputations") {
    const SampleSpec spec{1, 1, 20, 20};
    const auto sim = simulate_mi_moments(spec, EstimatorConfig::mlike(1), 5,
                                         200000, 301);
    const auto closed =
        mi_moments({EstimatorConfig::mlike(1), spec, 5}, kQuad);
    // Closed form 0.3202, i.e. the 0.32 the reference table prints.
    CHECK(std::fabs(sim.sigma2.sd - *closed.sigma2.se) <
          4.0 * sim.sigma2.sd_se);
    CHECK(std::fabs(sim.sigma2.sd - 0.32) < 0.01);
}

TEST_CASE("imputation count moves variance but not bias") {
    const SampleSpec spec{1, 1, 5, 5};
    const EstimatorConfig config = EstimatorConfig::mlike(1);
    const long reps = 200000;

    std::vector<ReplicationSummary> sims;
    for (const auto& [d, seed] :
         {std::pair{1, std::uint64_t{401}}, std::pair{5, std::uint64_t{402}},
          std::pair{50, std::uint64_t{403}}}) {
        sims.push_back(
            simulate_mi_moments(spec, config, d, reps, seed));
    }

    // Expectations agree across D and with the exact value 0.8444.
    const double exact = 0.8444444444444444;
    for (const auto& sim : sims) {
        CHECK(std::fabs(sim.sigma2.mean - exact) < 4.0 * sim.sigma2.mean_se);
    }
    for (std::size_t i = 0; i < sims.size(); ++i) {
        for (std::size_t j = i + 1; j < sims.size(); ++j) {
            const double gap =
                std::fabs(sims[i].sigma2.mean - sims[j].sigma2.mean);
            const double combined =
                std::hypot(sims[i].sigma2.mean_se, sims[j].sigma2.mean_se);
            CHECK(gap < 4.0 * combined);
        }
    }

    // The pooled-mean variance shrinks from D = 1 to D = 50 and both ends
    // sit on the variance-combination prediction.
    const auto var_d1 = sims[0].mu.sd * sims[0].mu.sd;
    const auto var_d50 = sims[2].mu.sd * sims[2].mu.sd;
    const double pred_d1 =
        *mi_moments({config, spec, 1}, kQuad).mu.se;
    const double pred_d50 =
        *mi_moments({config, spec, 50}, kQuad).mu.se;
    CHECK(var_d50 < var_d1);
    CHECK(std::fabs(sims[0].mu.sd - pred_d1) < 4.0 * sims[0].mu.sd_se);
    CHECK(std::fabs(sims[2].mu.sd - pred_d50) < 4.0 * sims[2].mu.sd_se);
    // Separation well beyond joint Monte Carlo noise.
    const double var_se_d1 = 2 * sims[0].mu.sd * sims[0].mu.sd_se;
    const double var_se_d50 = 2 * sims[2].mu.sd * sims[2].mu.sd_se;
    CHECK(var_d1 - var_d50 > 4.0 * std::hypot(var_se_d1, var_se_d50));
}

TEST_CASE("observed-data SE estimator tracks the sigma expectation") {
    const SampleSpec spec{1, 1, 20, 0};
    const long reps = 200000;
    std::vector<double> values(reps);
    detail::parallel_for(reps, 0, [&](long rep) {
        RngStream rng(501, static_cast<std::uint64_t>(rep));
        const auto obs = generate_observed(spec, rng);
        values[rep] = se_observed_mu(estimate_mlike(obs, 0.0), 20).value;
    });
    const auto mv = mean_var(values);
    const auto closed = observed_moments(EstimatorConfig::mlike(0), spec);
    const double expected = *closed.sigma.expectation / std::sqrt(20.0);
    CHECK(std::fabs(mv.mean - expected) < 4.0 * mv.mean_se());
}

TEST_CASE("Rubin variance estimator bias matches the closed form") {
    const long reps = 200000;
    for (const auto& [nu_prior, seed] :
         {std::pair{2.0, std::uint64_t{601}},
          std::pair{0.0, std::uint64_t{602}}}) {
        const SampleSpec spec{1, 1, 20, 20};
        const EstimatorConfig config =
            EstimatorConfig::posterior_draw(nu_prior);
        std::vector<double> vhat(reps), mu_hat(reps);
        detail::parallel_for(reps, 0, [&](long rep) {
            RngStream rng(seed, static_cast<std::uint64_t>(rep));
            const auto obs = generate_observed(spec, rng);
            const auto mi = run_mi(spec, config, 5, rng, obs);
            const double se = se_mi_pd_mu(mi, spec.n()).value;
            vhat[rep] = se * se;
            mu_hat[rep] = mi.pooled.mu_hat;
        });
        const auto mv_v = mean_var(vhat);
        const auto mv_mu = mean_var(mu_hat);
        const double bias_hat = mv_v.mean - mv_mu.var;
        const double noise = std::hypot(mv_v.mean_se(), mv_mu.var_se());
        const double expected = *rubin_variance_bias(nu_prior, spec);
        CAPTURE(nu_prior);
        CHECK(std::fabs(bias_hat - expected) < 4.0 * noise);
    }
}
