#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "smallmiss/exact_moments.hpp"
#include "smallmiss/se_estimation.hpp"
#include "test_helpers.hpp"

using namespace smallmiss;
using test_helpers::rel_close;

namespace {

MIResult fake_mi(Family family, int d, double within_sigma2,
                 std::vector<double> mu_hats) {
    MIResult mi;
    mi.family = family;
    mi.imputation_count = d;
    mi.within_mean_sigma2 = within_sigma2;
    double sum = 0.0;
    for (double m : mu_hats) {
        mi.per_imputation.push_back(ParamEstimate{m, within_sigma2,
                                                  std::sqrt(within_sigma2)});
        sum += m;
    }
    mi.pooled.mu_hat = sum / d;
    if (d >= 2) {
        double ss = 0.0;
        for (double m : mu_hats) {
            ss += (m - mi.pooled.mu_hat) * (m - mi.pooled.mu_hat);
        }
        mi.between_mu = ss / (d - 1);
    }
    return mi;
}

}  // namespace

TEST_CASE("observed-data SE of the mean") {
    CHECK(se_observed_mu(ParamEstimate{0, 0, 0}, 10).value == 0.0);
    const auto se = se_observed_mu(ParamEstimate{0, 1, 1}, 4);
    CHECK(se.value == 0.5);
    CHECK(se.method == SEMethod::ObservedML);
    CHECK_THROWS_AS(se_observed_mu(ParamEstimate{0, 1, 1}, 1),
                    std::invalid_argument);
}

TEST_CASE("ML-imputation SE of the pooled mean") {
    const SampleSpec spec{1, 1, 5, 5};
    const auto obs_est = ParamEstimate{0, 1, 1};

    SUBCASE("hand value") {
        const auto mi = fake_mi(Family::MLike, 5, 1.0, {0, 0, 0, 0, 0});
        const auto se = se_mi_ml_mu(obs_est, mi, spec);
        CHECK(rel_close(se.value, std::sqrt(0.21), 1e-12));
        CHECK(se.method == SEMethod::WangRobins);
    }

    SUBCASE("no missing values reduces to the observed-data SE") {
        const auto mi = fake_mi(Family::MLike, 3, 1.7, {0, 0, 0});
        const SampleSpec complete{1, 1, 5, 0};
        CHECK(se_mi_ml_mu(obs_est, mi, complete).value ==
              se_observed_mu(obs_est, 5).value);
    }

    SUBCASE("large D converges to the observed-data SE") {
        const auto mi = fake_mi(Family::MLike, 1000000, 1.0, {0.0});
        // Unit inputs; the correction term vanishes like 1/D.
        MIResult big = mi;
        big.imputation_count = 1000000;
        const double diff = se_mi_ml_mu(obs_est, big, spec).value -
                            se_observed_mu(obs_est, 5).value;
        CHECK(std::fabs(diff) < 1e-3);
    }

    SUBCASE("method mismatch") {
        const auto mi = fake_mi(Family::PosteriorDraw, 5, 1.0, {0, 0, 0, 0, 0});
        CHECK_THROWS_AS(se_mi_ml_mu(obs_est, mi, spec), std::invalid_argument);
    }

    SUBCASE("fraction-of-missing-information weighting is the same formula") {
        // gamma/D * Wbar with gamma = n_mis/n and Wbar = sigma2_mi/n equals
        // the assembled n_mis * sigma2_mi / (D n^2) term.
        const double sigma2_mi = 1.37;
        const double n = spec.n();
        const double gamma = double(spec.n_mis) / n;
        const double wbar = sigma2_mi / n;
        CHECK(rel_close(gamma / 5 * wbar,
                        spec.n_mis * sigma2_mi / (5 * n * n), 1e-15));
    }

    SUBCASE("equals the pooled-mean SE formula with estimates substituted") {
        RngStream rng(51, 0);
        for (int rep = 0; rep < 100; ++rep) {
            const int n_obs = 3 + static_cast<int>(rng.next_u64() % 30);
            const int n_mis = static_cast<int>(rng.next_u64() % 30);
            const int d = 1 + static_cast<int>(rng.next_u64() % 20);
            const double s2_obs = 0.2 + rng.next_uniform();
            const double s2_mi = 0.2 + rng.next_uniform();
            const SampleSpec s{0, 1, n_obs, n_mis};
            MIResult mi = fake_mi(Family::MLike, d, s2_mi,
                                  std::vector<double>(d, 0.0));
            const double got =
                se_mi_ml_mu(ParamEstimate::from_mu_sigma2(0, s2_obs), mi, s)
                    .value;
            // c_m = 0 substitution: per-term sigma^2 replaced by estimates.
            const double n = s.n();
            const double expect = std::sqrt(
                s2_obs / n_obs +
                s2_mi * (n_mis * (n_obs - 1.0)) / (d * n * n * (n_obs - 1.0)));
            CHECK(rel_close(got, expect, 1e-12));
        }
    }
}

TEST_CASE("Rubin's rules SE of the pooled mean") {
    SUBCASE("identical means leave only the within term") {
        const auto mi = fake_mi(Family::PosteriorDraw, 4, 2.0, {1, 1, 1, 1});
        const auto se = se_mi_pd_mu(mi, 8);
        CHECK(rel_close(se.value, std::sqrt(2.0 / 8), 1e-12));
        CHECK(se.method == SEMethod::RubinRules);
    }

    SUBCASE("hand value") {
        const auto mi = fake_mi(Family::PosteriorDraw, 2, 0.0, {0, 2});
        CHECK(rel_close(se_mi_pd_mu(mi, 17).value, std::sqrt(3.0), 1e-12));
    }

    SUBCASE("value squared recomposes from the stored components") {
        const auto mi =
            fake_mi(Family::PosteriorDraw, 5, 1.3, {0.1, -0.4, 0.2, 0.9, 0.3});
        const double v = se_mi_pd_mu(mi, 10).value;
        CHECK(rel_close(v * v,
                        mi.within_mean_sigma2 / 10 + 1.2 * *mi.between_mu,
                        1e-12));
    }

    SUBCASE("insufficient imputations") {
        const auto mi = fake_mi(Family::PosteriorDraw, 1, 1.0, {0.0});
        CHECK_THROWS_AS(se_mi_pd_mu(mi, 10), std::invalid_argument);
    }

    SUBCASE("method mismatch") {
        const auto mi = fake_mi(Family::MLike, 3, 1.0, {0, 0, 0});
        CHECK_THROWS_AS(se_mi_pd_mu(mi, 10), std::invalid_argument);
    }
}

TEST_CASE("Rubin variance bias closed form") {
    SUBCASE("vanishes at nu_prior = 2 and with nothing missing") {
        for (int n_obs : {5, 20, 100}) {
            for (int n_mis : {0, 5, 40}) {
                const SampleSpec spec{1, 1, n_obs, n_mis};
                CHECK(*rubin_variance_bias(2.0, spec) == 0.0);
            }
            CHECK(*rubin_variance_bias(0.0, SampleSpec{1, 1, n_obs, 0}) ==
                  0.0);
        }
    }

    SUBCASE("undefined below the admissibility threshold") {
        CHECK(!rubin_variance_bias(-2.0, SampleSpec{1, 1, 5, 5}).has_value());
        CHECK(rubin_variance_bias(-2.0, SampleSpec{1, 1, 20, 20}).has_value());
    }

    SUBCASE("proportional to the pooled-variance bias") {
        const QuadratureSpec quad;
        for (double nu : {-2.0, 0.0, 1.0, 2.0, 4.0, 6.0, 7.0}) {
            for (int size : {5, 20, 100}) {
                const SampleSpec spec{1, 1, size, size};
                const auto direct = rubin_variance_bias(nu, spec);
                const auto si = si_moments(
                    EstimatorConfig::posterior_draw(nu), spec, quad);
                if (!direct || !si.sigma2.bias) {
                    continue;
                }
                const double n = spec.n();
                const double expected =
                    (n + size - 1) / (n * size) * *si.sigma2.bias;
                CAPTURE(nu);
                CAPTURE(size);
                CHECK(rel_close(*direct, expected, 1e-12));
            }
        }
    }

    SUBCASE("scales with sigma squared") {
        const auto unit = rubin_variance_bias(0.0, SampleSpec{1, 1, 20, 20});
        const auto scaled = rubin_variance_bias(0.0, SampleSpec{1, 3, 20, 20});
        CHECK(rel_close(*scaled, 9.0 * *unit, 1e-12));
    }
}
