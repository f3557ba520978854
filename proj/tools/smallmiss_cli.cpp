// Command-line front end: reproduces the moment tables and figure data and
// runs seeded Monte Carlo verification campaigns.
//
// Exit codes: 0 success, 1 verification z-gate failure, 2 usage or I/O error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smallmiss/harness.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t used = 0;
        const int value = std::stoi(item, &used);
        if (used != item.size()) {
            throw std::invalid_argument("not an integer: " + item);
        }
        values.push_back(value);
    }
    if (values.empty()) {
        throw std::invalid_argument("empty integer list");
    }
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "smallmiss: exact moments and Monte Carlo verification for "
        "normal-sample estimation under randomly missing values"};

    int table = 0;
    int figure = 0;
    bool verify = false;
    std::string n_obs_text;
    int n_mis = -1;
    int imputations = 5;
    std::optional<double> c_m;
    std::optional<double> nu_prior;
    std::string preset;
    double mu = 1.0;
    double sigma = 1.0;
    long replications = 200000;
    std::uint64_t seed = 1;
    std::string out_path = "-";
    std::string format = "csv";
    std::string grid_text;
    int threads = 0;
    smallmiss::QuadratureSpec quad;

    app.add_option("--table", table, "Write moment table 1, 2 or 3")
        ->check(CLI::Range(1, 3));
    app.add_option("--figure", figure, "Write figure data 1, 2 or 3")
        ->check(CLI::Range(1, 3));
    app.add_flag("--verify", verify,
                 "Run a seeded Monte Carlo verification campaign");
    app.add_option("--n-obs", n_obs_text,
                   "Observed count; comma list of sizes in table mode");
    app.add_option("--n-mis", n_mis,
                   "Missing count (verify mode; default n-obs)");
    app.add_option("--d", imputations, "Number of imputations");
    app.add_option("--cm", c_m, "ML-like denominator constant c_M");
    app.add_option("--nu-prior", nu_prior, "PD prior degrees of freedom");
    app.add_option("--preset", preset,
                   "Estimator preset (M0, M1, M2, PD-2, PD0, ..., PD7)");
    app.add_option("--mu", mu, "Population mean");
    app.add_option("--sigma", sigma, "Population standard deviation");
    app.add_option("--reps", replications, "Verification replications");
    app.add_option("--seed", seed,
                   "Master seed (env SMALLMISS_SEED overrides)");
    app.add_option("--out", out_path, "Output path, - for stdout");
    app.add_option("--format", format, "csv or tsv")
        ->check(CLI::IsMember({"csv", "tsv"}));
    app.add_option("--grid", grid_text,
                   "Figure sweep grid as a comma list");
    app.add_option("--quad-nodes", quad.nodes_per_axis,
                   "Quadrature nodes per axis");
    app.add_option("--quad-tol", quad.target_rel_tol,
                   "Quadrature relative tolerance");
    app.add_option("--threads", threads, "Worker threads (0 = all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    const int modes = (table != 0) + (figure != 0) + (verify ? 1 : 0);
    if (modes != 1) {
        std::cerr << "error: choose exactly one of --table, --figure, "
                     "--verify\n";
        return 2;
    }
    if (const char* env_seed = std::getenv("SMALLMISS_SEED")) {
        try {
            seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            std::cerr << "error: SMALLMISS_SEED is not an unsigned integer: "
                      << env_seed << '\n';
            return 2;
        }
    }
    const char delimiter = format == "tsv" ? '\t' : ',';

    try {
        if (table != 0) {
            smallmiss::TableOptions options;
            options.which = table;
            options.imputations = imputations;
            options.mu = mu;
            options.sigma = sigma;
            options.quad = quad;
            if (!n_obs_text.empty()) {
                options.sizes = parse_int_list(n_obs_text);
            }
            return smallmiss::cmd_table(options, out_path, delimiter);
        }

        if (figure != 0) {
            smallmiss::FigureOptions options;
            options.which = figure;
            options.imputations = imputations;
            options.mu = mu;
            options.sigma = sigma;
            options.quad = quad;
            if (!grid_text.empty()) {
                options.grid = parse_int_list(grid_text);
            } else if (figure == 3) {
                options.grid = {1, 2, 3, 4, 5, 10, 20, 50, 100};
            } else {
                options.grid = {5, 10, 20, 50, 100};
            }
            if (!n_obs_text.empty()) {
                const auto sizes = parse_int_list(n_obs_text);
                if (sizes.size() != 1) {
                    std::cerr << "error: figure mode takes a single --n-obs\n";
                    return 2;
                }
                options.n_obs = sizes.front();
            }
            return smallmiss::cmd_figure(options, out_path, delimiter);
        }

        smallmiss::VerifyOptions options;
        if (!preset.empty()) {
            if (c_m || nu_prior) {
                std::cerr << "error: --preset excludes --cm/--nu-prior\n";
                return 2;
            }
            options.config = smallmiss::EstimatorConfig::preset(preset);
        } else if (c_m && !nu_prior) {
            options.config = smallmiss::EstimatorConfig::mlike(*c_m);
        } else if (nu_prior && !c_m) {
            options.config = smallmiss::EstimatorConfig::posterior_draw(
                *nu_prior);
        } else {
            std::cerr << "error: verify mode needs --preset, --cm or "
                         "--nu-prior\n";
            return 2;
        }
        if (n_obs_text.empty()) {
            std::cerr << "error: verify mode needs --n-obs\n";
            return 2;
        }
        const auto sizes = parse_int_list(n_obs_text);
        if (sizes.size() != 1) {
            std::cerr << "error: verify mode takes a single --n-obs\n";
            return 2;
        }
        options.spec.mu = mu;
        options.spec.sigma = sigma;
        options.spec.n_obs = sizes.front();
        options.spec.n_mis = n_mis >= 0 ? n_mis : sizes.front();
        options.imputations = imputations;
        options.replications = replications;
        options.master_seed = seed;
        options.quad = quad;
        options.threads = threads;
        return smallmiss::cmd_verify(options, out_path, delimiter);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
