#include "smallmiss/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace smallmiss {

std::string format_cell(const std::optional<double>& value) {
    if (!value) {
        return "undef";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *value);
    std::string s = buf;
    if (s == "-0.00") {
        s = "0.00";
    }
    return s;
}

namespace {

std::string format_full(const std::optional<double>& value,
                        const char* fmt = "%.17g") {
    if (!value) {
        return "undef";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, fmt, *value);
    return buf;
}

void write_summary_cells(std::ostream& out, const MomentSummary& summary,
                         char delim) {
    out << delim << format_cell(summary.expectation)
        << delim << format_cell(summary.bias)
        << delim << format_cell(summary.se)
        << delim << format_cell(summary.rmse);
}

}  // namespace

std::vector<TableRow> make_table(const TableOptions& options) {
    if (options.which < 1 || options.which > 3) {
        throw std::invalid_argument("make_table: table number must be 1-3");
    }
    std::vector<TableRow> rows;
    rows.reserve(options.sizes.size() * table_presets().size());
    for (int size : options.sizes) {
        for (const std::string& name : table_presets()) {
            const EstimatorConfig config = EstimatorConfig::preset(name);
            TableRow row;
            row.n_obs = size;
            row.estimator_label = name;
            switch (options.which) {
                case 1: {
                    const SampleSpec spec{options.mu, options.sigma, size, 0};
                    row.cells = observed_moments(config, spec);
                    break;
                }
                case 2: {
                    const SampleSpec spec{options.mu, options.sigma, size,
                                          size};
                    row.cells = si_moments(config, spec, options.quad);
                    break;
                }
                default: {
                    const SampleSpec spec{options.mu, options.sigma, size,
                                          size};
                    row.cells = mi_moments({config, spec, options.imputations},
                                           options.quad);
                    break;
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_table(std::ostream& out, const std::vector<TableRow>& rows,
                 char delim) {
    out << "n_obs" << delim << "estimator";
    for (const char* p : {"mu", "sigma2", "sigma"}) {
        for (const char* m : {"expectation", "bias", "se", "rmse"}) {
            out << delim << p << '_' << m;
        }
    }
    out << '\n';
    for (const TableRow& row : rows) {
        out << row.n_obs << delim << row.estimator_label;
        write_summary_cells(out, row.cells.mu, delim);
        write_summary_cells(out, row.cells.sigma2, delim);
        write_summary_cells(out, row.cells.sigma, delim);
        out << '\n';
    }
}

std::vector<FigurePoint> make_figure(const FigureOptions& options) {
    if (options.which < 1 || options.which > 3) {
        throw std::invalid_argument("make_figure: figure number must be 1-3");
    }
    if (options.grid.empty()) {
        throw std::invalid_argument("make_figure: sweep grid is empty");
    }
    std::vector<FigurePoint> points;
    for (int value : options.grid) {
        for (const std::string& name : table_presets()) {
            const EstimatorConfig config = EstimatorConfig::preset(name);
            MomentTriple cells;
            switch (options.which) {
                case 1:
                    cells = observed_moments(
                        config, SampleSpec{options.mu, options.sigma, value, 0});
                    break;
                case 2:
                    cells = mi_moments(
                        {config,
                         SampleSpec{options.mu, options.sigma, value, value},
                         options.imputations},
                        options.quad);
                    break;
                default:
                    cells = mi_moments(
                        {config,
                         SampleSpec{options.mu, options.sigma, options.n_obs,
                                    options.n_obs},
                         value},
                        options.quad);
                    break;
            }
            points.push_back({value, name, "mu", cells.mu.rmse});
            points.push_back({value, name, "sigma2", cells.sigma2.rmse});
            points.push_back({value, name, "sigma", cells.sigma.rmse});
        }
    }
    return points;
}

void write_figure(std::ostream& out, const std::vector<FigurePoint>& points,
                  char delim) {
    out << "sweep_value" << delim << "estimator_label" << delim << "parameter"
        << delim << "rmse" << '\n';
    for (const FigurePoint& p : points) {
        out << p.sweep_value << delim << p.estimator_label << delim
            << p.parameter << delim << format_full(p.rmse, "%.12g") << '\n';
    }
}

namespace detail {

void parallel_for(long count, int threads,
                  const std::function<void(long)>& fn) {
    int workers = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) {
        workers = 1;
    }
    if (workers == 1 || count < 2) {
        for (long i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const long chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long begin = w * chunk;
        const long end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([begin, end, &fn] {
            for (long i = begin; i < end; ++i) {
                fn(i);
            }
        });
    }
    for (std::thread& t : pool) {
        t.join();
    }
}

}  // namespace detail

namespace {

ReplicationSummary::Stat stat_from_column(const std::vector<double>& values) {
    const long r = static_cast<long>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / r;
    double m2 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    const double var = m2 / (r - 1);
    const double m2_pop = m2 / r;
    m4 /= r;
    ReplicationSummary::Stat stat;
    stat.mean = mean;
    stat.sd = std::sqrt(var);
    stat.mean_se = stat.sd / std::sqrt(static_cast<double>(r));
    const double var_of_var = std::max(m4 - m2_pop * m2_pop, 0.0) / r;
    stat.sd_se = stat.sd > 0.0 ? std::sqrt(var_of_var) / (2 * stat.sd) : 0.0;
    return stat;
}

}  // namespace

ReplicationSummary simulate_mi_moments(const SampleSpec& spec,
                                       const EstimatorConfig& config, int d,
                                       long replications,
                                       std::uint64_t master_seed,
                                       int threads) {
    spec.validate();
    if (replications < 2) {
        throw std::invalid_argument(
            "simulate_mi_moments: need at least two replications");
    }
    std::vector<double> mu_col(replications);
    std::vector<double> s2_col(replications);
    std::vector<double> s_col(replications);
    detail::parallel_for(replications, threads, [&](long rep) {
        RngStream rng(master_seed, static_cast<std::uint64_t>(rep));
        const ObservedSample obs = generate_observed(spec, rng);
        const MIResult mi = run_mi(spec, config, d, rng, obs);
        mu_col[rep] = mi.pooled.mu_hat;
        s2_col[rep] = mi.pooled.sigma2_hat;
        s_col[rep] = mi.pooled.sigma_hat;
    });
    ReplicationSummary summary;
    summary.mu = stat_from_column(mu_col);
    summary.sigma2 = stat_from_column(s2_col);
    summary.sigma = stat_from_column(s_col);
    summary.replications = replications;
    return summary;
}

bool VerifyReport::passed(double z_limit) const {
    for (const VerifyCell& cell : cells) {
        if (cell.z_score && !(std::fabs(*cell.z_score) < z_limit)) {
            return false;
        }
    }
    return true;
}

VerifyReport run_verify(const VerifyOptions& options) {
    if (options.replications < 10000) {
        throw std::invalid_argument(
            "run_verify: need at least 10^4 replications");
    }
    const MomentTriple closed = mi_moments(
        {options.config, options.spec, options.imputations}, options.quad);
    const ReplicationSummary sim = simulate_mi_moments(
        options.spec, options.config, options.imputations,
        options.replications, options.master_seed, options.threads);

    VerifyReport report;
    report.options = options;
    const auto add = [&report](const std::string& parameter,
                               const MomentSummary& summary,
                               const ReplicationSummary::Stat& stat) {
        VerifyCell e_cell{parameter, "expectation", summary.expectation,
                          stat.mean, stat.mean_se, std::nullopt};
        if (summary.expectation && stat.mean_se > 0.0) {
            e_cell.z_score = (stat.mean - *summary.expectation) / stat.mean_se;
        }
        report.cells.push_back(std::move(e_cell));
        VerifyCell s_cell{parameter, "se", summary.se, stat.sd, stat.sd_se,
                          std::nullopt};
        if (summary.se && stat.sd_se > 0.0) {
            s_cell.z_score = (stat.sd - *summary.se) / stat.sd_se;
        }
        report.cells.push_back(std::move(s_cell));
    };
    add("mu", closed.mu, sim.mu);
    add("sigma2", closed.sigma2, sim.sigma2);
    add("sigma", closed.sigma, sim.sigma);
    return report;
}

void write_verify(std::ostream& out, const VerifyReport& report, char delim) {
    out << "estimator" << delim << "n_obs" << delim << "n_mis" << delim << "d"
        << delim << "replications" << delim << "master_seed" << delim
        << "parameter" << delim << "moment" << delim << "closed_form" << delim
        << "empirical" << delim << "mc_se" << delim << "z_score" << '\n';
    const VerifyOptions& o = report.options;
    for (const VerifyCell& cell : report.cells) {
        out << o.config.label() << delim << o.spec.n_obs << delim
            << o.spec.n_mis << delim << o.imputations << delim
            << o.replications << delim << o.master_seed << delim
            << cell.parameter << delim << cell.moment << delim
            << format_full(cell.closed_form) << delim
            << format_full(cell.empirical) << delim
            << format_full(cell.mc_se) << delim
            << format_full(cell.z_score) << '\n';
    }
}

namespace {

// Opens out_path (or stdout for "-"), writes via fn, maps failures to the
// exit-code contract: 0 ok, 2 unwritable/invalid.
int write_to_path(const std::string& out_path,
                  const std::function<void(std::ostream&)>& fn) {
    try {
        if (out_path == "-") {
            fn(std::cout);
            return std::cout.good() ? 0 : 2;
        }
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot open output path: " << out_path
                      << '\n';
            return 2;
        }
        fn(out);
        out.flush();
        if (!out.good()) {
            std::cerr << "error: write failed: " << out_path << '\n';
            return 2;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace

int cmd_table(const TableOptions& options, const std::string& out_path,
              char delimiter) {
    try {
        const std::vector<TableRow> rows = make_table(options);
        return write_to_path(out_path, [&](std::ostream& out) {
            write_table(out, rows, delimiter);
        });
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int cmd_figure(const FigureOptions& options, const std::string& out_path,
               char delimiter) {
    try {
        const std::vector<FigurePoint> points = make_figure(options);
        return write_to_path(out_path, [&](std::ostream& out) {
            write_figure(out, points, delimiter);
        });
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int cmd_verify(const VerifyOptions& options, const std::string& out_path,
               char delimiter) {
    VerifyReport report;
    try {
        report = run_verify(options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    const int io_status = write_to_path(out_path, [&](std::ostream& out) {
        write_verify(out, report, delimiter);
    });
    if (io_status != 0) {
        return io_status;
    }
    return report.passed() ? 0 : 1;
}

}  // namespace smallmiss
