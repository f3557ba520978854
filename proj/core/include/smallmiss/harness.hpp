#ifndef SMALLMISS_HARNESS_HPP
#define SMALLMISS_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smallmiss/exact_moments.hpp"
#include "smallmiss/imputation.hpp"

namespace smallmiss {

/// One rendered table row: moment cells for one (sample size, estimator)
/// pair.  Cells print with two decimals and the literal token "undef" for
/// missing moments.
struct TableRow {
    int n_obs = 0;
    std::string estimator_label;
    MomentTriple cells;
};

struct TableOptions {
    int which = 1;        // 1 observed-data, 2 single imputation, 3 MI
    int imputations = 5;  // table 3 only
    double mu = 1.0;
    double sigma = 1.0;
    std::vector<int> sizes = {5, 20, 100};
    QuadratureSpec quad;
};

std::vector<TableRow> make_table(const TableOptions& options);
void write_table(std::ostream& out, const std::vector<TableRow>& rows,
                 char delimiter);

struct FigureOptions {
    int which = 1;  // 1 observed-data, 2 MI vs n_obs, 3 MI vs D
    std::vector<int> grid;
    int imputations = 5;  // figure 2
    int n_obs = 20;       // figure 3
    double mu = 1.0;
    double sigma = 1.0;
    QuadratureSpec quad;
};

/// Long-format figure data: one RMSE value per (sweep point, estimator,
/// parameter).
struct FigurePoint {
    int sweep_value = 0;
    std::string estimator_label;
    std::string parameter;
    std::optional<double> rmse;
};

std::vector<FigurePoint> make_figure(const FigureOptions& options);
void write_figure(std::ostream& out, const std::vector<FigurePoint>& points,
                  char delimiter);

struct VerifyOptions {
    EstimatorConfig config;
    SampleSpec spec;
    int imputations = 5;
    long replications = 200000;
    std::uint64_t master_seed = 1;
    QuadratureSpec quad;
    int threads = 0;  // 0 = hardware concurrency
};

/// Comparison of one empirical moment against its closed form; z_score is
/// unset when the closed form is undefined or the Monte Carlo SE is zero.
struct VerifyCell {
    std::string parameter;  // mu | sigma2 | sigma
    std::string moment;     // expectation | se
    std::optional<double> closed_form;
    double empirical = 0.0;
    double mc_se = 0.0;
    std::optional<double> z_score;
};

struct VerifyReport {
    VerifyOptions options;
    std::vector<VerifyCell> cells;

    /// True when every defined |z| is below the limit.
    bool passed(double z_limit = 4.0) const;
};

VerifyReport run_verify(const VerifyOptions& options);
void write_verify(std::ostream& out, const VerifyReport& report,
                  char delimiter);

/// Empirical mean/SD of the pooled estimates over seeded replications,
/// with Monte Carlo standard errors for each (SE of the SD by the delta
/// method from the fourth central moment).
struct ReplicationSummary {
    struct Stat {
        double mean = 0.0;
        double sd = 0.0;
        double mean_se = 0.0;
        double sd_se = 0.0;
    };
    Stat mu;
    Stat sigma2;
    Stat sigma;
    long replications = 0;
};

/// Replication r draws its data and runs the imputation loop on stream r
/// of master_seed; results are independent of the thread count and
/// schedule.
ReplicationSummary simulate_mi_moments(const SampleSpec& spec,
                                       const EstimatorConfig& config, int d,
                                       long replications,
                                       std::uint64_t master_seed,
                                       int threads = 0);

/// Two-decimal cell formatting with the "undef" sentinel.
std::string format_cell(const std::optional<double>& value);

/// File-writing entry points behind the CLI.  out_path "-" writes to
/// stdout.  Return 0 on success, 1 when verification fails its |z| < 4
/// gate, 2 on unwritable output or invalid configuration.
int cmd_table(const TableOptions& options, const std::string& out_path,
              char delimiter);
int cmd_figure(const FigureOptions& options, const std::string& out_path,
               char delimiter);
int cmd_verify(const VerifyOptions& options, const std::string& out_path,
               char delimiter);

namespace detail {

/// Runs fn(0) .. fn(count-1), chunked across threads.  fn must only write
/// to per-index slots.
void parallel_for(long count, int threads, const std::function<void(long)>& fn);

}  // namespace detail

}  // namespace smallmiss

#endif
