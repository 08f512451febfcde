#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elink/config.hpp"
#include "elink/entanglement.hpp"
#include "elink/gaussian.hpp"
#include "elink/qpp.hpp"
#include "elink/wavesolver.hpp"

namespace elink {

struct EntropyRecord {
    double t = 0.0;
    int a = 0;
    int b = 0;
    double s = 0.0;
};

// Front-engine prediction for the block {a, ..., b-1} (site i occupies the
// continuum cell [i-1, i]).
double predict_block_entropy(qpp::StateKind kind, const qpp::QPPParams& params, int a, int b,
                             double t);

// sigma estimators (see the prediction conventions in the README): rainbow
// reads the slope of S(a) over lateral blocks of the initial state; dimer
// reads the slope of the saturated entropy versus block size; the bridge is
// ln 2 per site exactly.
double fit_sigma_rainbow_t0(const CorrelationMatrix& c0);
double fit_sigma_dimer_saturation(std::span<const EntropyRecord> measured, int n_sites, double v);

struct ComparisonReport {
    struct Row {
        int a = 0, b = 0;
        double t = 0.0, measured = 0.0, predicted = 0.0, residual = 0.0;
    };
    struct Crossing {
        int a = 0, b = 0;
        double measured = 0.0, predicted = 0.0;
    };
    std::vector<Row> rows;          // sorted by (a, b, t)
    std::vector<Crossing> crossings;
    double max_abs_residual = 0.0;
    double mean_abs_residual = 0.0;
    double sigma = 0.0;
    double v = 2.0;
};

// Aligns measured and predicted records on their common (block, time) grid
// (a full mismatch is an error), computes residuals, and estimates crossing
// times of the measured curves by two-segment fits.
ComparisonReport compare_report(std::span<const EntropyRecord> measured,
                                std::span<const EntropyRecord> predicted, qpp::StateKind kind,
                                const qpp::QPPParams& params, int n_sites);

struct WaveCompareRecord {
    double t = 0.0;
    double l1_vs_measured = 0.0;
    double offset_vs_measured = 0.0;
    double l1_vs_fronts = 0.0;
    double offset_vs_fronts = 0.0;
};

struct RunResult {
    std::filesystem::path out_dir;
    std::vector<std::string> files; // relative paths, manifest last
    std::vector<EntropyRecord> measured;
    std::vector<EntropyRecord> predicted;
    std::vector<ELMatrix> el_snapshots;
    SubdiagonalSeries subdiagonal;
    std::optional<ComparisonReport> report;
    std::vector<WaveCompareRecord> wave_report;
    double sigma = 0.0;
};

// Executes the full pipeline (state, evolve, measure, predict, compare,
// wave solve) and writes the CSV artifacts plus a sha-256 manifest.
// Artifacts are bit-identical for equal configs; partial outputs are removed
// if the run fails.
RunResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                         int threads = 0);

// State kind of a config, for prediction machinery; throws for states with
// no closed-form predictions.
qpp::StateKind prediction_state_kind(const ExperimentConfig& cfg);

} // namespace elink
