#pragma once

#include <optional>
#include <string>
#include <vector>

#include "elink/common.hpp"
#include "elink/lattice.hpp"

namespace elink {

struct TimeGrid {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    // t_k = start + k (stop - start) / (count - 1); a single-point grid is
    // just {start}.
    std::vector<double> times() const;
};

struct ExperimentConfig {
    struct InitialState {
        enum class Kind { homogeneous, dimer, rainbow, bridge, custom };
        Kind kind = Kind::homogeneous;
        double delta = 0.0;
        double h = 0.0;
        std::vector<double> g;
    };

    struct Quench {
        enum class Kind { h0, custom, none };
        Kind kind = Kind::h0;
        std::vector<double> g;
    };

    struct Blocks {
        enum class Kind { all_contiguous, lateral, central, explicit_ranges };
        Kind kind = Kind::lateral;
        std::vector<int> sizes;                    // lateral / central
        std::vector<std::pair<int, int>> ranges;   // explicit, table indices [a, b)
    };

    struct Outputs {
        bool entropy_table = true;
        bool el_snapshots = false;
        bool subdiagonal = false;
        bool predictions = false;
        bool wave_compare = false;
        std::vector<double> el_times;
        int wave_resolution = 0; // 0 = chain length
    };

    std::string name;
    int n_sites = 0;
    Boundary boundary = Boundary::open;
    int seed = 0;
    int n_particles = -1; // -1 = half filling
    InitialState initial;
    Quench quench;
    TimeGrid times;
    Blocks blocks;
    Outputs outputs;

    // Site ranges [a, b) in entropy-table convention for the block request.
    std::vector<std::pair<int, int>> block_ranges() const;
};

struct ParseIssue {
    int line = 0; // 0 for issues without a single source line
    std::string message;
};

struct ParseResult {
    std::optional<ExperimentConfig> config;
    std::vector<ParseIssue> errors;

    bool ok() const { return config.has_value(); }
    std::string error_text() const;
};

// Flat `key = value` format with [section] headers and '#' comments.
// Collects every error (with line numbers) instead of stopping at the first.
// Overrides use dotted keys ("times.count=9", "delta" -> top level keys plain).
ParseResult parse_config(const std::string& text,
                         const std::vector<std::string>& overrides = {});

std::string serialize_config(const ExperimentConfig& cfg);

ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides = {});

} // namespace elink
