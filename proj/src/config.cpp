#include "elink/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "elink/csvio.hpp"

namespace elink {

std::vector<double> TimeGrid::times() const {
    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(std::max(count, 0)));
    if (count == 1) {
        ts.push_back(start);
        return ts;
    }
    for (int k = 0; k < count; ++k)
        ts.push_back(start + k * (stop - start) / (count - 1));
    return ts;
}

std::vector<std::pair<int, int>> ExperimentConfig::block_ranges() const {
    std::vector<std::pair<int, int>> out;
    switch (blocks.kind) {
    case Blocks::Kind::all_contiguous:
        for (int a = 1; a <= n_sites; ++a)
            for (int b = a + 1; b <= n_sites + 1; ++b) out.emplace_back(a, b);
        break;
    case Blocks::Kind::lateral:
        for (int len : blocks.sizes) out.emplace_back(1, len + 1);
        break;
    case Blocks::Kind::central:
        for (int len : blocks.sizes) {
            int a = n_sites / 2 - len / 2;
            out.emplace_back(a + 1, a + len + 1);
        }
        break;
    case Blocks::Kind::explicit_ranges:
        out = blocks.ranges;
        break;
    }
    return out;
}

std::string ParseResult::error_text() const {
    std::ostringstream ss;
    for (const ParseIssue& issue : errors) {
        if (issue.line > 0)
            ss << "line " << issue.line << ": ";
        ss << issue.message << '\n';
    }
    return ss.str();
}

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"", {"name", "N", "boundary", "seed", "particles"}},
    {"initial_state", {"kind", "delta", "h", "g"}},
    {"quench", {"kind", "g"}},
    {"times", {"start", "stop", "count"}},
    {"blocks", {"kind", "sizes", "ranges"}},
    {"outputs",
     {"entropy_table", "el_snapshots", "subdiagonal", "predictions", "wave_compare", "el_times",
      "wave_resolution"}},
};

class Builder {
public:
    explicit Builder(std::vector<ParseIssue>& errors) : errors_(errors) {}

    void add_entry(Entry entry) {
        auto section_it = kKnownKeys.find(entry.section);
        if (section_it == kKnownKeys.end()) {
            fail(entry.line, "unknown section [" + entry.section + "]");
            return;
        }
        if (!section_it->second.count(entry.key)) {
            fail(entry.line, "unknown key '" + qualified(entry) + "'");
            return;
        }
        for (const Entry& prior : entries_) {
            if (prior.section == entry.section && prior.key == entry.key) {
                fail(entry.line, "duplicate key '" + qualified(entry) + "', first set on line " +
                                     std::to_string(prior.line));
                return;
            }
        }
        entries_.push_back(std::move(entry));
    }

    void add_override(const std::string& text) {
        auto eq = text.find('=');
        if (eq == std::string::npos) {
            fail(0, "override '" + text + "' is not key=value");
            return;
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        std::string section;
        auto dot = key.find('.');
        if (dot != std::string::npos) {
            section = key.substr(0, dot);
            key = key.substr(dot + 1);
        }
        auto section_it = kKnownKeys.find(section);
        if (section_it == kKnownKeys.end() || !section_it->second.count(key)) {
            fail(0, "override targets unknown key '" + text + "'");
            return;
        }
        std::erase_if(entries_, [&](const Entry& e) {
            return e.section == section && e.key == key;
        });
        entries_.push_back({section, key, value, 0});
    }

    const Entry* find(const std::string& section, const std::string& key) const {
        for (const Entry& e : entries_)
            if (e.section == section && e.key == key) return &e;
        return nullptr;
    }

    // --- typed getters; failures are recorded and a default returned ---

    std::string get_string(const std::string& section, const std::string& key, bool required,
                           const std::string& fallback = {}) {
        const Entry* e = find(section, key);
        if (!e) {
            if (required) fail(0, "missing required key '" + qualified(section, key) + "'");
            return fallback;
        }
        if (e->value.empty()) fail(e->line, "empty value for '" + qualified(*e) + "'");
        return e->value;
    }

    int get_int(const std::string& section, const std::string& key, bool required,
                int fallback = 0) {
        const Entry* e = find(section, key);
        if (!e) {
            if (required) fail(0, "missing required key '" + qualified(section, key) + "'");
            return fallback;
        }
        int v = fallback;
        if (!parse_int(e->value, v))
            fail(e->line, "expected integer for '" + qualified(*e) + "', got '" + e->value + "'");
        return v;
    }

    double get_double(const std::string& section, const std::string& key, bool required,
                      double fallback = 0.0) {
        const Entry* e = find(section, key);
        if (!e) {
            if (required) fail(0, "missing required key '" + qualified(section, key) + "'");
            return fallback;
        }
        double v = fallback;
        if (!parse_double(e->value, v))
            fail(e->line, "expected number for '" + qualified(*e) + "', got '" + e->value + "'");
        return v;
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) {
        const Entry* e = find(section, key);
        if (!e) return fallback;
        if (e->value == "true") return true;
        if (e->value == "false") return false;
        fail(e->line, "expected true/false for '" + qualified(*e) + "', got '" + e->value + "'");
        return fallback;
    }

    std::vector<double> get_double_list(const std::string& section, const std::string& key) {
        const Entry* e = find(section, key);
        std::vector<double> out;
        if (!e) return out;
        for (const std::string& item : split(e->value)) {
            double v = 0.0;
            if (!parse_double(item, v)) {
                fail(e->line, "expected number list for '" + qualified(*e) + "'");
                return {};
            }
            out.push_back(v);
        }
        return out;
    }

    std::vector<int> get_int_list(const std::string& section, const std::string& key) {
        const Entry* e = find(section, key);
        std::vector<int> out;
        if (!e) return out;
        for (const std::string& item : split(e->value)) {
            int v = 0;
            if (!parse_int(item, v)) {
                fail(e->line, "expected integer list for '" + qualified(*e) + "'");
                return {};
            }
            out.push_back(v);
        }
        return out;
    }

    std::vector<std::pair<int, int>> get_ranges(const std::string& section,
                                                const std::string& key) {
        const Entry* e = find(section, key);
        std::vector<std::pair<int, int>> out;
        if (!e) return out;
        for (const std::string& item : split(e->value)) {
            auto colon = item.find(':');
            int a = 0, b = 0;
            if (colon == std::string::npos || !parse_int(trim(item.substr(0, colon)), a) ||
                !parse_int(trim(item.substr(colon + 1)), b)) {
                fail(e->line, "expected a:b range list for '" + qualified(*e) + "'");
                return {};
            }
            out.emplace_back(a, b);
        }
        return out;
    }

    int line_of(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        return e ? e->line : 0;
    }

    void fail(int line, const std::string& message) { errors_.push_back({line, message}); }

private:
    static std::string qualified(const Entry& e) { return qualified(e.section, e.key); }
    static std::string qualified(const std::string& section, const std::string& key) {
        return section.empty() ? key : section + "." + key;
    }

    static std::vector<std::string> split(const std::string& value) {
        std::vector<std::string> out;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(trim(item));
        return out;
    }

    static bool parse_int(const std::string& s, int& out) {
        auto res = std::from_chars(s.data(), s.data() + s.size(), out);
        return res.ec == std::errc() && res.ptr == s.data() + s.size();
    }

    static bool parse_double(const std::string& s, double& out) {
        auto res = std::from_chars(s.data(), s.data() + s.size(), out);
        return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
    }

    std::vector<Entry> entries_;
    std::vector<ParseIssue>& errors_;
};

} // namespace

ParseResult parse_config(const std::string& text, const std::vector<std::string>& overrides) {
    ParseResult result;
    Builder b(result.errors);

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                b.fail(line_no, "malformed section header '" + line + "'");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!kKnownKeys.count(section))
                b.fail(line_no, "unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            b.fail(line_no, "expected 'key = value', got '" + line + "'");
            continue;
        }
        Entry entry;
        entry.section = section;
        entry.key = trim(line.substr(0, eq));
        entry.value = trim(line.substr(eq + 1));
        entry.line = line_no;
        if (entry.key.empty()) {
            b.fail(line_no, "missing key before '='");
            continue;
        }
        b.add_entry(std::move(entry));
    }
    for (const std::string& ov : overrides) b.add_override(ov);

    ExperimentConfig cfg;
    cfg.name = b.get_string("", "name", true);
    cfg.n_sites = b.get_int("", "N", true);
    cfg.seed = b.get_int("", "seed", false, 0);
    cfg.n_particles = b.get_int("", "particles", false, -1);

    std::string boundary = b.get_string("", "boundary", true, "open");
    if (boundary == "open")
        cfg.boundary = Boundary::open;
    else if (boundary == "periodic")
        cfg.boundary = Boundary::periodic;
    else if (!boundary.empty())
        b.fail(b.line_of("", "boundary"), "boundary must be open or periodic");

    using Init = ExperimentConfig::InitialState::Kind;
    std::string init_kind = b.get_string("initial_state", "kind", true);
    const std::map<std::string, Init> init_kinds = {{"homogeneous", Init::homogeneous},
                                                    {"dimer", Init::dimer},
                                                    {"rainbow", Init::rainbow},
                                                    {"bridge", Init::bridge},
                                                    {"custom", Init::custom}};
    if (auto it = init_kinds.find(init_kind); it != init_kinds.end())
        cfg.initial.kind = it->second;
    else if (!init_kind.empty())
        b.fail(b.line_of("initial_state", "kind"), "unknown initial state '" + init_kind + "'");
    cfg.initial.delta = b.get_double("initial_state", "delta", cfg.initial.kind == Init::dimer);
    cfg.initial.h = b.get_double("initial_state", "h", cfg.initial.kind == Init::rainbow);
    cfg.initial.g = b.get_double_list("initial_state", "g");

    using Quench = ExperimentConfig::Quench::Kind;
    std::string quench_kind = b.get_string("quench", "kind", false, "h0");
    const std::map<std::string, Quench> quench_kinds = {
        {"h0", Quench::h0}, {"custom", Quench::custom}, {"none", Quench::none}};
    if (auto it = quench_kinds.find(quench_kind); it != quench_kinds.end())
        cfg.quench.kind = it->second;
    else
        b.fail(b.line_of("quench", "kind"), "unknown quench '" + quench_kind + "'");
    cfg.quench.g = b.get_double_list("quench", "g");

    cfg.times.start = b.get_double("times", "start", true);
    cfg.times.stop = b.get_double("times", "stop", true);
    cfg.times.count = b.get_int("times", "count", true, 1);

    using Blocks = ExperimentConfig::Blocks::Kind;
    std::string blocks_kind = b.get_string("blocks", "kind", true);
    const std::map<std::string, Blocks> block_kinds = {{"all_contiguous", Blocks::all_contiguous},
                                                       {"lateral", Blocks::lateral},
                                                       {"central", Blocks::central},
                                                       {"explicit", Blocks::explicit_ranges}};
    if (auto it = block_kinds.find(blocks_kind); it != block_kinds.end())
        cfg.blocks.kind = it->second;
    else if (!blocks_kind.empty())
        b.fail(b.line_of("blocks", "kind"), "unknown blocks kind '" + blocks_kind + "'");
    cfg.blocks.sizes = b.get_int_list("blocks", "sizes");
    cfg.blocks.ranges = b.get_ranges("blocks", "ranges");

    cfg.outputs.entropy_table = b.get_bool("outputs", "entropy_table", true);
    cfg.outputs.el_snapshots = b.get_bool("outputs", "el_snapshots", false);
    cfg.outputs.subdiagonal = b.get_bool("outputs", "subdiagonal", false);
    cfg.outputs.predictions = b.get_bool("outputs", "predictions", false);
    cfg.outputs.wave_compare = b.get_bool("outputs", "wave_compare", false);
    cfg.outputs.el_times = b.get_double_list("outputs", "el_times");
    cfg.outputs.wave_resolution = b.get_int("outputs", "wave_resolution", false, 0);

    // ----- cross-field validation (semantic constraints) -----
    if (!result.errors.empty()) return result;

    auto semantic = [&](const std::string& section, const std::string& key,
                        const std::string& message) {
        b.fail(b.line_of(section, key), message);
    };

    if (cfg.n_sites < 2) semantic("", "N", "N must be at least 2");
    if (cfg.n_particles != -1 && (cfg.n_particles < 0 || cfg.n_particles > cfg.n_sites))
        semantic("", "particles", "particles must lie in [0, N]");

    switch (cfg.initial.kind) {
    case Init::homogeneous:
        break;
    case Init::dimer:
        if (std::abs(cfg.initial.delta) > 1.0)
            semantic("initial_state", "delta", "dimer requires |delta| <= 1");
        if (cfg.n_sites % 2 != 0) semantic("", "N", "dimer chain requires even N");
        break;
    case Init::rainbow:
        if (cfg.initial.h <= 0.0) semantic("initial_state", "h", "rainbow requires h > 0");
        if (cfg.n_sites % 2 != 0) semantic("", "N", "rainbow chain requires even N");
        if (cfg.boundary != Boundary::open)
            semantic("", "boundary", "rainbow chain requires open boundaries");
        break;
    case Init::bridge:
        if (cfg.n_sites % 4 != 0) semantic("", "N", "bridge state requires N divisible by 4");
        if (cfg.boundary != Boundary::periodic)
            semantic("", "boundary", "bridge state requires periodic boundaries");
        if (cfg.n_particles != -1 && cfg.n_particles != cfg.n_sites / 2)
            semantic("", "particles", "bridge state is half filled");
        break;
    case Init::custom: {
        int expected = cfg.boundary == Boundary::open ? cfg.n_sites - 1 : cfg.n_sites;
        if (static_cast<int>(cfg.initial.g.size()) != expected)
            semantic("initial_state", "g",
                     "custom couplings need " + std::to_string(expected) + " values");
        break;
    }
    }

    if (cfg.quench.kind == Quench::custom) {
        int expected = cfg.boundary == Boundary::open ? cfg.n_sites - 1 : cfg.n_sites;
        if (static_cast<int>(cfg.quench.g.size()) != expected)
            semantic("quench", "g", "custom couplings need " + std::to_string(expected) + " values");
    }

    if (cfg.times.count < 1) semantic("times", "count", "count must be at least 1");
    if (cfg.times.stop < cfg.times.start) semantic("times", "stop", "stop must be >= start");
    if (cfg.times.count > 1 && cfg.times.stop == cfg.times.start)
        semantic("times", "count", "count > 1 needs stop > start");
    if (cfg.times.start < 0.0) semantic("times", "start", "start must be >= 0");

    switch (cfg.blocks.kind) {
    case Blocks::all_contiguous:
        break;
    case Blocks::lateral:
    case Blocks::central:
        if (cfg.blocks.sizes.empty()) semantic("blocks", "sizes", "sizes list is required");
        for (int len : cfg.blocks.sizes) {
            if (len < 1 || len > cfg.n_sites)
                semantic("blocks", "sizes", "block size " + std::to_string(len) + " out of range");
            else if (cfg.blocks.kind == Blocks::central && (len % 2 != 0 || cfg.n_sites % 2 != 0))
                semantic("blocks", "sizes", "central blocks need even N and even sizes");
        }
        break;
    case Blocks::explicit_ranges:
        if (cfg.blocks.ranges.empty()) semantic("blocks", "ranges", "ranges list is required");
        for (auto [a, bnd] : cfg.blocks.ranges)
            if (a < 1 || bnd <= a || bnd > cfg.n_sites + 1)
                semantic("blocks", "ranges", "range " + std::to_string(a) + ":" +
                                                 std::to_string(bnd) + " out of [1, N+1]");
        break;
    }

    if (cfg.outputs.el_snapshots || cfg.outputs.wave_compare) {
        if (cfg.outputs.el_times.empty())
            semantic("outputs", "el_times", "el_snapshots/wave_compare need el_times");
        auto grid = cfg.times.times();
        for (double t : cfg.outputs.el_times) {
            bool on_grid = false;
            for (double g : grid)
                if (std::abs(g - t) < 1e-9) on_grid = true;
            if (!on_grid)
                semantic("outputs", "el_times",
                         "el_time " + io::format_double(t) + " is not on the time grid");
        }
    }
    if (cfg.outputs.wave_compare) {
        if (!cfg.outputs.el_snapshots)
            semantic("outputs", "wave_compare", "wave_compare requires el_snapshots");
        if (cfg.outputs.el_times.size() < 2 ||
            std::abs(cfg.outputs.el_times.front() - cfg.times.start) > 1e-9)
            semantic("outputs", "el_times",
                     "wave_compare needs el_times starting at the grid start plus a later time");
        int m = cfg.outputs.wave_resolution;
        if (m != 0 && m < cfg.n_sites)
            semantic("outputs", "wave_resolution", "wave resolution must be >= N");
    }
    if (cfg.outputs.predictions || cfg.outputs.wave_compare) {
        if (cfg.quench.kind != Quench::h0)
            semantic("quench", "kind", "predictions assume a quench to the homogeneous chain");
        if (cfg.initial.kind != Init::dimer && cfg.initial.kind != Init::rainbow &&
            cfg.initial.kind != Init::bridge)
            semantic("initial_state", "kind",
                     "predictions cover dimer, rainbow and bridge initial states");
    }

    if (!result.errors.empty()) return result;
    result.config = std::move(cfg);
    return result;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "name = " << cfg.name << '\n';
    out << "N = " << cfg.n_sites << '\n';
    out << "boundary = " << to_string(cfg.boundary) << '\n';
    out << "seed = " << cfg.seed << '\n';
    if (cfg.n_particles != -1) out << "particles = " << cfg.n_particles << '\n';

    using Init = ExperimentConfig::InitialState::Kind;
    out << "\n[initial_state]\n";
    switch (cfg.initial.kind) {
    case Init::homogeneous:
        out << "kind = homogeneous\n";
        break;
    case Init::dimer:
        out << "kind = dimer\n";
        out << "delta = " << io::format_double(cfg.initial.delta) << '\n';
        break;
    case Init::rainbow:
        out << "kind = rainbow\n";
        out << "h = " << io::format_double(cfg.initial.h) << '\n';
        break;
    case Init::bridge:
        out << "kind = bridge\n";
        break;
    case Init::custom: {
        out << "kind = custom\n";
        out << "g = ";
        for (std::size_t k = 0; k < cfg.initial.g.size(); ++k) {
            if (k) out << ',';
            out << io::format_double(cfg.initial.g[k]);
        }
        out << '\n';
        break;
    }
    }

    using Quench = ExperimentConfig::Quench::Kind;
    out << "\n[quench]\n";
    if (cfg.quench.kind == Quench::h0) out << "kind = h0\n";
    if (cfg.quench.kind == Quench::none) out << "kind = none\n";
    if (cfg.quench.kind == Quench::custom) {
        out << "kind = custom\n";
        out << "g = ";
        for (std::size_t k = 0; k < cfg.quench.g.size(); ++k) {
            if (k) out << ',';
            out << io::format_double(cfg.quench.g[k]);
        }
        out << '\n';
    }

    out << "\n[times]\n";
    out << "start = " << io::format_double(cfg.times.start) << '\n';
    out << "stop = " << io::format_double(cfg.times.stop) << '\n';
    out << "count = " << cfg.times.count << '\n';

    using Blocks = ExperimentConfig::Blocks::Kind;
    out << "\n[blocks]\n";
    switch (cfg.blocks.kind) {
    case Blocks::all_contiguous:
        out << "kind = all_contiguous\n";
        break;
    case Blocks::lateral:
    case Blocks::central: {
        out << "kind = " << (cfg.blocks.kind == Blocks::lateral ? "lateral" : "central") << '\n';
        out << "sizes = ";
        for (std::size_t k = 0; k < cfg.blocks.sizes.size(); ++k) {
            if (k) out << ',';
            out << cfg.blocks.sizes[k];
        }
        out << '\n';
        break;
    }
    case Blocks::explicit_ranges: {
        out << "kind = explicit\n";
        out << "ranges = ";
        for (std::size_t k = 0; k < cfg.blocks.ranges.size(); ++k) {
            if (k) out << ',';
            out << cfg.blocks.ranges[k].first << ':' << cfg.blocks.ranges[k].second;
        }
        out << '\n';
        break;
    }
    }

    out << "\n[outputs]\n";
    out << "entropy_table = " << (cfg.outputs.entropy_table ? "true" : "false") << '\n';
    out << "el_snapshots = " << (cfg.outputs.el_snapshots ? "true" : "false") << '\n';
    out << "subdiagonal = " << (cfg.outputs.subdiagonal ? "true" : "false") << '\n';
    out << "predictions = " << (cfg.outputs.predictions ? "true" : "false") << '\n';
    out << "wave_compare = " << (cfg.outputs.wave_compare ? "true" : "false") << '\n';
    if (!cfg.outputs.el_times.empty()) {
        out << "el_times = ";
        for (std::size_t k = 0; k < cfg.outputs.el_times.size(); ++k) {
            if (k) out << ',';
            out << io::format_double(cfg.outputs.el_times[k]);
        }
        out << '\n';
    }
    if (cfg.outputs.wave_resolution != 0)
        out << "wave_resolution = " << cfg.outputs.wave_resolution << '\n';
    return out.str();
}

ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    ParseResult result = parse_config(buffer.str(), overrides);
    if (!result.ok()) throw ValidationError("config errors:\n" + result.error_text());
    return *result.config;
}

} // namespace elink
