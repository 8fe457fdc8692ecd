// Run configuration, config-file parsing and subcommand drivers
//
// Config files hold one `key = value` per line; '#' starts a comment. The
// same keys are accepted as command-line overrides by the sbm tool.

#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbm/bath.hpp"
#include "sbm/criticality.hpp"
#include "sbm/dynamics.hpp"
#include "sbm/errors.hpp"
#include "sbm/oracle.hpp"
#include "sbm/renorm.hpp"

#ifndef SBM_VERSION
#define SBM_VERSION "0.0.0"
#endif

namespace sbm::cli {

inline constexpr const char* kVersion = SBM_VERSION;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Subcommand { Eta, Dynamics, Spectrum, Shiba, PhaseDiagram, OracleCheck, Table1 };
enum class Format { Csv, Json };

inline const std::map<std::string, Subcommand>& subcommand_names() {
    static const std::map<std::string, Subcommand> names{
        {"eta", Subcommand::Eta},           {"dynamics", Subcommand::Dynamics},
        {"spectrum", Subcommand::Spectrum}, {"shiba", Subcommand::Shiba},
        {"phase-diagram", Subcommand::PhaseDiagram}, {"oracle-check", Subcommand::OracleCheck},
        {"table1", Subcommand::Table1}};
    return names;
}

inline std::string to_string(Subcommand c) {
    for (const auto& [name, value] : subcommand_names())
        if (value == c) return name;
    return "unknown";
}

inline Subcommand parse_subcommand(const std::string& name) {
    const auto it = subcommand_names().find(name);
    if (it == subcommand_names().end()) throw ValidationError("command", "unknown subcommand '" + name + "'");
    return it->second;
}

struct RunConfig {
    Subcommand subcommand{Subcommand::Eta};
    BathInput bath{};
    std::optional<double> delta;
    std::optional<double> delta_over_omega_s;

    double t_max{0.0}; // 0: ten periods of the renormalized tunneling, 10/Δ_r
    std::size_t n_t{401};
    double omega_min{1e-4};
    double omega_max{0.999};
    std::size_t n_omega{400};
    double delta_min{1e-4};
    double delta_max{1e-1};
    std::size_t delta_per_decade{24};
    std::size_t n_modes{2000};

    std::string output; // empty: standard output
    Format format{Format::Csv};
    std::vector<std::string> warnings;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::string where(const std::string& origin, std::size_t line) {
    return line ? origin + ":" + std::to_string(line) : origin;
}

inline double parse_number(const std::string& key, const std::string& text, const std::string& at) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
        throw ValidationError(key, at + ": malformed number for '" + key + "': '" + text + "'");
    return v;
}

inline std::size_t parse_count(const std::string& key, const std::string& text, const std::string& at) {
    const double v = parse_number(key, text, at);
    if (v < 1.0 || v != std::floor(v) || v > 1e9)
        throw ValidationError(key, at + ": '" + key + "' must be a positive integer, got '" + text + "'");
    return std::size_t(v);
}

} // namespace detail

// Sets one key; `at` locates the value for error messages.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value, const std::string& at) {
    auto num = [&] { return detail::parse_number(key, value, at); };
    auto count = [&] { return detail::parse_count(key, value, at); };
    if (key == "command") cfg.subcommand = parse_subcommand(value);
    else if (key == "s") cfg.bath.s = num();
    else if (key == "alpha") cfg.bath.alpha = num();
    else if (key == "omega_s") cfg.bath.omega_s = num();
    else if (key == "delta") cfg.delta = num();
    else if (key == "delta_over_omega_s") cfg.delta_over_omega_s = num();
    else if (key == "t_max") cfg.t_max = num();
    else if (key == "n_t") cfg.n_t = count();
    else if (key == "omega_min") cfg.omega_min = num();
    else if (key == "omega_max") cfg.omega_max = num();
    else if (key == "n_omega") cfg.n_omega = count();
    else if (key == "delta_min") cfg.delta_min = num();
    else if (key == "delta_max") cfg.delta_max = num();
    else if (key == "delta_per_decade") cfg.delta_per_decade = count();
    else if (key == "n_modes") cfg.n_modes = count();
    else if (key == "output") cfg.output = value;
    else if (key == "format") {
        if (value == "csv") cfg.format = Format::Csv;
        else if (value == "json") cfg.format = Format::Json;
        else throw ValidationError(key, at + ": format must be csv or json, got '" + value + "'");
    } else {
        throw ValidationError(key, at + ": unknown key '" + key + "'");
    }
}

// Parses config text into `cfg` without checking required fields.
inline void parse_config_text(RunConfig& cfg, std::istream& in, const std::string& origin = "config") {
    std::map<std::string, std::size_t> seen;
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        const auto hash = raw.find('#');
        const std::string text = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        const std::string at = detail::where(origin, line);
        if (eq == std::string::npos) throw ValidationError("", at + ": expected 'key = value', got '" + text + "'");
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        if (key.empty()) throw ValidationError("", at + ": missing key");
        if (const auto it = seen.find(key); it != seen.end())
            cfg.warnings.push_back(at + ": duplicate key '" + key + "' (first set on line " +
                                   std::to_string(it->second) + "); the last value wins");
        seen[key] = line;
        apply_setting(cfg, key, value, at);
    }
}

inline bool needs_delta(Subcommand c) {
    return c != Subcommand::PhaseDiagram && c != Subcommand::Table1;
}

// Resolves Δ from Δ/ω_s when given and checks everything the subcommand needs.
inline void finalize(RunConfig& cfg) {
    const double omega_s = cfg.bath.omega_s.value_or(kDefaultOmegaS);
    if (cfg.delta_over_omega_s) {
        const double d = *cfg.delta_over_omega_s * omega_s;
        if (cfg.delta && std::abs(*cfg.delta - d) > 1e-12 * d)
            throw ValidationError("delta", "delta and delta_over_omega_s disagree");
        cfg.delta = d;
    }
    if (needs_delta(cfg.subcommand)) {
        if (!cfg.delta) throw ValidationError("delta", "delta required");
        validate(cfg.bath, SystemSpec{*cfg.delta});
    } else if (cfg.subcommand == Subcommand::PhaseDiagram) {
        validate(cfg.bath, SystemSpec{cfg.delta_min});
        validate(cfg.bath, SystemSpec{cfg.delta_max});
        if (!(cfg.delta_max > cfg.delta_min)) throw ValidationError("delta_max", "delta_max must exceed delta_min");
    }
    if (cfg.t_max < 0.0) throw ValidationError("t_max", "t_max must be non-negative");
    if (cfg.n_t < 2) throw ValidationError("n_t", "n_t must be at least 2");
    if (!(cfg.omega_min > 0.0 && cfg.omega_max > cfg.omega_min && cfg.omega_max < kOmegaC))
        throw ValidationError("omega_min", "omega grid must satisfy 0 < omega_min < omega_max < 1");
    if (cfg.n_omega < 2) throw ValidationError("n_omega", "n_omega must be at least 2");
    if (cfg.n_modes < 2) throw ValidationError("n_modes", "n_modes must be at least 2");
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    RunConfig cfg;
    parse_config_text(cfg, in, path);
    finalize(cfg);
    return cfg;
}

// ---------------------------------------------------------------------------
// Output

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes; // extra header lines
};

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::scientific << std::setprecision(8) << v;
    return os.str();
}

inline std::vector<std::pair<std::string, std::string>> parameter_list(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> p;
    p.emplace_back("s", format_number(cfg.bath.s));
    p.emplace_back("alpha", format_number(cfg.bath.alpha));
    p.emplace_back("omega_s", format_number(cfg.bath.omega_s.value_or(kDefaultOmegaS)));
    p.emplace_back("omega_c", format_number(kOmegaC));
    if (cfg.delta) p.emplace_back("delta", format_number(*cfg.delta));
    switch (cfg.subcommand) {
    case Subcommand::Dynamics:
        p.emplace_back("t_max", format_number(cfg.t_max));
        p.emplace_back("n_t", std::to_string(cfg.n_t));
        break;
    case Subcommand::Spectrum:
        p.emplace_back("omega_min", format_number(cfg.omega_min));
        p.emplace_back("omega_max", format_number(cfg.omega_max));
        p.emplace_back("n_omega", std::to_string(cfg.n_omega));
        break;
    case Subcommand::PhaseDiagram:
        p.emplace_back("delta_min", format_number(cfg.delta_min));
        p.emplace_back("delta_max", format_number(cfg.delta_max));
        p.emplace_back("delta_per_decade", std::to_string(cfg.delta_per_decade));
        break;
    case Subcommand::OracleCheck:
        p.emplace_back("t_max", format_number(cfg.t_max));
        p.emplace_back("n_t", std::to_string(cfg.n_t));
        p.emplace_back("n_modes", std::to_string(cfg.n_modes));
        break;
    default: break;
    }
    return p;
}

inline void write_csv(std::ostream& os, const RunConfig& cfg, const Table& t) {
    os << "# sbm " << kVersion << " " << to_string(cfg.subcommand) << "\n#";
    for (const auto& [k, v] : parameter_list(cfg)) os << ' ' << k << '=' << v;
    os << '\n';
    for (const auto& n : t.notes) os << "# " << n << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
}

inline nlohmann::json to_json(const RunConfig& cfg, const Table& t) {
    nlohmann::json j;
    j["tool"] = "sbm";
    j["version"] = kVersion;
    j["subcommand"] = to_string(cfg.subcommand);
    for (const auto& [k, v] : parameter_list(cfg)) j["parameters"][k] = v;
    j["columns"] = t.columns;
    j["notes"] = t.notes;
    auto rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        auto r = nlohmann::json::array();
        for (double v : row) r.push_back(std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr));
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j;
}

// Writes to `path`, or to `fallback` when path is empty.
template <class Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    write(out);
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline void emit_table(const RunConfig& cfg, const Table& t, std::ostream& fallback) {
    emit(cfg.output, fallback, [&](std::ostream& os) {
        if (cfg.format == Format::Json) os << std::setw(2) << to_json(cfg, t) << '\n';
        else write_csv(os, cfg, t);
    });
}

// ---------------------------------------------------------------------------
// Subcommands

inline std::pair<BathSpec, SystemSpec> specs(const RunConfig& cfg) {
    return validate(cfg.bath, SystemSpec{cfg.delta.value_or(0.5)});
}

inline RenormResult delocalized(const BathSpec& bath, const SystemSpec& sys) {
    const auto r = solve_eta(bath, sys);
    if (r.phase == Phase::Localized)
        throw DomainError("parameters lie in the localized phase (eta = 0); dynamics are not defined there");
    return r;
}

inline double nan() { return std::numeric_limits<double>::quiet_NaN(); }

inline Table run_eta(const RunConfig& cfg) {
    const auto [bath, sys] = specs(cfg);
    const auto r = solve_eta(bath, sys);
    Table t;
    t.columns = {"eta", "delta_r", "delocalized", "iterations", "residual", "alpha_l"};
    double al = nan();
    try {
        al = alpha_l(bath.s, bath.omega_s, sys.delta);
    } catch (const SearchError& e) {
        t.notes.push_back(std::string("alpha_l unavailable: ") + e.what());
    }
    t.notes.push_back(std::string("phase=") + to_string(r.phase));
    t.rows.push_back({r.eta, r.delta_r, r.phase == Phase::Delocalized ? 1.0 : 0.0, double(r.iterations),
                      r.residual, al});
    return t;
}

inline Table run_dynamics(const RunConfig& cfg, std::ostream& log) {
    const auto [bath, sys] = specs(cfg);
    const auto r = delocalized(bath, sys);
    const auto dyn = analyze(bath, sys, r);
    const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 10.0 / r.delta_r;
    const CorrelationTransform transform(bath, r, t_max);

    Table t;
    t.columns = {"t", "P", "C"};
    t.notes.push_back(std::string("coherence=") + to_string(dyn.coherence) +
                      " omega0=" + (dyn.omega0 ? format_number(*dyn.omega0) : std::string("none")) +
                      " gamma=" + format_number(dyn.gamma_decay) + " delta_r=" + format_number(r.delta_r) +
                      " t_max(resolved)=" + format_number(t_max));
    std::size_t unconverged = 0;
    double worst = 0.0;
    for (double time : roots::linspace(0.0, t_max, cfg.n_t)) {
        const auto c = transform(time);
        if (!c.converged) ++unconverged;
        worst = std::max(worst, c.error);
        const double p = dyn.omega0 ? p_of_t(time, dyn, bath) : c.value;
        t.rows.push_back({time, p, c.value});
    }
    t.notes.push_back("C(t) max error estimate=" + format_number(worst));
    if (unconverged) {
        const std::string msg = "warning: C(t) error estimate above tolerance at " + std::to_string(unconverged) + " samples";
        t.notes.push_back(msg);
        log << msg << '\n';
    }
    return t;
}

inline Table run_spectrum(const RunConfig& cfg) {
    const auto [bath, sys] = specs(cfg);
    const auto r = delocalized(bath, sys);
    Table t;
    t.columns = {"omega", "C", "chi_im", "S", "R", "gamma"};
    t.notes.push_back("S(0+) limit=" + format_number(s_zero_limit(bath, r)) + " delta_r=" + format_number(r.delta_r));
    for (double w : roots::logspace(cfg.omega_min, cfg.omega_max, cfg.n_omega)) {
        const double c = correlation_spectrum(w, bath, r);
        t.rows.push_back({w, c, chi_im(w, bath, r), bath.alpha > 0.0 ? s_of_omega(w, bath, r) : nan(),
                          r_quadrature(w, bath, r.delta_r), gamma_of(w, bath, r.delta_r)});
    }
    return t;
}

struct ShibaRow {
    double eta, delta_r, chi0, limit, ratio, sum;
};

inline ShibaRow shiba_row(const BathSpec& bath, const SystemSpec& sys) {
    const auto r = delocalized(bath, sys);
    ShibaRow row{};
    row.eta = r.eta;
    row.delta_r = r.delta_r;
    row.chi0 = chi0(bath, r);
    row.limit = bath.alpha > 0.0 ? c_over_j_zero_limit(bath, r) : nan();
    row.ratio = bath.alpha > 0.0 ? row.limit / (4.0 * row.chi0 * row.chi0) : nan();
    row.sum = sum_rule(bath, r);
    return row;
}

inline Table run_shiba(const RunConfig& cfg) {
    const auto [bath, sys] = specs(cfg);
    const auto row = shiba_row(bath, sys);
    Table t;
    t.columns = {"eta", "delta_r", "chi0", "c_over_j_limit", "shiba_ratio", "sum_rule"};
    t.rows.push_back({row.eta, row.delta_r, row.chi0, row.limit, row.ratio, row.sum});
    return t;
}

// (s, ω_s, Δ/ω_s, α) for the reference Shiba/sum-rule table.
inline const std::vector<std::array<double, 4>>& table1_rows() {
    static const std::vector<std::array<double, 4>> rows{
        {1.0, 1.0, 0.01, 0.1}, {1.0, 1.0, 0.05, 0.1}, {1.0, 1.0, 0.1, 0.1},  {1.0, 1.0, 0.2, 0.1},
        {1.0, 1.0, 0.1, 0.3},  {1.0, 1.0, 0.1, 0.4},  {1.0, 1.0, 0.2, 0.5},  {0.9, 1.0, 0.1, 0.1},
        {0.9, 1.0, 0.05, 0.1}, {0.9, 1.0, 0.2, 0.15}, {0.8, 1.0, 0.05, 0.1}, {0.8, 1.0, 0.1, 0.1},
        {0.8, 0.1, 1.0, 0.1},  {0.6, 1.0, 0.1, 0.01}, {0.5, 1.0, 0.2, 0.05}, {0.5, 0.1, 1.0, 0.1}};
    return rows;
}

inline Table run_table1() {
    Table t;
    t.columns = {"s", "omega_s", "delta_over_omega_s", "alpha", "chi0", "c_over_j_limit", "shiba_ratio", "C0"};
    for (const auto& [s, ws, ratio, alpha] : table1_rows()) {
        const BathSpec bath{s, alpha, ws};
        const SystemSpec sys{ratio * ws};
        const auto row = shiba_row(bath, sys);
        t.rows.push_back({s, ws, ratio, alpha, row.chi0, row.limit, row.ratio, row.sum});
    }
    return t;
}

inline nlohmann::json phase_json(const RunConfig& cfg, const PhaseDiagram& pd) {
    nlohmann::json j;
    j["tool"] = "sbm";
    j["version"] = kVersion;
    j["subcommand"] = "phase-diagram";
    for (const auto& [k, v] : parameter_list(cfg)) j["parameters"][k] = v;
    for (const auto& f : pd.fits) {
        auto& e = j["fits"][f.boundary];
        e["exponent"] = std::isfinite(f.exponent) ? nlohmann::json(f.exponent) : nlohmann::json(nullptr);
        e["prefactor"] = std::isfinite(f.prefactor) ? nlohmann::json(f.prefactor) : nlohmann::json(nullptr);
        e["residual"] = std::isfinite(f.residual) ? nlohmann::json(f.residual) : nlohmann::json(nullptr);
        e["points"] = f.points;
        e["expected_exponent"] = 1.0 - pd.s;
    }
    auto failures = nlohmann::json::array();
    for (const auto& p : pd.points)
        for (const auto& f : p.failures) failures.push_back({{"delta", p.delta}, {"error", f}});
    j["failures"] = failures;
    return j;
}

inline int run_phase_diagram(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const auto [bath, sys] = specs(cfg);
    (void)sys;
    const auto grid = delta_grid(cfg.delta_min, cfg.delta_max, cfg.delta_per_decade);
    const auto pd = phase_diagram(bath.s, bath.omega_s, grid);

    Table t;
    t.columns = {"delta", "alpha_l", "alpha_c", "alpha_c_star"};
    std::size_t failed = 0;
    for (const auto& p : pd.points) {
        t.rows.push_back({p.delta, p.alpha_l.value_or(nan()), p.alpha_c.value_or(nan()), p.alpha_c_star.value_or(nan())});
        for (const auto& f : p.failures) {
            ++failed;
            t.notes.push_back("failure delta=" + format_number(p.delta) + " " + f);
        }
    }
    for (const auto& f : pd.fits)
        t.notes.push_back("fit " + f.boundary + " exponent=" + format_number(f.exponent) +
                          " residual=" + format_number(f.residual) + " points=" + std::to_string(f.points));

    const auto sidecar = phase_json(cfg, pd);
    if (cfg.format == Format::Json) {
        nlohmann::json j = to_json(cfg, t);
        j["fits"] = sidecar["fits"];
        j["failures"] = sidecar["failures"];
        emit(cfg.output, out, [&](std::ostream& os) { os << std::setw(2) << j << '\n'; });
    } else {
        emit_table(cfg, t, out);
        if (!cfg.output.empty())
            emit(cfg.output + ".json", out, [&](std::ostream& os) { os << std::setw(2) << sidecar << '\n'; });
    }
    if (failed) {
        log << "phase-diagram: " << failed << " boundary evaluations failed; see the failure manifest\n";
        return 3;
    }
    return 0;
}

struct OracleReport {
    double completeness{0.0};
    double max_level_norm_error{0.0};
    double sup_pole{0.0};
    double sup_spectral{0.0};
    std::size_t levels{0};
};

inline Table run_oracle_check(const RunConfig& cfg, OracleReport* report = nullptr) {
    const auto [bath, sys] = specs(cfg);
    const auto r = delocalized(bath, sys);
    const auto dyn = analyze(bath, sys, r);
    const double t_max = cfg.t_max > 0.0 ? cfg.t_max : 10.0 / r.delta_r;
    const auto db = discretize(bath, r, cfg.n_modes);
    const auto levels = solve_levels(db);
    const CorrelationTransform transform(bath, r, t_max);

    OracleReport rep;
    rep.levels = levels.size();
    rep.completeness = completeness(levels);
    for (const auto& l : levels) {
        double n = l.x * l.x;
        for (double y : l.y) n += y * y;
        rep.max_level_norm_error = std::max(rep.max_level_norm_error, std::abs(n - 1.0));
    }
    Table t;
    t.columns = {"t", "P_discrete", "P_pole", "C"};
    for (double time : roots::linspace(0.0, t_max, cfg.n_t)) {
        const double pd = p_of_t_discrete(levels, r, time);
        const double pp = p_of_t(time, dyn, bath);
        const double c = transform(time).value;
        rep.sup_pole = std::max(rep.sup_pole, std::abs(pd - pp));
        rep.sup_spectral = std::max(rep.sup_spectral, std::abs(pd - c));
        t.rows.push_back({time, pd, pp, c});
    }
    t.notes.push_back("t_max(resolved)=" + format_number(t_max) + " delta_r=" + format_number(r.delta_r));
    t.notes.push_back("levels=" + std::to_string(rep.levels) + " completeness=" + format_number(rep.completeness) +
                      " max_level_norm_error=" + format_number(rep.max_level_norm_error));
    t.notes.push_back("sup|P_discrete-P_pole|=" + format_number(rep.sup_pole) +
                      " sup|P_discrete-C|=" + format_number(rep.sup_spectral));
    if (report) *report = rep;
    return t;
}

// Executes the configured subcommand. Returns the process exit status
// (0 success, 2 validation, 3 convergence, 4 I/O); errors are reported on `log`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    try {
        for (const auto& w : cfg.warnings) log << "warning: " << w << '\n';
        switch (cfg.subcommand) {
        case Subcommand::Eta: emit_table(cfg, run_eta(cfg), out); break;
        case Subcommand::Dynamics: emit_table(cfg, run_dynamics(cfg, log), out); break;
        case Subcommand::Spectrum: emit_table(cfg, run_spectrum(cfg), out); break;
        case Subcommand::Shiba: emit_table(cfg, run_shiba(cfg), out); break;
        case Subcommand::PhaseDiagram: return run_phase_diagram(cfg, out, log);
        case Subcommand::OracleCheck: emit_table(cfg, run_oracle_check(cfg), out); break;
        case Subcommand::Table1: emit_table(cfg, run_table1(), out); break;
        }
        return 0;
    } catch (const ValidationError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        log << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        log << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::runtime_error& e) { // convergence, search, accuracy
        log << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace sbm::cli
