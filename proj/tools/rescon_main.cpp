#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rescon/convert.hpp"
#include "rescon/experiments.hpp"
#include "rescon/functionals.hpp"
#include "rescon/resonance.hpp"
#include "rescon/svg.hpp"

using nlohmann::json;
using namespace rescon;

namespace {

// ---------------------------------------------------------------------------
// Config plumbing

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open config file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("config is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) {
        throw InputError("config root must be a JSON object");
    }
    return j;
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, _] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw InputError("unknown key \"" + key + "\" in " + where);
        }
    }
}

std::vector<double> parse_reals(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
        throw InputError(where + " must be a non-empty array of numbers");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) {
            throw InputError(where + " must contain only numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::int64_t> parse_ints(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
        throw InputError(where + " must be a non-empty array of integers");
    }
    std::vector<std::int64_t> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_integer()) {
            throw InputError(where + " must contain only integers");
        }
        out.push_back(v.get<std::int64_t>());
    }
    return out;
}

// Either {"dist": [...]} or {"dist": [...], "gibbs": [...]}.
ProbVec parse_dist(const json& j, const std::string& where) {
    if (j.is_array()) {
        try {
            return ProbVec(parse_reals(j, where));
        } catch (const InputError&) {
            throw;
        } catch (const Error& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    if (!j.is_object()) {
        throw InputError(where + " must be an array or {dist, gibbs} object");
    }
    reject_unknown_keys(j, {"dist", "gibbs"}, where);
    if (!j.contains("dist")) {
        throw InputError(where + " is missing \"dist\"");
    }
    try {
        if (j.contains("gibbs")) {
            return ProbVec(parse_reals(j.at("dist"), where + ".dist"),
                           parse_reals(j.at("gibbs"), where + ".gibbs"));
        }
        return ProbVec(parse_reals(j.at("dist"), where + ".dist"));
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InputError(where + ": " + e.what());
    }
}

ResourceTheory parse_theory(const json& j, const std::string& where) {
    if (!j.is_string()) {
        throw InputError(where + " must be a string");
    }
    const std::string s = j.get<std::string>();
    if (s == "entanglement") return ResourceTheory::Entanglement;
    if (s == "coherence") return ResourceTheory::Coherence;
    if (s == "thermodynamic") return ResourceTheory::Thermodynamic;
    throw InputError(where +
                     " must be entanglement, coherence, or thermodynamic");
}

double parse_real(const json& j, const std::string& where) {
    if (!j.is_number()) {
        throw InputError(where + " must be a number");
    }
    return j.get<double>();
}

std::int64_t parse_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) {
        throw InputError(where + " must be an integer");
    }
    return j.get<std::int64_t>();
}

// {"min": a, "max": b, "count": k} -> evenly spaced axis, or an explicit
// value array.
Axis parse_axis(const json& j, const std::string& name) {
    if (j.is_array()) {
        Axis axis{name, parse_reals(j, name)};
        return axis;
    }
    if (!j.is_object()) {
        throw InputError(name + " must be an array or {min, max, count}");
    }
    reject_unknown_keys(j, {"min", "max", "count"}, name);
    for (const char* key : {"min", "max", "count"}) {
        if (!j.contains(key)) {
            throw InputError(name + " is missing \"" + key + "\"");
        }
    }
    const auto count = parse_int(j.at("count"), name + ".count");
    if (count < 1) {
        throw InputError(name + ".count must be positive");
    }
    return Axis::linspace(name, parse_real(j.at("min"), name + ".min"),
                          parse_real(j.at("max"), name + ".max"),
                          static_cast<std::size_t>(count));
}

// ---------------------------------------------------------------------------
// Output plumbing

struct OutputOptions {
    std::string out;     // base path; empty -> stdout
    std::string format = "csv";
    bool svg = false;
    bool log_scale = false;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw InputError("cannot open output file: " + path);
    }
    os << content;
}

void emit_grid(const SweepGrid& grid, const OutputOptions& opts,
               const SvgOptions& svg_opts) {
    if (opts.out.empty()) {
        if (opts.format == "json") {
            std::cout << grid.to_json().dump(2) << "\n";
        } else {
            grid.to_csv(std::cout);
        }
        return;
    }
    write_file(opts.out + ".csv", grid.to_csv());
    write_file(opts.out + ".json", grid.to_json().dump(2) + "\n");
    if (opts.svg) {
        write_file(opts.out + ".svg", render_heatmap_svg(grid, svg_opts));
    }
}

void emit_report(const json& report, const OutputOptions& opts) {
    std::ostringstream text;
    if (opts.format == "json") {
        text << report.dump(2) << "\n";
    } else {
        for (const auto& [key, value] : report.items()) {
            text << key << " = "
                 << (value.is_number() ? format_double(value.get<double>())
                                       : value.dump())
                 << "\n";
        }
    }
    if (opts.out.empty()) {
        std::cout << text.str();
    } else {
        write_file(opts.out, text.str());
    }
}

void check_masked_fraction(const SweepGrid& grid, double max_fraction) {
    const double total =
        static_cast<double>(grid.row_count() * grid.col_count());
    const double fraction = static_cast<double>(grid.masked_count()) / total;
    if (fraction > max_fraction) {
        std::ostringstream msg;
        msg << "masked cell fraction " << fraction << " exceeds limit "
            << max_fraction;
        throw SupportError(msg.str());
    }
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_stats(const std::string& config_path, const OutputOptions& opts) {
    const json cfg = load_config(config_path);
    reject_unknown_keys(cfg, {"dist", "gibbs", "second", "theory"}, "config");
    if (!cfg.contains("dist")) {
        throw InputError("config is missing \"dist\"");
    }
    json dist_spec = json::object();
    dist_spec["dist"] = cfg.at("dist");
    if (cfg.contains("gibbs")) {
        dist_spec["gibbs"] = cfg.at("gibbs");
    }
    const ProbVec p = parse_dist(dist_spec, "dist");
    const ResourceTheory theory =
        cfg.contains("theory") ? parse_theory(cfg.at("theory"), "theory")
        : p.has_gibbs()        ? ResourceTheory::Thermodynamic
                               : ResourceTheory::Entanglement;

    json report;
    report["entropy"] = shannon_entropy(p);
    report["entropy_variance"] = entropy_variance(p);
    if (p.has_gibbs()) {
        const ProbVec gamma(p.gibbs());
        report["relative_entropy"] = relative_entropy(p, gamma);
        report["relative_entropy_variance"] = relative_entropy_variance(p, gamma);
    }
    if (cfg.contains("second")) {
        const ProbVec q = parse_dist(cfg.at("second"), "second");
        report["nu"] = irreversibility_parameter(p, q, theory);
        report["asymptotic_rate"] = asymptotic_rate(p, q, theory);
    }
    emit_report(report, opts);
    return 0;
}

int cmd_convert(const std::string& config_path, const OutputOptions& opts) {
    const json cfg = load_config(config_path);
    reject_unknown_keys(cfg,
                        {"initial", "target", "copies_initial", "copies_target",
                         "atom_cap"},
                        "config");
    for (const char* key : {"initial", "target"}) {
        if (!cfg.contains(key)) {
            throw InputError(std::string("config is missing \"") + key + "\"");
        }
    }
    const ProbVec initial = parse_dist(cfg.at("initial"), "initial");
    const ProbVec target = parse_dist(cfg.at("target"), "target");
    const std::int64_t n =
        cfg.contains("copies_initial")
            ? parse_int(cfg.at("copies_initial"), "copies_initial")
            : 1;
    const std::int64_t m =
        cfg.contains("copies_target")
            ? parse_int(cfg.at("copies_target"), "copies_target")
            : 1;
    if (n < 1 || m < 1) {
        throw InputError("copy counts must be positive");
    }
    const double cap = cfg.contains("atom_cap")
                           ? parse_real(cfg.at("atom_cap"), "atom_cap")
                           : AtomDist::kDefaultAtomCap;

    const ConversionResult res =
        optimal_final_state(iid_power(initial, n, cap), iid_power(target, m, cap));

    json report;
    report["fidelity"] = res.fidelity;
    report["infidelity"] = res.infidelity;
    report["feasible_exact"] = res.feasible_exact;
    report["mass_outside_target_support"] = res.mass_outside_target_support;
    if (!opts.out.empty()) {
        // Atom table of the optimal final distribution.
        std::ostringstream csv;
        csv << "log_p,log_g,log_mult\n";
        for (const Atom& a : res.final.atoms()) {
            csv << format_double(a.log_p) << "," << format_double(a.log_g)
                << "," << format_double(a.log_mult) << "\n";
        }
        write_file(opts.out + ".atoms.csv", csv.str());
    }
    OutputOptions report_opts = opts;
    report_opts.out = opts.out.empty() ? "" : opts.out + ".report.txt";
    emit_report(report, report_opts);
    if (!opts.out.empty()) {
        emit_report(report, {"", opts.format, false, false});
    }
    return 0;
}

int cmd_heat_engine(const std::string& config_path, const OutputOptions& opts,
                    unsigned jobs, double max_masked) {
    const json cfg = load_config(config_path);
    reject_unknown_keys(cfg,
                        {"copies", "t_hot", "gap", "t_cold", "t_cold_final",
                         "mode", "work_fraction", "error_threshold",
                         "battery_marginal", "atom_cap"},
                        "config");
    HeatEngineSpec spec;
    if (cfg.contains("copies")) spec.copies = parse_int(cfg.at("copies"), "copies");
    if (cfg.contains("t_hot")) spec.t_hot = parse_real(cfg.at("t_hot"), "t_hot");
    if (cfg.contains("gap")) spec.gap = parse_real(cfg.at("gap"), "gap");
    if (cfg.contains("t_cold")) {
        spec.t_cold_axis = parse_axis(cfg.at("t_cold"), "T_c");
    }
    if (cfg.contains("t_cold_final")) {
        spec.t_cold_final_axis = parse_axis(cfg.at("t_cold_final"), "T_c'");
    }
    if (cfg.contains("mode")) {
        const std::string mode = cfg.at("mode").is_string()
                                     ? cfg.at("mode").get<std::string>()
                                     : "";
        if (mode == "fixed-work") {
            spec.mode = HeatEngineSpec::Mode::FixedWork;
        } else if (mode == "fixed-error") {
            spec.mode = HeatEngineSpec::Mode::FixedError;
        } else {
            throw InputError("mode must be fixed-work or fixed-error");
        }
    }
    if (cfg.contains("work_fraction")) {
        spec.work_fraction = parse_real(cfg.at("work_fraction"), "work_fraction");
    }
    if (cfg.contains("error_threshold")) {
        spec.error_threshold =
            parse_real(cfg.at("error_threshold"), "error_threshold");
    }
    if (cfg.contains("battery_marginal")) {
        if (!cfg.at("battery_marginal").is_boolean()) {
            throw InputError("battery_marginal must be a boolean");
        }
        spec.battery_marginal = cfg.at("battery_marginal").get<bool>();
    }
    if (cfg.contains("atom_cap")) {
        spec.atom_cap = parse_real(cfg.at("atom_cap"), "atom_cap");
    }
    if (spec.copies < 1) {
        throw InputError("copies must be positive");
    }

    const SweepGrid grid = heat_engine_sweep(spec, jobs);
    check_masked_fraction(grid, max_masked);

    SvgOptions svg_opts;
    svg_opts.log_scale = opts.log_scale;
    svg_opts.title = spec.mode == HeatEngineSpec::Mode::FixedWork
                         ? "heat engine infidelity"
                         : "heat engine work fraction";
    // Dashed overlay: the resonance line nu = 1 of the same model.
    const SweepGrid nu_grid = nu_contour(
        [&](double t_c, double t_cp) {
            return heat_engine_nu_cell(t_c, t_cp, spec.t_hot, spec.gap,
                                       spec.work_fraction);
        },
        spec.t_cold_axis, spec.t_cold_final_axis);
    svg_opts.row_contour = contour_crossings(nu_grid, 1.0);
    emit_grid(grid, opts, svg_opts);
    return 0;
}

int cmd_lambda_sweep(const std::string& config_path, const OutputOptions& opts,
                     unsigned jobs, double max_masked) {
    const json cfg = load_config(config_path);
    reject_unknown_keys(
        cfg, {"p1", "p2", "target", "n_list", "lambda_grid", "atom_cap"},
        "config");
    for (const char* key : {"p1", "p2", "target", "n_list", "lambda_grid"}) {
        if (!cfg.contains(key)) {
            throw InputError(std::string("config is missing \"") + key + "\"");
        }
    }
    const ProbVec p1 = parse_dist(cfg.at("p1"), "p1");
    const ProbVec p2 = parse_dist(cfg.at("p2"), "p2");
    const ProbVec target = parse_dist(cfg.at("target"), "target");
    const auto n_list = parse_ints(cfg.at("n_list"), "n_list");
    const Axis lambda_axis = parse_axis(cfg.at("lambda_grid"), "lambda");
    const double cap = cfg.contains("atom_cap")
                           ? parse_real(cfg.at("atom_cap"), "atom_cap")
                           : AtomDist::kDefaultAtomCap;

    const SweepGrid grid =
        lambda_sweep(p1, p2, target, n_list, lambda_axis.values, jobs, cap);
    check_masked_fraction(grid, max_masked);

    SvgOptions svg_opts;
    svg_opts.log_scale = opts.log_scale;
    svg_opts.title = "conversion infidelity";
    emit_grid(grid, opts, svg_opts);
    return 0;
}

int cmd_rate_sweep(const std::string& config_path, const OutputOptions& opts,
                   unsigned jobs, double max_masked) {
    const json cfg = load_config(config_path);
    reject_unknown_keys(cfg, {"initials", "target", "n_list", "epsilon",
                              "atom_cap"},
                        "config");
    for (const char* key : {"initials", "target", "n_list"}) {
        if (!cfg.contains(key)) {
            throw InputError(std::string("config is missing \"") + key + "\"");
        }
    }
    if (!cfg.at("initials").is_array() || cfg.at("initials").empty()) {
        throw InputError("initials must be a non-empty array of distributions");
    }
    std::vector<ProbVec> initials;
    for (std::size_t i = 0; i < cfg.at("initials").size(); ++i) {
        initials.push_back(parse_dist(cfg.at("initials")[i],
                                      "initials[" + std::to_string(i) + "]"));
    }
    const ProbVec target = parse_dist(cfg.at("target"), "target");
    const auto n_list = parse_ints(cfg.at("n_list"), "n_list");
    const double epsilon = cfg.contains("epsilon")
                               ? parse_real(cfg.at("epsilon"), "epsilon")
                               : 0.01;
    const double cap = cfg.contains("atom_cap")
                           ? parse_real(cfg.at("atom_cap"), "atom_cap")
                           : AtomDist::kDefaultAtomCap;

    const SweepGrid grid =
        rate_sweep(initials, target, n_list, epsilon, jobs, cap);
    check_masked_fraction(grid, max_masked);

    SvgOptions svg_opts;
    svg_opts.log_scale = opts.log_scale;
    svg_opts.title = "conversion rate";
    emit_grid(grid, opts, svg_opts);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Optimal finite-size interconversion of quantum resources: "
        "functionals, conversions, and resonance sweeps"};
    app.require_subcommand(1);

    struct SubArgs {
        std::string config;
        OutputOptions out;
        unsigned jobs = 0;
        double max_masked = 1.0;
    };
    std::map<std::string, SubArgs> args;

    auto add_common = [&](CLI::App* sub, bool sweep) {
        SubArgs& a = args[sub->get_name()];
        sub->add_option("--config", a.config, "Path to a JSON config file")
            ->required();
        sub->add_option("--out", a.out.out,
                        "Output path (base path for sweeps; stdout if omitted)");
        sub->add_option("--format", a.out.format,
                        "Stdout format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        if (sweep) {
            sub->add_flag("--svg", a.out.svg,
                          "Also render an SVG heatmap next to --out");
            sub->add_flag("--log-scale", a.out.log_scale,
                          "Logarithmic color scale for the SVG heatmap");
            sub->add_option("--jobs", a.jobs,
                            "Worker thread count (0 = all cores)");
            sub->add_option(
                "--max-masked-fraction", a.max_masked,
                "Fail when more than this fraction of cells is masked");
        }
    };

    add_common(app.add_subcommand(
                   "stats", "Entropy, variance, and rate functionals of a "
                            "distribution"),
               false);
    add_common(app.add_subcommand(
                   "convert", "Optimal conversion between two i.i.d. states"),
               false);
    add_common(app.add_subcommand(
                   "heat-engine",
                   "Work-extraction infidelity sweep over temperatures"),
               true);
    add_common(app.add_subcommand(
                   "lambda-sweep",
                   "Infidelity of mixed-input conversions over lambda and n"),
               true);
    add_common(
        app.add_subcommand("rate-sweep",
                           "Optimal conversion rates at fixed infidelity"),
        true);

    CLI11_PARSE(app, argc, argv);

    const CLI::App* sub = app.get_subcommands().front();
    const SubArgs& a = args[sub->get_name()];
    try {
        if (sub->get_name() == "stats") {
            return cmd_stats(a.config, a.out);
        }
        if (sub->get_name() == "convert") {
            return cmd_convert(a.config, a.out);
        }
        if (sub->get_name() == "heat-engine") {
            return cmd_heat_engine(a.config, a.out, a.jobs, a.max_masked);
        }
        if (sub->get_name() == "lambda-sweep") {
            return cmd_lambda_sweep(a.config, a.out, a.jobs, a.max_masked);
        }
        return cmd_rate_sweep(a.config, a.out, a.jobs, a.max_masked);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 4;
    } catch (const IterationLimitError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    }
}
