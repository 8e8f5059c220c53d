#pragma once
// Command-line front end. `dispatch` returns the process exit code:
// 0 success, 1 domain error (`error:<code>: ...` on stderr), 2 usage error.

#include "polygeom/constructors.hpp"
#include "polygeom/elliptic.hpp"
#include "polygeom/error.hpp"
#include "polygeom/geom_counters.hpp"
#include "polygeom/harness.hpp"
#include "polygeom/json_io.hpp"
#include "polygeom/parser.hpp"
#include "polygeom/rng.hpp"
#include "polygeom/special_form.hpp"
#include "polygeom/zero_counter.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace polygeom::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

/// key=value lines; '#' comments and blank lines skipped; keys may carry a
/// leading "--".
inline std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::vector<std::pair<std::string, std::string>> kv;
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("config", path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(key.begin());
        kv.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return kv;
}

inline bool has_flag(const std::vector<std::string>& args, const std::string& name) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == name || a.rfind(name + "=", 0) == 0; });
}

inline Rational parse_rational_arg(const std::string& text, const std::string& what) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw Error("syntax", what + ": " + e.what());
    }
}

inline json sets_json(const GridSets& g) {
    json j = json::object();
    for (std::size_t i = 0; i < 4; ++i) {
        json arr = json::array();
        for (const auto& v : g.sets[i]) arr.push_back(v.to_string());
        j[std::string(1, static_cast<char>('A' + i))] = arr;
    }
    return j;
}

inline std::string count_csv(const CountReport& r) {
    std::string head = "kind,method,count,ordered";
    std::string row = r.kind + "," + r.method + "," + std::to_string(r.count) + "," + std::to_string(r.ordered);
    if (r.circles) {
        head += ",circles";
        row += "," + std::to_string(*r.circles);
    }
    return head + ",elapsed_ms\n" + row + "," + format_double(r.elapsed_ms) + "\n";
}

}  // namespace detail

struct RunConfig {
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
    std::string format;  // json | csv; empty picks the subcommand default
    std::string output;  // empty: standard output
    std::string config;

    // count-zeros / detect-special
    std::string poly;
    std::string vars = "x,y,s,t";
    std::string sets_path;
    std::string zero_method = "fiber";
    DetectorConfig detector;
    std::string popular;

    // construct
    std::string kind;
    std::int64_t n = 0;
    std::string a = "1", b = "1", spacing = "1";

    // counters
    std::string points_path;
    std::string count_method = "fast";
    std::string mode = "exact";
    double tol = 1e-7;

    // fit-exponent
    std::string experiment;
    std::string ns;
    std::size_t burn_in = 0;
};

namespace detail {

inline std::vector<std::string> poly_vars(const RunConfig& c) {
    auto v = split(c.vars, ',');
    if (v.size() != 4) throw Error("arity", "--vars must name exactly four variables");
    return v;
}

inline std::string run_count_zeros(const RunConfig& c, const std::string& fmt) {
    const auto f = parse_poly(c.poly, poly_vars(c));
    const auto sets = parse_sets_csv(read_file(c.sets_path));
    sets.validate();
    const auto r = c.zero_method == "naive" ? count_naive(f, sets, c.threads) : count_fiber(f, sets, 3, c.threads);
    if (fmt == "csv")
        return "count,method,degenerate_fibers,elapsed_ms\n" + std::to_string(r.count) + "," + to_string(r.method) +
               "," + std::to_string(r.degenerate_fibers) + "," + format_double(r.elapsed_ms) + "\n";
    auto j = to_json(r);
    j["poly"] = f.to_string();
    return j.dump(2) + "\n";
}

inline std::string run_detect_special(const RunConfig& c, const std::string& fmt) {
    const auto f = parse_poly(c.poly, poly_vars(c));
    auto v = classify(f, c.seed, c.detector);
    if (!c.popular.empty()) {
        std::vector<std::pair<Rational, Rational>> params;
        for (const auto& pair : split(c.popular, ',')) {
            const auto cd = split(pair, ':');
            if (cd.size() != 2) throw Error("syntax", "--popular expects c:d pairs separated by commas");
            params.emplace_back(parse_rational_arg(cd[0], "--popular"), parse_rational_arg(cd[1], "--popular"));
        }
        v.popular = popular_components(f, params);
    }
    if (fmt == "csv") {
        std::string row = to_string(v.classification);
        for (double s : v.ratio_spread) row += "," + (std::isnan(s) ? std::string() : format_double(s));
        row += "," + (std::isnan(v.g_max) ? std::string() : format_double(v.g_max));
        return "classification,spread_st,spread_sx,spread_tx,g_max\n" + row + "\n";
    }
    auto j = to_json(v);
    j["poly"] = f.to_string();
    j["seed"] = c.seed;
    return j.dump(2) + "\n";
}

inline std::string run_construct(const RunConfig& c, const std::string& fmt) {
    if (c.kind == "ap-additive" || c.kind == "ap-multiplicative") {
        const auto g = ap_grid(c.kind == "ap-additive" ? GridKind::additive : GridKind::multiplicative, c.n);
        if (fmt == "json")
            return json{{"kind", c.kind}, {"n", c.n}, {"poly", g.poly.to_string()}, {"sets", sets_json(g.sets)},
                        {"expected_count", g.expected_count}}
                       .dump(2) +
                   "\n";
        return "# poly: " + g.poly.to_string() + "\n# expected_count: " + std::to_string(g.expected_count) + "\n" +
               to_sets_csv(g.sets);
    }
    if (c.kind == "elliptic") {
        const auto cfg = EllipticConfig::make(parse_rational_arg(c.a, "--a"), parse_rational_arg(c.b, "--b"));
        if (c.n < 5) throw Error("invalid-argument", "elliptic configuration needs --n >= 5");
        const auto pts = elliptic_configuration(cfg, static_cast<std::size_t>(c.n));
        if (fmt == "json") {
            json arr = json::array();
            for (const auto& p : pts) arr.push_back({p[0], p[1], p[2]});
            return json{{"kind", c.kind}, {"n", c.n}, {"a", cfg.a().to_string()}, {"b", cfg.b().to_string()},
                        {"period", cfg.period()}, {"expected_coplanar", coplanar_index_oracle(static_cast<std::uint64_t>(c.n))},
                        {"points", arr}}
                       .dump(2) +
                   "\n";
        }
        return to_points_csv(pts);
    }
    // moment
    const auto pts = moment_curve_points(c.n, parse_rational_arg(c.spacing, "--spacing"));
    if (fmt == "json") {
        json arr = json::array();
        for (const auto& p : pts) arr.push_back({p[0].to_string(), p[1].to_string(), p[2].to_string()});
        return json{{"kind", c.kind}, {"n", c.n}, {"points", arr}}.dump(2) + "\n";
    }
    return to_points_csv(pts);
}

inline std::string report_out(CountReport r, const std::string& fmt, std::optional<double> tol = std::nullopt) {
    if (fmt == "csv") return count_csv(r);
    auto j = to_json(r);
    if (tol) j["tol"] = *tol;
    return j.dump(2) + "\n";
}

inline std::string run_count_coplanar(const RunConfig& c, const std::string& fmt) {
    const auto pts = parse_points_csv<3>(read_file(c.points_path));
    if (c.mode == "float") {
        if (c.count_method == "fast")
            throw Error("exact-only", "the fast coplanar counter needs exact coordinates; use --method naive with --mode float");
        return report_out(coplanar_naive(to_float(pts), c.tol, c.threads), fmt, c.tol);
    }
    return report_out(c.count_method == "naive" ? coplanar_naive(pts, c.threads) : coplanar_fast(pts, c.threads), fmt);
}

inline std::string run_fit(const RunConfig& c, const std::string& fmt) {
    std::vector<std::int64_t> ns;
    for (const auto& item : split(c.ns, ',')) {
        try {
            std::size_t used = 0;
            ns.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error("syntax", "--ns expects comma-separated integers, got '" + item + "'");
        }
    }
    const auto s = run_named(c.experiment, ns, c.seed, c.threads, c.burn_in);
    return fmt == "json" ? to_json(s).dump(2) + "\n" : to_csv(s);
}

}  // namespace detail

/// `args` excludes the program name.
inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Zero counting, special-form detection and incidence counting", "polygeom_cli"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", c.seed, "Seed for every random choice")->capture_default_str();
    app.add_option("--threads", c.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    app.add_option("--out", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("-o,--output", c.output, "Write the report to this file instead of standard output");
    app.add_option("--config", c.config, "key=value file mirroring the flags; flags win")->check(CLI::ExistingFile);

    auto* zeros = app.add_subcommand("count-zeros", "Count zeros of F on A x B x C x D");
    zeros->add_option("--poly", c.poly, "Polynomial in four variables")->required();
    zeros->add_option("--sets", c.sets_path, "Sets file (lines 'A: v1,v2,...')")->required()->check(CLI::ExistingFile);
    zeros->add_option("--method", c.zero_method, "naive | fiber")->capture_default_str()->check(CLI::IsMember({"naive", "fiber"}));
    zeros->add_option("--vars", c.vars, "Variable names bound to A,B,C,D")->capture_default_str();

    auto* detect = app.add_subcommand("detect-special", "Classify F as special or non-special");
    detect->add_option("--poly", c.poly, "Polynomial in four variables")->required();
    detect->add_option("--vars", c.vars, "Variable names")->capture_default_str();
    detect->add_option("--trials", c.detector.trials, "Ratio trials per split")->capture_default_str()->check(CLI::PositiveNumber);
    detect->add_option("--box", c.detector.box, "Sampling box half-width")->capture_default_str()->check(CLI::PositiveNumber);
    detect->add_option("--pass-threshold", c.detector.pass_threshold, "Spread below this passes")->capture_default_str();
    detect->add_option("--fail-threshold", c.detector.fail_threshold, "Spread above this fails")->capture_default_str();
    detect->add_option("--gradient-floor", c.detector.gradient_floor, "Minimum |partial| at a sample")->capture_default_str();
    detect->add_option("--g-threshold", c.detector.g_threshold, "G values below this vanish")->capture_default_str();
    detect->add_option("--popular", c.popular, "Also scan slices at these c:d pairs, comma separated");

    auto* construct = app.add_subcommand("construct", "Emit a configuration");
    construct->add_option("--kind", c.kind, "ap-additive | ap-multiplicative | elliptic | moment")
        ->required()
        ->check(CLI::IsMember({"ap-additive", "ap-multiplicative", "elliptic", "moment"}));
    construct->add_option("--n", c.n, "Size")->required();
    construct->add_option("--a", c.a, "Curve coefficient a")->capture_default_str();
    construct->add_option("--b", c.b, "Curve coefficient b")->capture_default_str();
    construct->add_option("--spacing", c.spacing, "Moment-curve parameter step")->capture_default_str();

    auto* coplanar = app.add_subcommand("count-coplanar", "Count coplanar 4-subsets of 3D points");
    coplanar->add_option("--points", c.points_path, "CSV of x,y,z rows")->required()->check(CLI::ExistingFile);
    coplanar->add_option("--method", c.count_method, "naive | fast")->capture_default_str()->check(CLI::IsMember({"naive", "fast"}));
    coplanar->add_option("--mode", c.mode, "exact | float")->capture_default_str()->check(CLI::IsMember({"exact", "float"}));
    coplanar->add_option("--tol", c.tol, "Float-mode tolerance")->capture_default_str()->check(CLI::PositiveNumber);

    auto* collinear = app.add_subcommand("count-collinear", "Count collinear triples of 2D points");
    collinear->add_option("--points", c.points_path, "CSV of x,y rows")->required()->check(CLI::ExistingFile);

    auto* circles = app.add_subcommand("count-circles", "Count four-point circles of 2D points");
    circles->add_option("--points", c.points_path, "CSV of x,y rows")->required()->check(CLI::ExistingFile);

    auto* fit = app.add_subcommand("fit-exponent", "Run a growth series and fit its exponent");
    std::string experiments;
    for (const auto& e : named_experiments()) experiments += (experiments.empty() ? "" : " | ") + e.name;
    fit->add_option("--experiment", c.experiment, experiments)->required();
    fit->add_option("--ns", c.ns, "Comma-separated increasing sizes")->required();
    fit->add_option("--burn-in", c.burn_in, "Leading points left out of the fit")->capture_default_str();

    try {
        // Config values become flags unless the flag is already present.
        for (std::size_t i = 0; i < args.size(); ++i) {
            std::string path;
            if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
            if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
            if (path.empty()) continue;
            CLI::App* sub = nullptr;
            for (const auto& a : args)
                for (auto* s : app.get_subcommands([](CLI::App*) { return true; }))
                    if (!sub && a == s->get_name()) sub = s;
            for (const auto& [key, value] : detail::read_config(path)) {
                const std::string flag = "--" + key;
                if (key == "config") continue;
                const bool known = app.get_option_no_throw(flag) || (sub && sub->get_option_no_throw(flag));
                if (!known) throw CLI::ValidationError("config", "unknown key '" + key + "' in " + path);
                if (detail::has_flag(args, flag)) continue;
                args.push_back(flag);
                args.push_back(value);
            }
            break;
        }
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error:usage: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error:" << e.code() << ": " << e.what() << "\n";
        return 1;
    }

    try {
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        const std::string fmt = !c.format.empty() ? c.format : (name == "construct" ? "csv" : "json");
        std::string text;
        if (name == "count-zeros") text = detail::run_count_zeros(c, fmt);
        else if (name == "detect-special") text = detail::run_detect_special(c, fmt);
        else if (name == "construct") text = detail::run_construct(c, fmt);
        else if (name == "count-coplanar") text = detail::run_count_coplanar(c, fmt);
        else if (name == "count-collinear") text = detail::report_out(collinear_triples(parse_points_csv<2>(detail::read_file(c.points_path))), fmt);
        else if (name == "count-circles") text = detail::report_out(four_point_circles(parse_points_csv<2>(detail::read_file(c.points_path)), c.threads), fmt);
        else text = detail::run_fit(c, fmt);
        if (c.output.empty()) {
            out << text;
        } else {
            std::ofstream f(c.output, std::ios::binary);
            if (!f) throw Error("io", "cannot write " + c.output);
            f << text;
        }
        return 0;
    } catch (const Error& e) {
        err << "error:" << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error:internal: " << e.what() << "\n";
        return 1;
    }
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return dispatch(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace polygeom::cli
