// zipshift — exact computations on zip shift spaces from the command line.
//
// Subcommands: shift, metric, periodic, separation, shadow, transitive,
// mixing, sensitivity, product, code, suite. All rationals are serialized as
// "num/den" strings; randomized commands require an explicit --seed and are
// reproducible from (config, seed). Exit codes: 0 all checks pass, 1 a check
// failed, 2 usage or parse error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <zipshift/builtin.hpp>
#include <zipshift/json_io.hpp>
#include <zipshift/suite.hpp>

namespace {

using namespace zipshift;

constexpr const char* kVersion = "0.1.0";

struct Output {
    std::string path;    // empty = stdout
    std::string format;  // "json" or "csv"
    std::ostringstream buffer;

    void flush_json(const Json& j) {
        buffer << j.dump(2) << "\n";
        write();
    }
    void write() {
        if (path.empty()) {
            std::cout << buffer.str();
        } else {
            std::ofstream out(path);
            if (!out) throw Error("cannot open output file " + path);
            out << buffer.str();
        }
    }
};

Caps caps_from_env() {
    Caps caps;
    if (const char* v = std::getenv("ZIPSHIFT_CAP")) {
        try {
            caps.enumeration = std::stoull(v);
        } catch (const std::exception&) {
            throw ParseError("ZIPSHIFT_CAP is not an integer");
        }
    }
    return caps;
}

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Inline JSON if the argument starts with '{' or '[', otherwise a file path.
Json read_json_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
        std::ifstream in(arg);
        if (!in) throw ParseError("cannot read file " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
}

System load_system(const std::string& spec) {
    if (!spec.empty() && (spec[0] == '{' || spec.find(".json") != std::string::npos ||
                          spec.find('/') != std::string::npos))
        return system_from_json(read_json_arg(spec));
    return builtin_system(spec);
}

PwlMap load_map(const std::string& spec) {
    if (spec == "doubling" || spec == "tripling") return builtin_map(spec);
    return pwl_from_json(read_json_arg(spec));
}

Partition load_partition(const std::string& spec) {
    if (spec == "quarters" || spec == "thirds" || spec == "halves" || spec == "none" ||
        spec == "whole")
        return builtin_partition(spec);
    return partition_from_json(read_json_arg(spec));
}

Json manifest(const std::string& command, const Json& config,
              const std::vector<CheckResult>& checks, const std::string& started) {
    Json j;
    j["tool"] = "zipshift";
    j["version"] = kVersion;
    j["command"] = command;
    j["config"] = config;
    j["started"] = started;
    j["finished"] = timestamp_utc();
    Json arr = Json::array();
    bool all = true;
    for (const auto& c : checks) {
        arr.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        all = all && c.pass;
    }
    j["checks"] = std::move(arr);
    j["pass"] = all;
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"exact zip shift spaces: metric, dynamics, shadowing, interval-map coding"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Output out;
    std::string system_arg = "example1";
    std::uint64_t seed = 0;
    bool seed_given = false;
    auto add_common = [&](CLI::App* cmd, bool needs_seed) {
        cmd->add_option("--output", out.path, "write results to this file instead of stdout");
        cmd->add_option("--format", out.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        auto* s = cmd->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t v) { seed = v; seed_given = true; },
            "64-bit seed for randomized commands");
        if (needs_seed) s->required();
    };
    const Caps caps = caps_from_env();

    // shift
    auto* c_shift = app.add_subcommand("shift", "apply sigma_tau to a point; list preimages");
    std::string point_arg, point_arg2;
    bool inverse = false;
    c_shift->add_option("--system", system_arg, "builtin system name or JSON");
    c_shift->add_option("--point", point_arg, "point JSON (inline or file)")->required();
    c_shift->add_flag("--inverse", inverse, "list preimages only");
    add_common(c_shift, false);

    // metric
    auto* c_metric = app.add_subcommand("metric", "first disagreement and exact distance");
    c_metric->add_option("--system", system_arg);
    c_metric->add_option("--p", point_arg, "first point")->required();
    c_metric->add_option("--q", point_arg2, "second point")->required();
    add_common(c_metric, false);

    // periodic
    int k = 1, depth = 1, m = 2, length = 100, trials = 100, k_max = 6;
    auto* c_periodic = app.add_subcommand("periodic", "enumerate shift^k-fixed points");
    c_periodic->add_option("--system", system_arg);
    c_periodic->add_option("--k", k, "period")->required();
    add_common(c_periodic, false);

    // separation
    auto* c_sep = app.add_subcommand("separation", "S-expansivity witness for a pair");
    c_sep->add_option("--system", system_arg);
    c_sep->add_option("--p", point_arg)->required();
    c_sep->add_option("--q", point_arg2)->required();
    int power_k = 1;
    c_sep->add_option("--power", power_k, "witness for the k-th power map (default 1)");
    add_common(c_sep, false);

    // shadow
    auto* c_shadow = app.add_subcommand("shadow", "trace seeded perturbed pseudo-orbits");
    c_shadow->add_option("--system,--lambda-system", system_arg,
                         "builtin system name or JSON file");
    c_shadow->add_option("--m", m, "agreement depth; delta = lambda^-(m+1)")->required();
    c_shadow->add_option("--length", length, "pseudo-orbit length");
    c_shadow->add_option("--trials", trials, "number of seeded orbits");
    add_common(c_shadow, true);

    // transitive
    auto* c_trans = app.add_subcommand("transitive", "transitive-point window and certificate");
    c_trans->add_option("--system", system_arg);
    c_trans->add_option("--depth", depth, "cylinder window radius")->required();
    add_common(c_trans, false);

    // mixing
    auto* c_mix = app.add_subcommand("mixing", "least N with sigma^n(U) meeting V for n >= N");
    c_mix->add_option("--system", system_arg);
    c_mix->add_option("--depth", depth, "cylinder window radius")->required();
    add_common(c_mix, false);

    // sensitivity
    auto* c_sens = app.add_subcommand("sensitivity", "separating neighbor inside a cylinder");
    c_sens->add_option("--system", system_arg);
    c_sens->add_option("--point", point_arg)->required();
    c_sens->add_option("--depth", depth, "agreement depth D");
    add_common(c_sens, false);

    // product
    std::string system2_arg = "example2";
    auto* c_prod = app.add_subcommand("product", "direct product of two systems");
    c_prod->add_option("--system", system_arg);
    c_prod->add_option("--system2", system2_arg);
    add_common(c_prod, false);

    // code
    std::string map_arg = "doubling", refinement_arg = "quarters";
    auto* c_code = app.add_subcommand("code", "derive the coding scheme of an interval map");
    c_code->add_option("--map", map_arg, "doubling|tripling|custom JSON");
    c_code->add_option("--refinement", refinement_arg, "quarters|thirds|halves|none|custom JSON");
    c_code->add_option("--depth", depth, "generator diameter depth");
    c_code->add_option("--trials", trials, "semiconjugacy sweep size");
    add_common(c_code, false);

    // suite
    std::string suite_id = "all";
    int lambda_opt = 4;
    auto* c_suite = app.add_subcommand("suite", "run a check battery, write a run manifest");
    c_suite->add_option("id", suite_id,
                        "expansivity|shadowing|periodic|metric|density|mixing|coding|all");
    c_suite->add_option("--lambda", lambda_opt, "metric base for builtin full systems");
    c_suite->add_option("--trials", trials);
    c_suite->add_option("--m", m);
    c_suite->add_option("--k", k_max, "max period for the periodic battery");
    c_suite->add_option("--length", length);
    c_suite->add_option("--depth", depth);
    add_common(c_suite, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // stable usage-error contract
    }
    if (out.format.empty()) out.format = "json";

    if (*c_shift) {
        System sys = load_system(system_arg);
        Point p = point_from_json(sys.tm, read_json_arg(point_arg));
        Json j;
        j["input"] = point_to_json(p);
        if (!inverse) j["shifted"] = point_to_json(shift(sys, p));
        Json pre = Json::array();
        for (const Point& q : preimages(sys, p)) pre.push_back(point_to_json(q));
        j["preimages"] = std::move(pre);
        out.flush_json(j);
        return 0;
    }

    if (*c_metric) {
        System sys = load_system(system_arg);
        Point p = point_from_json(sys.tm, read_json_arg(point_arg));
        Point q = point_from_json(sys.tm, read_json_arg(point_arg2));
        auto md = first_disagreement(sys, p, q);
        Json j;
        j["M"] = md ? Json(*md) : Json("infinity");
        j["distance"] = to_frac(distance(sys, p, q));
        out.flush_json(j);
        return 0;
    }

    if (*c_periodic) {
        System sys = load_system(system_arg);
        auto pts = periodic_points(sys, k, caps);
        bool verified = true;
        Json arr = Json::array();
        for (const Point& p : pts) {
            verified = verified && equals(iterate(sys, p, k), p);
            arr.push_back(point_to_json(p));
        }
        Json j;
        j["k"] = k;
        j["count"] = pts.size();
        j["verified"] = verified;
        j["points"] = std::move(arr);
        out.flush_json(j);
        return verified ? 0 : 1;
    }

    if (*c_sep) {
        System sys = load_system(system_arg);
        Point p = point_from_json(sys.tm, read_json_arg(point_arg));
        Point q = point_from_json(sys.tm, read_json_arg(point_arg2));
        SeparationWitness w =
            power_k == 1 ? separation_time(sys, p, q) : power_separation(sys, p, q, power_k);
        Json j = witness_to_json(w);
        if (power_k == 1) j["audited"] = verify_separation(sys, p, q, w);
        out.flush_json(j);
        return 0;
    }

    if (*c_shadow) {
        System sys = load_system(system_arg);
        std::vector<ShadowTrial> rows;
        Rng rng(seed);
        Json reports = Json::array();
        bool all = true;
        Rational bound = inv_power(static_cast<unsigned>(sys.lambda()), static_cast<unsigned>(m));
        for (int t = 0; t < trials; ++t) {
            Rng trial_rng = rng.child(static_cast<std::uint64_t>(t));
            Point base = random_point(sys.tm, trial_rng);
            PseudoOrbit po = perturbed_orbit(sys, base, length, m, trial_rng.next());
            TraceReport tr = trace(sys, po, m);
            TraceReport vr = verify_tracing(sys, tr.tracer, po, bound);
            bool ok = tr.accepted && vr.accepted && tr.max_error == vr.max_error;
            all = all && ok;
            rows.push_back({t, m, vr.max_error, ok});
            reports.push_back(trace_report_to_json(tr));
        }
        if (out.format == "csv") {
            out.buffer << "trial,m,max_error_num,max_error_den,pass\n";
            for (const auto& r : rows)
                out.buffer << r.trial << "," << r.m << "," << numerator(r.max_error) << ","
                           << denominator(r.max_error) << "," << (r.pass ? 1 : 0) << "\n";
            out.write();
        } else {
            Json j;
            j["lambda"] = sys.lambda();
            j["m"] = m;
            j["delta"] = to_frac(inv_power(static_cast<unsigned>(sys.lambda()),
                                           static_cast<unsigned>(m + 1)));
            j["epsilon"] = to_frac(bound);
            j["pass"] = all;
            j["reports"] = std::move(reports);
            out.flush_json(j);
        }
        return all ? 0 : 1;
    }

    if (*c_trans) {
        System sys = load_system(system_arg);
        Window w = transitive_window(sys, depth, caps);
        bool ok = verify_transitive(sys, depth, caps);
        Json j;
        j["depth"] = depth;
        j["window_length"] = w.symbols.size();
        j["verified"] = ok;
        j["window"] = window_to_json(w);
        out.flush_json(j);
        return ok ? 0 : 1;
    }

    if (*c_mix) {
        System sys = load_system(system_arg);
        int gap = mixing_gap(sys, depth, caps);
        Json j;
        j["depth"] = depth;
        j["gap"] = gap;
        j["certified_through"] = 2 * depth + 2;
        out.flush_json(j);
        return 0;
    }

    if (*c_sens) {
        System sys = load_system(system_arg);
        Point p = point_from_json(sys.tm, read_json_arg(point_arg));
        auto [q, n] = sensitivity_witness(sys, p, depth);
        Json j;
        j["q"] = point_to_json(q);
        j["n"] = n;
        j["d_before"] = to_frac(distance(sys, p, q));
        j["d_after"] = to_frac(distance(sys, iterate(sys, p, n), iterate(sys, q, n)));
        out.flush_json(j);
        return 0;
    }

    if (*c_prod) {
        System a = load_system(system_arg);
        System b = load_system(system2_arg);
        out.flush_json(system_to_json(product_system(a, b)));
        return 0;
    }

    if (*c_code) {
        PwlMap map = load_map(map_arg);
        Partition extra = load_partition(refinement_arg);
        CodingScheme scheme = make_coding_scheme(map, extra);
        Json j;
        j["scheme"] = scheme_to_json(scheme);
        Json diam = Json::array();
        for (int n = 0; n <= depth; ++n)
            diam.push_back(Json{{"depth", n},
                                {"diameter", to_frac(generator_diameter(map, scheme.etp, n, caps))}});
        j["generator_diameters"] = std::move(diam);
        Rng rng(seed_given ? seed : 0);
        bool all_hold = true;
        for (int t = 0; t < trials; ++t) {
            Word w = random_admissible_word(scheme, 10, rng);
            auto rep = check_semiconjugacy(scheme, Window{scheme.tm, 0, w}, 10);
            all_hold = all_hold && rep.holds;
        }
        j["semiconjugacy"] = Json{{"trials", trials}, {"depth", 10}, {"all_hold", all_hold}};
        out.flush_json(j);
        return all_hold ? 0 : 1;
    }

    if (*c_suite) {
        const std::string started = timestamp_utc();
        std::vector<CheckResult> checks;
        System sys = make_system(full_tm(lambda_opt));
        auto want = [&](const std::string& id) { return suite_id == id || suite_id == "all"; };
        try {
            if (want("expansivity"))
                checks.push_back(battery_expansivity(sys, trials, seed_given ? seed : 7));
            if (want("shadowing"))
                checks.push_back(battery_shadowing(sys, m, trials, length, seed_given ? seed : 1));
            if (want("periodic")) checks.push_back(battery_periodic(sys, k_max, caps));
            if (want("metric"))
                checks.push_back(battery_metric(sys, trials, seed_given ? seed : 3));
            if (want("density")) checks.push_back(battery_density(sys, std::min(depth, 2), 6, caps));
            if (want("mixing")) checks.push_back(battery_mixing(sys, std::min(depth, 1), caps));
            if (want("coding")) checks.push_back(battery_coding(seed_given ? seed : 11));
        } catch (const CapExceeded& e) {
            checks.push_back({"cap", false, e.what()});
        }
        if (checks.empty()) throw ParseError("unknown suite id \"" + suite_id + "\"");
        Json j = manifest("suite " + suite_id, Json{{"lambda", lambda_opt},
                                                    {"trials", trials},
                                                    {"m", m},
                                                    {"k", k_max},
                                                    {"length", length},
                                                    {"depth", depth},
                                                    {"seed", seed}},
                          checks, started);
        if (out.format == "csv") {
            out.buffer << "name,pass,detail\n";
            for (const auto& c : checks)
                out.buffer << c.name << "," << (c.pass ? 1 : 0) << ",\"" << c.detail << "\"\n";
            out.write();
        } else {
            out.flush_json(j);
        }
        return j["pass"].get<bool>() ? 0 : 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
