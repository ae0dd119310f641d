#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "railgauge/report_io.hpp"
#include "railgauge/verify.hpp"

namespace {

using namespace railgauge;

/// Exit codes: 0 success, 2 consistency-check failure, 3 invalid
/// configuration (unknown kind, bad mode count, undiscriminating alpha, ...).
int exit_code_for(Errc code) {
    switch (code) {
    case Errc::InvalidProbability:
    case Errc::ExactScaleMismatch:
    case Errc::Overflow:
        return 2;
    default:
        return 3;
    }
}

void write_text(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::fputs(content.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::InvalidArgument, "cannot open '" + path + "' for writing");
    out << content;
}

void write_json(const std::string& path, const OrderedJson& j) {
    write_text(path, j.dump(2) + "\n");
}

struct BuildUnitaryArgs {
    std::string kind = "gm";
    int n = 0;
    bool mesh = false;
    std::string out = "-";
};

int run_build_unitary(const BuildUnitaryArgs& args) {
    const Kind kind = kind_from_string(args.kind);
    const int n = (args.n == 0 && kind == Kind::Hadamard12) ? 12 : args.n;
    if (n == 0) fail(Errc::InvalidArgument, "--n is required for this kind");
    const Interferometer itf = build_kind(kind, n);
    if (args.mesh) {
        if (itf.mesh.empty())
            fail(Errc::InvalidArgument,
                 "no splitter-mesh decomposition for kind '" + args.kind + "'");
        write_json(args.out, mesh_to_json(itf.mesh));
    } else {
        write_json(args.out, unitary_to_json(itf));
    }
    return 0;
}

struct MeasureArgs {
    std::string kind = "gm";
    int n = 0;
    double phi = 0.0;
    std::string signs;
    std::string backend = "auto";
    double tol = 1e-9;
    double prior_plus = 0.5;
    bool patterns = false;
    std::string out = "-";
    std::string patterns_csv;
};

int run_measure(const MeasureArgs& args) {
    const Kind kind = kind_from_string(args.kind);
    const int n = (args.n == 0 && kind == Kind::Hadamard12) ? 12 : args.n;
    if (n == 0) fail(Errc::InvalidArgument, "--n is required for this kind");
    const Interferometer itf = build_kind(kind, n);

    const std::vector<int> ancillas = args.signs.empty()
                                          ? std::vector<int>(n - 1, +1)
                                          : signs_from_string(args.signs, n);
    MeasureOptions opts;
    opts.backend = backend_choice_from_string(args.backend);
    opts.tol = args.tol;
    opts.prior_plus = args.prior_plus;
    opts.keep_patterns = args.patterns || !args.patterns_csv.empty();

    const MeasurementReport rep = run_measurement(itf, args.phi, ancillas, opts);
    write_json(args.out, report_to_json(rep));
    if (!args.patterns_csv.empty()) write_text(args.patterns_csv, patterns_to_csv(rep));

    if (!rep.all_checks_pass()) {
        for (const auto& c : rep.checks)
            if (!c.pass)
                std::fprintf(stderr, "consistency check failed: %s (expected %s, got %s)\n",
                             c.name.c_str(), c.expected.c_str(), c.got.c_str());
        return 2;
    }
    return 0;
}

struct SweepArgs {
    std::string kinds = "qft,gm";
    std::string range = "2..8";
    double phi = 0.0;
    std::string csv = "-";
    std::string json;
};

int run_sweep_cmd(const SweepArgs& args) {
    std::vector<Kind> kinds;
    std::string cell;
    for (std::size_t pos = 0; pos <= args.kinds.size(); ++pos) {
        if (pos == args.kinds.size() || args.kinds[pos] == ',') {
            if (!cell.empty()) kinds.push_back(kind_from_string(cell));
            cell.clear();
        } else {
            cell.push_back(args.kinds[pos]);
        }
    }

    int n_min = 0, n_max = 0;
    const std::size_t dots = args.range.find("..");
    try {
        if (dots == std::string::npos) {
            n_min = n_max = std::stoi(args.range);
        } else {
            n_min = std::stoi(args.range.substr(0, dots));
            n_max = std::stoi(args.range.substr(dots + 2));
        }
    } catch (const std::exception&) {
        fail(Errc::InvalidArgument, "bad mode range '" + args.range + "' (use N or A..B)");
    }

    const SweepResult sweep = run_sweep(kinds, n_min, n_max, args.phi);
    for (const auto& w : sweep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

    if (!args.json.empty()) write_json(args.json, sweep_to_json(sweep));
    if (args.json.empty() || args.csv != "-") write_text(args.csv, sweep_to_csv(sweep));
    return 0;
}

struct CoherentArgs {
    int n = 2;
    double alpha = 0.0;
    int cutoff = 0;
    std::string method = "closed_form";
    std::string out = "-";
};

int run_coherent(const CoherentArgs& args) {
    CoherentResult result;
    if (args.method == "closed_form" && args.n == 2) {
        const double p = bs_coherent_success(args.alpha);
        result.n = 2;
        result.alpha = args.alpha;
        result.cutoff = 0; // closed form needs no truncation
        result.p_plus = p;
        result.p_minus = p;
    } else if (args.method == "closed_form" || args.method == "series") {
        result = gm_coherent_success(args.n, args.alpha, args.cutoff);
    } else if (args.method == "fock_sim") {
        result = gm_coherent_success_fock(args.n, args.alpha, args.cutoff);
    } else {
        fail(Errc::InvalidArgument,
             "unknown method '" + args.method + "' (closed_form|series|fock_sim)");
    }
    write_json(args.out, coherent_to_json(result, args.method));
    return 0;
}

struct VerifyArgs {
    std::string scope = "all";
    bool extended = false;
};

int run_verify(const VerifyArgs& args) {
    VerifyOptions opts;
    opts.scope = args.scope;
    opts.extended = args.extended;
    const VerifySummary summary = run_verification(opts);
    for (const auto& c : summary.checks)
        std::printf("[%s] %s/%s  expected=%s  got=%s\n", c.pass ? "PASS" : "FAIL",
                    c.scope.c_str(), c.name.c_str(), c.expected.c_str(), c.got.c_str());
    std::printf("%zu checks, %d failed\n", summary.checks.size(), summary.failed);
    return summary.all_pass() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-rail qubit measurement toolkit: interferometers, exact "
                 "photon-counting statistics, coherent-ancilla schemes"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from an INI/TOML file");

    BuildUnitaryArgs bu;
    auto* cmd_bu = app.add_subcommand("build-unitary", "emit an interferometer as JSON");
    cmd_bu->add_option("--kind", bu.kind, "qft | gm | hadamard12")->capture_default_str();
    cmd_bu->add_option("--n", bu.n, "mode count (defaults to 12 for hadamard12)");
    cmd_bu->add_flag("--mesh", bu.mesh, "emit the splitter mesh instead of the matrix");
    cmd_bu->add_option("--out", bu.out, "output path, '-' for stdout")->capture_default_str();

    MeasureArgs me;
    auto* cmd_me = app.add_subcommand("measure", "run the two-hypothesis experiment");
    cmd_me->add_option("--kind", me.kind, "qft | gm | hadamard12")->capture_default_str();
    cmd_me->add_option("--n", me.n, "mode count (defaults to 12 for hadamard12)");
    cmd_me->add_option("--phi", me.phi, "shared azimuth phase")->capture_default_str();
    cmd_me->add_option("--signs", me.signs,
                       "ancilla signs for modes 2..n, e.g. '+-+' (default all +)");
    cmd_me->add_option("--backend", me.backend, "auto | float | exact")->capture_default_str();
    cmd_me->add_option("--tol", me.tol, "float-backend classification tolerance")
        ->capture_default_str();
    cmd_me->add_option("--prior-plus", me.prior_plus, "prior weight of the plus hypothesis")
        ->capture_default_str();
    cmd_me->add_flag("--patterns", me.patterns, "include per-pattern rows in the JSON report");
    cmd_me->add_option("--out", me.out, "report path, '-' for stdout")->capture_default_str();
    cmd_me->add_option("--patterns-csv", me.patterns_csv, "also write per-pattern CSV here");

    SweepArgs sw;
    auto* cmd_sw = app.add_subcommand("sweep", "run many (kind, n) experiments");
    cmd_sw->add_option("--kinds", sw.kinds, "comma-separated kinds")->capture_default_str();
    cmd_sw->add_option("--n", sw.range, "mode range, N or A..B")->capture_default_str();
    cmd_sw->add_option("--phi", sw.phi, "shared azimuth phase")->capture_default_str();
    cmd_sw->add_option("--csv", sw.csv, "CSV path, '-' for stdout")->capture_default_str();
    cmd_sw->add_option("--json", sw.json, "also write the full JSON report here");

    CoherentArgs co;
    auto* cmd_co = app.add_subcommand("coherent", "coherent-ancilla success probabilities");
    cmd_co->add_option("--n", co.n, "mode count")->capture_default_str();
    cmd_co->add_option("--alpha", co.alpha, "coherent amplitude")->required();
    cmd_co->add_option("--cutoff", co.cutoff, "truncation depth (0 = automatic)")
        ->capture_default_str();
    cmd_co->add_option("--method", co.method, "closed_form | series | fock_sim")
        ->capture_default_str();
    cmd_co->add_option("--out", co.out, "output path, '-' for stdout")->capture_default_str();

    VerifyArgs ve;
    auto* cmd_ve = app.add_subcommand("verify", "run the built-in cross-checks");
    cmd_ve->add_option("--scope", ve.scope,
                       "all | unitaries | fock | measurement | analytic | coherent | golden")
        ->capture_default_str();
    cmd_ve->add_flag("--extended", ve.extended, "add the slower 9- and 10-mode checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_bu->parsed()) return run_build_unitary(bu);
        if (cmd_me->parsed()) return run_measure(me);
        if (cmd_sw->parsed()) return run_sweep_cmd(sw);
        if (cmd_co->parsed()) return run_coherent(co);
        if (cmd_ve->parsed()) return run_verify(ve);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
