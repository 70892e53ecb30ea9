// Copyright 2026 The cqtsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>

#include <CLI11.hpp>

#include "cli_internal.hpp"
#include "cqt/cli.hpp"
#include "cqt/estimation.hpp"
#include "cqt/reference_data.hpp"
#include "cqt/source_fit.hpp"

namespace cqt::cli {

namespace {

struct GlobalOptions {
    OutputOptions output;
    std::string format = "csv";
    std::optional<uint64_t> seed;
};

// Lets real-valued options take "a/b" like the grids do.
const CLI::Validator kFraction(
    [](std::string &s) {
        try {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", parse_real(s));
            s = buf;
        } catch (const UsageError &e) {
            return std::string(e.what());
        }
        return std::string();
    },
    "REAL", "fraction");

uint64_t require_seed(const GlobalOptions &g, const std::string &what) {
    if (!g.seed) {
        throw UsageError(what + " is stochastic and needs --seed");
    }
    return *g.seed;
}

void check_weight(double w) {
    if (!(w >= 0.0 && w < 1.0)) {
        throw UsageError("--weight must satisfy 0 <= w < 1");
    }
}

Cell opt(const std::optional<double> &v) { return v ? Cell{*v} : Cell{Null{}}; }

std::string jones_label(const Jones &j) {
    for (const char *l : {"H", "V", "D", "A", "R", "L"}) {
        if (std::abs(std::abs(qubit::from_label(l).dot(j)) - 1.0) < 1e-12) {
            return l;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "jones:%.6g;%.6g;%.6g;%.6g", j(0).real(), j(0).imag(), j(1).real(), j(1).imag());
    return buf;
}

Table reproduce_table1() {
    Table t;
    t.command = "reproduce-table1";
    t.columns = {"channel", "scenario", "raw", "weight", "corrected", "published", "delta_pp"};
    for (const auto &m : measured_fidelities()) {
        double c = corrected_fidelity(m.raw, m.background_weight);
        t.rows.push_back({m.channel, m.scenario, m.raw, m.background_weight, c, m.corrected,
                          100.0 * (c - m.corrected)});
    }
    return t;
}

Table run_table(const RunOptions &o, const GlobalOptions &g) {
    if (!o.reproduce.empty()) {
        if (o.reproduce != "table1") {
            throw UsageError("unknown table '" + o.reproduce + "'");
        }
        return reproduce_table1();
    }
    check_weight(o.weight);
    if (!(o.p >= 0.0 && o.p <= 1.0)) {
        throw UsageError("--p must lie in [0, 1]");
    }
    CountRecord rec;
    ProtocolConfig shown;
    if (o.channel == "mix") {
        ProtocolConfig c1 = make_protocol_config(o, ChannelVariant::G1);
        ProtocolConfig c2 = make_protocol_config(o, ChannelVariant::G2);
        rec = emulate_mixture(run_counts(c1), run_counts(c2), o.p);
        shown = c1;
    } else {
        shown = make_protocol_config(o, parse_channel(o.channel));
        rec = run_counts(shown);
    }
    const double f = rec.fidelity();
    std::optional<double> corrected, estimate, sigma;
    if (o.weight > 0.0) {
        corrected = corrected_fidelity(f, o.weight);
    }
    if (o.exposure) {
        if (!(*o.exposure > 0.0)) {
            throw UsageError("--exposure must be positive");
        }
        uint64_t seed = require_seed(g, "--exposure");
        FidelityEstimate e = poisson_uncertainty(*o.exposure * f, *o.exposure * (1.0 - f), o.resamples, seed, o.weight);
        estimate = e.value;
        sigma = e.uncertainty;
    }
    std::optional<double> undesired;
    if (shown.source) {
        undesired = rec.undesired_fraction();
    }
    Table t;
    t.command = "run";
    t.columns = {"channel",  "p",          "action",   "input",    "source",  "eps",
                 "f_parallel", "f_perp",   "success_probability", "fidelity", "undesired_fraction",
                 "corrected_fidelity", "estimate", "uncertainty"};
    t.rows.push_back({o.channel, o.channel == "mix" ? Cell{o.p} : Cell{Null{}}, to_string(shown.action),
                      jones_label(shown.input.jones()), std::string(shown.source ? "spdc" : "ideal"),
                      shown.pbs_epsilon, rec.f_parallel, rec.f_perp, rec.success_probability, f, opt(undesired),
                      opt(corrected), opt(estimate), opt(sigma)});
    if (shown.source) {
        t.notes.emplace_back("ratio", std::abs(shown.source->kappa_backward / shown.source->kappa_forward));
    }
    if (o.exposure) {
        t.notes.emplace_back("seed", static_cast<long long>(*g.seed));
    }
    return t;
}

Table scan_table(const std::string &q_list, int points, bool q_given) {
    std::vector<double> grid;
    if (q_given) {
        grid = parse_real_list(q_list);
        if (grid.empty()) {
            throw UsageError("empty q grid");
        }
    } else {
        if (points < 2) {
            throw UsageError("--points must be at least 2");
        }
        for (int i = 0; i < points; i++) {
            grid.push_back(static_cast<double>(i) / (points - 1));
        }
    }
    for (double q : grid) {
        if (!(q >= 0.0 && q <= 1.0)) {
            throw UsageError("q values must lie in [0, 1]");
        }
    }
    Table t;
    t.command = "scan-werner";
    t.columns = {"q", "f_allowed", "f_denied", "f_allowed_plus", "f_denied_plus", "above_classical"};
    for (const auto &r : werner_scan(grid)) {
        t.rows.push_back({r.q, r.f_allowed, r.f_denied, r.f_allowed_plus, r.f_denied_plus,
                          r.f_allowed > kClassicalLimit + 1e-12});
    }
    t.notes.emplace_back("classical_limit", kClassicalLimit);
    t.notes.emplace_back("threshold_q", werner_threshold());
    return t;
}

Table fit_table(const std::string &targets_spec, double eps, bool toy) {
    std::vector<FitTarget> targets;
    FitOptions opts;
    if (toy) {
        // Forward pair in HH and a fixed H analyzer: no double pair can click all four detectors.
        ProtocolConfig c;
        c.variant = ChannelVariant::UncontrolledReference;
        c.action = CharlieAction::None;
        c.input = InputQubit::from_label("+");
        c.source = SourceParams{};
        c.pbs_epsilon = 0.0;
        c.analyzer = BobAnalyzer::along(qubit::h());
        opts.base.forward_pair = PairPolarization::product_hh();
        targets.push_back({"toy", c, 0.0});
    } else {
        auto v = parse_real_list(targets_spec);
        if (v.size() != 3) {
            throw UsageError("--targets needs three fractions: reference,allowed,denied");
        }
        targets = default_fit_targets(eps, v[0], v[1], v[2]);
    }
    FitResult fit = fit_ratio(targets, opts);
    Table t;
    t.command = "fit-spdc";
    t.columns = {"config", "target", "achieved", "residual"};
    for (const auto &r : fit.rows) {
        t.rows.push_back({r.name, r.target, r.achieved, r.residual});
    }
    t.notes.emplace_back("ratio", fit.ratio);
    t.notes.emplace_back("sse", fit.sse);
    t.notes.emplace_back("converged", fit.converged);
    t.notes.emplace_back("unconstrained", fit.unconstrained);
    return t;
}

struct TomoOptions {
    std::string counts;
    std::string target = "plus";
    double weight = 0.0;
    int resamples = 0;
};

Table tomo_table(const TomoOptions &o, const GlobalOptions &g) {
    std::ifstream in(o.counts);
    if (!in) {
        throw UsageError("cannot read counts file '" + o.counts + "'");
    }
    ProjectionCounts counts = parse_counts_csv(in);
    Jones target;
    try {
        target = parse_projector(o.target);
    } catch (const CsvError &) {
        throw UsageError("unknown target state '" + o.target + "'");
    }
    check_weight(o.weight);
    if (counts.informational_rank() < 4) {
        throw UsageError("counts are not informationally complete");
    }
    MlResult ml = ml_reconstruct(counts);
    CorrectionResult corr = correct_for_background(ml.rho, {o.weight});
    std::optional<double> estimate, sigma;
    if (o.resamples > 0) {
        FidelityEstimate e = poisson_uncertainty(counts, target, o.resamples, require_seed(g, "--resamples"), o.weight);
        estimate = e.value;
        sigma = e.uncertainty;
    }
    Table t;
    t.command = "tomo";
    t.columns = {"fidelity_raw", "fidelity_corrected", "clipped", "iterations", "converged", "estimate", "uncertainty",
                 "rho00_re", "rho00_im", "rho01_re", "rho01_im", "rho10_re", "rho10_im", "rho11_re", "rho11_im"};
    std::vector<Cell> row{fidelity(ml.rho, target), fidelity(corr.rho, target), corr.clipped,
                          static_cast<long long>(ml.iterations), ml.converged, opt(estimate), opt(sigma)};
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            row.push_back(corr.rho(r, c).real());
            row.push_back(corr.rho(r, c).imag());
        }
    }
    t.rows.push_back(row);
    t.notes.emplace_back("weight", o.weight);
    return t;
}

}  // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Controlled teleportation simulator", "cqtsim"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI file; [section] per subcommand, angles in degrees");
    app.config_formatter(std::make_shared<CLI::ConfigINI>());

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Seed for stochastic steps");
    app.add_option("--out", g.output.out, "Output file ('-' for stdout)");
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--full-precision", g.output.full_precision, "Print 17 significant digits");

    RunOptions run;
    auto *run_cmd = app.add_subcommand("run", "Simulate one configuration");
    run_cmd->add_option("--channel", run.channel, "g1, g2, ref or mix")
        ->check(CLI::IsMember({"g1", "g2", "ref", "mix"}));
    run_cmd->add_option("--p", run.p, "G2 weight for --channel mix")->transform(kFraction);
    run_cmd->add_option("--action", run.action, "allow, deny or none")->check(CLI::IsMember({"allow", "deny", "none"}));
    run_cmd->add_option("--input", run.input, "Input state label (H V D A R L plus minus)");
    run_cmd->add_option("--input-theta-deg", run.input_theta_deg, "Input polar angle on the Bloch sphere");
    run_cmd->add_option("--input-phi-deg", run.input_phi_deg, "Input azimuth on the Bloch sphere");
    run_cmd->add_flag("--ideal", run.ideal, "Ideal single-photon source");
    run_cmd->add_option("--kappa", run.kappa, "Larger of the two pair-creation strengths")->transform(kFraction);
    run_cmd->add_option("--ratio", run.ratio, "|kappa_b / kappa_f|")->transform(kFraction);
    run_cmd->add_option("--eps", run.eps, "PBS H reflectivity")->transform(kFraction);
    run_cmd->add_option("--roles", run.roles, "Modes of sender,receiver,controller");
    run_cmd->add_option("--weight", run.weight, "Background weight for the corrected fidelity")->transform(kFraction);
    run_cmd->add_option("--exposure", run.exposure, "Expected four-fold events for Poisson errors");
    run_cmd->add_option("--resamples", run.resamples, "Poisson resamples")->check(CLI::Range(100, 100000000));
    run_cmd->add_option("--reproduce", run.reproduce, "Reproduce a published table (table1)");

    std::string q_list;
    int points = 101;
    auto *scan_cmd = app.add_subcommand("scan-werner", "Teleportation fidelity through Werner channels");
    auto *q_opt = scan_cmd->add_option("--q", q_list, "Comma-separated q values (fractions allowed)");
    scan_cmd->add_option("--points", points, "Uniform grid size on [0, 1]");

    std::string targets = "0.130,0.554,0.301";  // ignored with --toy
    double fit_eps = kPbsReflectionH;
    bool toy = false;
    auto *fit_cmd = app.add_subcommand("fit-spdc", "Fit the backward/forward strength ratio");
    fit_cmd->add_option("--targets", targets, "Undesired fractions: reference,allowed,denied");
    fit_cmd->add_option("--eps", fit_eps, "PBS H reflectivity")->transform(kFraction)->check(CLI::Range(0.0, 1.0));
    fit_cmd->add_flag("--toy", toy, "Degenerate configuration where double pairs never click");

    TomoOptions tomo;
    auto *tomo_cmd = app.add_subcommand("tomo", "Maximum-likelihood reconstruction from counts");
    tomo_cmd->add_option("--counts", tomo.counts, "CSV: label,projector,count")->required();
    tomo_cmd->add_option("--target", tomo.target, "Target state label or jones:are;aim;bre;bim");
    tomo_cmd->add_option("--weight", tomo.weight, "Background weight")->transform(kFraction);
    tomo_cmd->add_option("--resamples", tomo.resamples, "Poisson resamples (0 disables)")
        ->check(CLI::Range(0, 100000000));

    std::string table_name;
    auto *repro_cmd = app.add_subcommand("reproduce", "Reproduce a published table");
    repro_cmd->add_option("table", table_name, "Table name (table1)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "cqtsim: " << e.what() << "\n";
        return kExitUsage;
    }
    g.output.format = g.format == "json" ? Format::Json : Format::Csv;

    try {
        Table t;
        if (*run_cmd) {
            t = run_table(run, g);
        } else if (*scan_cmd) {
            t = scan_table(q_list, points, q_opt->count() > 0);
        } else if (*fit_cmd) {
            t = fit_table(targets, fit_eps, toy);
        } else if (*tomo_cmd) {
            t = tomo_table(tomo, g);
        } else if (*repro_cmd) {
            if (table_name != "table1") {
                throw UsageError("unknown table '" + table_name + "'");
            }
            t = reproduce_table1();
        }
        emit(t, g.output, out);
        return kExitOk;
    } catch (const UsageError &e) {
        err << "cqtsim: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CsvError &e) {
        err << "cqtsim: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "cqtsim: error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace cqt::cli
