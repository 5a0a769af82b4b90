// Copyright 2026 The pcmzi developers
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
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcmzi/catalysis.hpp"
#include "pcmzi/errors.hpp"
#include "pcmzi/fock.hpp"
#include "pcmzi/ideal.hpp"
#include "pcmzi/lossy.hpp"
#include "pcmzi/sweep.hpp"

namespace {

using pcmzi::sweep::Engine;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitDegenerate = 4;

constexpr double kEngineAgreement = 1e-8;

struct GlobalOpts {
    std::string engine = "closed_form";
    int nmax = 60;
    std::string format = "csv";
};

/// Named scalar results, printed either as "name,value" CSV lines or as one
/// JSON object.
struct Report {
    std::vector<std::pair<std::string, double>> items;

    void add(const std::string& name, double v) { items.emplace_back(name, v); }

    void print(const std::string& format) const {
        if (format == "json") {
            nlohmann::json j;
            for (const auto& [k, v] : items) {
                if (std::isfinite(v)) {
                    j[k] = v;
                } else {
                    j[k] = pcmzi::sweep::format_value(v);
                }
            }
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& [k, v] : items) {
                std::cout << k << "," << pcmzi::sweep::format_value(v) << "\n";
            }
        }
    }
};

/// Evaluates a quantity under the chosen engine(s), appending paired delta
/// entries for engine=both. Returns the worst relative delta seen.
double emit(Report& rep, const std::string& name, Engine eng, const std::function<double()>& cf,
            const std::function<double()>& oracle) {
    if (eng == Engine::closed_form) {
        rep.add(name, cf());
        return 0;
    }
    if (eng == Engine::oracle) {
        rep.add(name, oracle());
        return 0;
    }
    const double a = cf();
    const double b = oracle();
    const double rel = std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
    rep.add(name + "_cf", a);
    rep.add(name + "_oracle", b);
    rep.add(name + "_delta_rel", rel);
    return rel;
}

pcmzi::SystemParams make_params(double alpha, double r, double eta, int m) {
    pcmzi::SystemParams p;
    p.alpha = alpha;
    p.r = r;
    p.eta = eta;
    p.m = m;
    p.validate();
    return p;
}

void add_param_opts(CLI::App* cmd, double& alpha, double& r, double& eta, int& m) {
    cmd->add_option("--alpha", alpha, "Coherent amplitude");
    cmd->add_option("--r", r, "Squeezing parameter");
    cmd->add_option("--eta", eta, "Catalysis beam-splitter transmissivity");
    cmd->add_option("--m", m, "Catalysis photon number");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase estimation for an MZI fed with a coherent state and a photon-catalyzed "
                 "squeezed vacuum state"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--engine", g.engine, "closed_form | oracle | both")->capture_default_str();
    app.add_option("--nmax", g.nmax, "Fock-space truncation for the oracle engine")->capture_default_str();
    app.add_option("--format", g.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    double alpha = 0, r = 0, eta = 1, phi = 0;
    int m = 0;
    double t1 = 1, t2 = 1, t = 1;
    std::string loss_kind = "external";
    std::string spec_path, fig_id, out_dir = ".";
    double grid_floor = 0.01;

    auto* c_state = app.add_subcommand("state", "Catalyzed-state diagnostics: P_m, n_b, N");
    add_param_opts(c_state, alpha, r, eta, m);

    auto* c_parity = app.add_subcommand("parity", "Parity expectation at phase phi");
    add_param_opts(c_parity, alpha, r, eta, m);
    c_parity->add_option("--phi", phi, "Phase (rad)")->required();

    auto* c_sens = app.add_subcommand("sensitivity", "Phase sensitivity from the parity signal");
    add_param_opts(c_sens, alpha, r, eta, m);
    c_sens->add_option("--phi", phi, "Phase (rad)")->required();

    auto* c_qfi = app.add_subcommand("qfi", "Quantum Fisher information");
    add_param_opts(c_qfi, alpha, r, eta, m);

    auto* c_qcrb = app.add_subcommand("qcrb", "Quantum Cramer-Rao bound with SQL/HL benchmarks");
    add_param_opts(c_qcrb, alpha, r, eta, m);

    auto* c_loss = app.add_subcommand("loss", "Lossy parity / sensitivity / Fisher information");
    add_param_opts(c_loss, alpha, r, eta, m);
    c_loss->add_option("--phi", phi, "Phase (rad)");
    c_loss->add_option("--kind", loss_kind, "external | internal | qfi")
        ->check(CLI::IsMember({"external", "internal", "qfi"}))
        ->capture_default_str();
    c_loss->add_option("--t1", t1, "External transmissivity")->capture_default_str();
    c_loss->add_option("--t2", t2, "Internal transmissivity")->capture_default_str();
    c_loss->add_option("--t", t, "Channel transmissivity for the lossy Fisher bound")
        ->capture_default_str();

    auto* c_opt = app.add_subcommand("optimize-eta", "Best catalysis transmissivity at a phase");
    add_param_opts(c_opt, alpha, r, eta, m);
    c_opt->add_option("--phi", phi, "Phase (rad)")->required();
    c_opt->add_option("--grid-floor", grid_floor, "Lower edge of the eta search grid")
        ->capture_default_str();

    auto* c_sweep = app.add_subcommand("sweep", "Run a sweep described by a JSON spec");
    c_sweep->add_option("--spec", spec_path, "Path to the sweep spec")->required();
    std::string sweep_out;
    c_sweep->add_option("--out", sweep_out, "Output file (default: stdout)");

    auto* c_fig = app.add_subcommand("figure", "Reproduce a figure dataset as CSV + sidecar JSON");
    c_fig->add_option("id", fig_id, "Figure panel id (see docs)")->required();
    c_fig->add_option("--out", out_dir, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        const Engine eng = pcmzi::sweep::engine_from_string(g.engine);
        Report rep;
        double worst = 0;

        auto oracle_state = [&] { return pcmzi::fock::prepare_pcsvs(make_params(0, r, eta, m), g.nmax); };

        if (c_state->parsed()) {
            const pcmzi::SystemParams p = make_params(alpha, r, eta, m);
            worst = std::max(worst, emit(rep, "pm", eng, [&] { return pcmzi::build_kernel(p).pm; },
                                         [&] { return oracle_state().second; }));
            worst = std::max(worst, emit(rep, "nb", eng, [&] { return pcmzi::mean_photon_b(p); },
                                         [&] { return pcmzi::fock::mean_photon(oracle_state().first); }));
            worst = std::max(
                worst, emit(rep, "nbar", eng, [&] { return pcmzi::total_mean_photons(p); },
                            [&] {
                                return alpha * alpha + pcmzi::fock::mean_photon(oracle_state().first);
                            }));
        } else if (c_parity->parsed()) {
            const pcmzi::SystemParams p = make_params(alpha, r, eta, m);
            worst = emit(rep, "parity", eng, [&] { return pcmzi::parity_expectation(p, phi); },
                         [&] {
                             const auto out = pcmzi::fock::mzi_output(oracle_state().first, alpha, phi, g.nmax);
                             return pcmzi::fock::parity_b(out);
                         });
        } else if (c_sens->parsed()) {
            const pcmzi::SystemParams p = make_params(alpha, r, eta, m);
            rep.add("sensitivity", pcmzi::phase_sensitivity(p, phi));
        } else if (c_qfi->parsed()) {
            const pcmzi::SystemParams p = make_params(alpha, r, eta, m);
            worst = emit(rep, "qfi", eng, [&] { return pcmzi::qfi(p); },
                         [&] { return pcmzi::fock::qfi_numeric(p, g.nmax); });
        } else if (c_qcrb->parsed()) {
            const pcmzi::SystemParams p = make_params(alpha, r, eta, m);
            const double nbar = pcmzi::total_mean_photons(p);
            rep.add("qcrb", pcmzi::qcrb(p));
            rep.add("sql", pcmzi::benchmarks(nbar).first);
            rep.add("hl", pcmzi::benchmarks(nbar).second);
        } else if (c_loss->parsed()) {
            const pcmzi::SystemParams p = make_params(alpha, r, eta, m);
            pcmzi::LossConfig lc;
            lc.t1 = t1;
            lc.t2 = t2;
            lc.t = t;
            lc.validate();
            if (loss_kind == "qfi") {
                rep.add("f_ql", pcmzi::qfi_lossy(p, t));
                rep.add("qcrb_l", pcmzi::qcrb_lossy(p, t));
            } else {
                const pcmzi::LossKind kind =
                    loss_kind == "external" ? pcmzi::LossKind::external : pcmzi::LossKind::internal;
                worst = emit(
                    rep, "parity", eng,
                    [&] {
                        return kind == pcmzi::LossKind::external ? pcmzi::parity_external(p, phi, t1)
                                                                 : pcmzi::parity_internal(p, phi, t2);
                    },
                    [&] {
                        const auto st = oracle_state().first;
                        if (kind == pcmzi::LossKind::internal) {
                            return pcmzi::fock::parity_internal_lossy(st, alpha, phi, t2, g.nmax);
                        }
                        const auto out = pcmzi::fock::mzi_output(st, alpha, phi, g.nmax);
                        return pcmzi::fock::parity_after_external_loss(out, t1);
                    });
                rep.add("sensitivity", pcmzi::sensitivity_lossy(p, phi, lc, kind));
            }
        } else if (c_opt->parsed()) {
            const pcmzi::SystemParams p = make_params(alpha, r, eta, m);
            const auto res = pcmzi::sweep::optimize_eta(p, phi, grid_floor);
            rep.add("phi", res.phi);
            rep.add("eta_opt", res.eta_opt);
            rep.add("sensitivity_at_opt", res.sensitivity_at_opt);
        } else if (c_sweep->parsed()) {
            std::ifstream in(spec_path);
            if (!in) {
                throw pcmzi::UsageError("cannot read spec file: " + spec_path);
            }
            nlohmann::json j = nlohmann::json::parse(in);
            pcmzi::sweep::SweepSpec spec = pcmzi::sweep::SweepSpec::from_json(j);
            spec.engine = eng;
            spec.nmax = g.nmax;
            const pcmzi::sweep::Table table = pcmzi::sweep::run_sweep(spec);

            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!sweep_out.empty()) {
                file.open(sweep_out);
                if (!file) {
                    throw pcmzi::UsageError("cannot write " + sweep_out);
                }
                out = &file;
            }
            if (g.format == "json") {
                *out << pcmzi::sweep::table_to_json(table).dump(2) << "\n";
            } else {
                pcmzi::sweep::write_csv(table, *out);
            }

            bool any_ok = false;
            for (const auto& e : table.errors) {
                if (e.empty()) {
                    any_ok = true;
                }
            }
            if (!any_ok) {
                std::cerr << "error: every sweep point is degenerate or infeasible\n";
                return kExitDegenerate;
            }
            if (eng == Engine::both) {
                const double delta = pcmzi::sweep::max_relative_delta(table);
                std::cerr << "max_delta_rel," << pcmzi::sweep::format_value(delta) << "\n";
                if (delta > kEngineAgreement) {
                    std::cerr << "error: engines disagree beyond " << kEngineAgreement << "\n";
                    return kExitInconsistent;
                }
            }
            return kExitOk;
        } else if (c_fig->parsed()) {
            const std::string path = pcmzi::sweep::write_figure(fig_id, out_dir);
            std::cout << path << "\n";
            return kExitOk;
        }

        rep.print(g.format);
        if (eng == Engine::both && worst > kEngineAgreement) {
            std::cerr << "error: engines disagree beyond " << kEngineAgreement << "\n";
            return kExitInconsistent;
        }
        return kExitOk;
    } catch (const pcmzi::DegeneratePointError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const pcmzi::ConsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
