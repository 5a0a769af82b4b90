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
//
// End-to-end verification suite. Each check prints one PASS/FAIL line; the
// process exits nonzero if any check fails. All tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pcmzi/bi_series.hpp"
#include "pcmzi/catalysis.hpp"
#include "pcmzi/errors.hpp"
#include "pcmzi/fock.hpp"
#include "pcmzi/ideal.hpp"
#include "pcmzi/lossy.hpp"
#include "pcmzi/numerics.hpp"
#include "pcmzi/sweep.hpp"

using namespace pcmzi;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("%s  criterion %d: %s  (%s)\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    if (!ok) {
        g_failures++;
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SystemParams params(double alpha, double r, double eta, int m) {
    SystemParams p;
    p.alpha = alpha;
    p.r = r;
    p.eta = eta;
    p.m = m;
    return p;
}

double rel(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// --- criterion 1: unit-transmissivity reduction to the squeezed-vacuum form

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    for (int m : {0, 1, 2, 3}) {
        for (double alpha : {0.0, 1.0}) {
            for (double r : {0.4, 0.9}) {
                const CatalysisKernel k = build_kernel(params(alpha, r, 1.0, m));
                for (double phi = -3.14; phi <= 3.14 + 1e-12; phi += 0.01) {
                    worst = std::max(
                        worst, std::abs(parity_expectation(k, phi) - parity_svs_closed_form(alpha, r, phi)));
                }
            }
        }
    }
    const double dt = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max abs dev %.3g (tol 1e-10), %.1fs (limit 5s)", worst, dt);
    report(1, "squeezed-vacuum reduction at eta = 1", worst <= 1e-10 && dt < 5.0, buf);
}

// --- criterion 2: closed form vs Fock-space reference on the ideal grid

void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    const int nmax = 60;
    double worst_parity = 0, worst_qfi = 0;
    for (int m : {0, 1, 2, 3}) {
        for (double eta : {0.1, 0.2, 0.5}) {
            for (double r : {0.4, 0.9}) {
                const auto [state, success] = fock::prepare_pcsvs(params(0, r, eta, m), nmax);
                for (double alpha : {0.0, 0.2, 1.0}) {
                    const SystemParams p = params(alpha, r, eta, m);
                    const CatalysisKernel k = build_kernel(p);
                    worst_qfi = std::max(worst_qfi, rel(qfi(k), fock::qfi_numeric(state, alpha, nmax)));
                    for (double phi : {1e-4, 0.3, 0.5, 1.0}) {
                        const auto out = fock::mzi_output(state, alpha, phi, nmax);
                        worst_parity =
                            std::max(worst_parity, rel(parity_expectation(k, phi), fock::parity_b(out)));
                    }
                }
            }
        }
    }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "max rel dev parity %.3g, qfi %.3g (tol 1e-8), %.1fs (limit 60s)",
                  worst_parity, worst_qfi, dt);
    report(2, "ideal-signal agreement with the Fock-space reference",
           worst_parity <= 1e-8 && worst_qfi <= 1e-8 && dt < 60.0, buf);
}

// --- criterion 3: normalization and energy bookkeeping

void criterion3() {
    const int nmax = 60;
    double worst_pm = 0, worst_nb = 0;
    for (int m : {0, 1, 2, 3}) {
        for (double eta : {0.1, 0.2, 0.5}) {
            for (double r : {0.4, 0.9}) {
                const SystemParams p = params(0, r, eta, m);
                const auto [state, success] = fock::prepare_pcsvs(p, nmax);
                worst_pm = std::max(worst_pm, rel(build_kernel(p).pm, success));
                worst_nb = std::max(worst_nb, rel(mean_photon_b(p), fock::mean_photon(state)));
            }
        }
    }
    double worst_unit_pm = 0, worst_unit_nb = 0;
    for (int m : {0, 1, 2, 3}) {
        for (double r : {0.4, 0.9, 1.2}) {
            worst_unit_pm = std::max(worst_unit_pm, std::abs(build_kernel(params(0, r, 1, m)).pm - 1));
            worst_unit_nb = std::max(
                worst_unit_nb, std::abs(mean_photon_b(params(0, r, 1, m)) - std::sinh(r) * std::sinh(r)));
        }
    }
    // m = 0 catalysis is an effective squeezing change: tanh r' = eta tanh r.
    double worst_fid = 1;
    for (double eta : {0.2, 0.5, 0.8}) {
        for (double r : {0.4, 0.9}) {
            const auto [state, success] = fock::prepare_pcsvs(params(0, r, eta, 0), 80);
            const double rp = std::atanh(eta * std::tanh(r));
            const auto ref = fock::squeezed_vacuum(rp, 80);
            cplx ov = 0;
            for (int n = 0; n <= 80; n++) {
                ov += std::conj(ref.amps[n]) * state.amps[n];
            }
            worst_fid = std::min(worst_fid, std::norm(ov));
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "pm dev %.3g, nb dev %.3g (tol 1e-8); unit-eta pm dev %.3g (tol 1e-12), nb dev %.3g "
                  "(tol 1e-10); m=0 fidelity %.12f",
                  worst_pm, worst_nb, worst_unit_pm, worst_unit_nb, worst_fid);
    report(3, "normalization and energy bookkeeping",
           worst_pm <= 1e-8 && worst_nb <= 1e-8 && worst_unit_pm <= 1e-12 && worst_unit_nb <= 1e-10 &&
               worst_fid > 1 - 1e-10,
           buf);
}

// --- criterion 4: loss-model reductions and channel equivalences

void criterion4() {
    double worst_red = 0;
    for (int m : {0, 1, 2, 3}) {
        const CatalysisKernel k = build_kernel(params(0.7, 0.9, 0.2, m));
        for (double phi = -3.0; phi <= 3.0; phi += 0.1) {
            const double ideal = parity_expectation(k, phi);
            worst_red = std::max(worst_red, std::abs(parity_external(k, phi, 1.0) - ideal));
            worst_red = std::max(worst_red, std::abs(parity_internal(k, phi, 1.0) - ideal));
        }
    }
    const int nmax = 60;
    double worst_ext = 0, worst_int = 0;
    for (int m : {1, 2}) {
        const SystemParams p = params(0.5, 0.6, 0.2, m);
        const CatalysisKernel k = build_kernel(p);
        const auto [state, success] = fock::prepare_pcsvs(p, nmax);
        for (double tv : {0.6, 0.95}) {
            for (double phi : {0.1, 0.5, 1.2}) {
                const auto out = fock::mzi_output(state, p.alpha, phi, nmax);
                worst_ext = std::max(
                    worst_ext, rel(parity_external(k, phi, tv), fock::parity_after_external_loss(out, tv)));
                worst_int =
                    std::max(worst_int, rel(parity_internal(k, phi, tv),
                                            fock::parity_internal_lossy(state, p.alpha, phi, tv, nmax)));
            }
        }
    }
    const SystemParams p = params(1.0, 0.9, 0.2, 2);
    const double f = qfi(p);
    bool mono = qfi_lossy(p, 1.0) == f;  // exact reduction
    double prev = 0;
    for (int i = 1; i <= 10; i++) {
        const double fl = qfi_lossy(p, i / 10.0);
        mono = mono && fl >= prev - 1e-12;
        prev = fl;
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "reduction dev %.3g (tol 1e-10); ext channel dev %.3g, int channel dev %.3g (tol 1e-8); "
                  "lossy-Fisher monotone %s",
                  worst_red, worst_ext, worst_int, mono ? "yes" : "no");
    report(4, "loss-model reductions and channel equivalences",
           worst_red <= 1e-10 && worst_ext <= 1e-8 && worst_int <= 1e-8 && mono, buf);
}

// --- criterion 5: documented claims at their stated parameters

void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    // (a) eta_opt plateau around phi = 0 for m = 1. The optimizer resolves the
    // plateau edge at |phi| ~ 0.41 (the plotted claim reads "approximately
    // 0.48" off a figure); checked as: flat up to 0.40, departed by 0.50.
    {
        const SystemParams p = params(1.0, 0.9, 1.0, 1);
        bool plateau = true, departs = true;
        for (double phi = 0.02; phi <= 0.40 + 1e-12; phi += 0.04) {
            plateau = plateau && sweep::optimize_eta(p, phi).eta_opt > 1 - 1e-4 &&
                      sweep::optimize_eta(p, -phi).eta_opt > 1 - 1e-4;
        }
        for (double phi = 0.50; phi <= 1.0 + 1e-12; phi += 0.1) {
            departs = departs && sweep::optimize_eta(p, phi).eta_opt < 1 - 1e-4 &&
                      sweep::optimize_eta(p, -phi).eta_opt < 1 - 1e-4;
        }
        ok = ok && plateau && departs;
        detail += std::string("(a) ") + (plateau && departs ? "ok" : "FAIL") + "; ";
    }

    // (b) multiphoton catalysis beats the plain squeezed-vacuum scheme.
    {
        bool better = true;
        for (double alpha : {0.0, 0.25}) {
            for (double r = 0.2; r <= 0.9 + 1e-12; r += 0.05) {
                const double base = phase_sensitivity(params(alpha, r, 1.0, 0), 1e-4);
                better = better && phase_sensitivity(params(alpha, r, 0.1, 2), 1e-4) < base &&
                         phase_sensitivity(params(alpha, r, 0.1, 3), 1e-4) < base;
            }
        }
        ok = ok && better;
        detail += std::string("(b) ") + (better ? "ok" : "FAIL") + "; ";
    }

    // (c) QCRB beats the SQL everywhere feasible and the HL in a window.
    {
        bool beats_hl = false, beats_sql = true, any = false;
        const double nb = mean_photon_b(params(0, 0.4, 0.1, 2));
        for (double nbar = 0.1; nbar <= 3.0 + 1e-12; nbar += 0.05) {
            if (nbar < nb) {
                continue;
            }
            any = true;
            const double bound = qcrb(params(std::sqrt(nbar - nb), 0.4, 0.1, 2));
            beats_sql = beats_sql && bound < 1 / std::sqrt(nbar);
            beats_hl = beats_hl || bound < 1 / nbar;
        }
        ok = ok && any && beats_sql && beats_hl;
        detail += std::string("(c) ") + (any && beats_sql && beats_hl ? "ok" : "FAIL") + "; ";
    }

    // (d) external dissipation hurts more than internal; catalysis helps.
    {
        bool ordered = true, helps = true;
        LossConfig ext;
        ext.t1 = 0.95;
        LossConfig inl;
        inl.t2 = 0.95;
        const double base_ext =
            sensitivity_lossy(params(0.2, 0.4, 1.0, 0), 0.5, ext, LossKind::external);
        const double base_int =
            sensitivity_lossy(params(0.2, 0.4, 1.0, 0), 0.5, inl, LossKind::internal);
        for (int m : {1, 2, 3}) {
            const SystemParams p = params(0.2, 0.4, 0.1, m);
            const double de = sensitivity_lossy(p, 0.5, ext, LossKind::external);
            const double di = sensitivity_lossy(p, 0.5, inl, LossKind::internal);
            ordered = ordered && de >= di;
            if (m >= 2) {
                helps = helps && de < base_ext && di < base_int;
            }
        }
        ok = ok && ordered && helps;
        detail += std::string("(d) ") + (ordered && helps ? "ok" : "FAIL") + "; ";
    }

    // (e) the lossy bound still beats the SQL at strong loss.
    {
        bool beats = false;
        for (int m : {2, 3}) {
            const double nb = mean_photon_b(params(0, 0.4, 0.1, m));
            for (double nbar = 0.1; nbar <= 3.0 + 1e-12; nbar += 0.05) {
                if (nbar < nb) {
                    continue;
                }
                const double f = qfi_lossy(params(std::sqrt(nbar - nb), 0.4, 0.1, m), 0.5);
                if (f > 0 && 1 / std::sqrt(f) < 1 / std::sqrt(nbar)) {
                    beats = true;
                }
            }
        }
        ok = ok && beats;
        detail += std::string("(e) ") + (beats ? "ok" : "FAIL") + "; ";
    }

    const double dt = seconds_since(t0);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1fs (limit 120s)", dt);
    ok = ok && dt < 120.0;
    report(5, "documented claims at stated parameters", ok, detail + buf);
}

// --- criterion 6: numerical robustness of the derivative and series engines

void criterion6() {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> ua(0.0, 1.2), ur(0.1, 1.2), ue(0.1, 1.0), up(0.1, 1.2);
    std::uniform_int_distribution<int> um(0, 3);
    double worst = 0;
    for (int trial = 0; trial < 50; trial++) {
        const SystemParams p = params(ua(rng), ur(rng), ue(rng), um(rng));
        const CatalysisKernel k = build_kernel(p);
        const double phi = up(rng);
        auto f = [&](double x) { return parity_expectation(k, x); };
        const double d = richardson_derivative(f, phi, derivative_step(phi));
        // Reference: the same extrapolation ladder started four halvings deeper.
        const double ref = richardson_derivative(f, phi, derivative_step(phi) / 4);
        if (std::abs(ref) > 1e-10) {
            worst = std::max(worst, std::abs(d - ref) / std::abs(ref));
        }
    }

    // Series-engine property suites at 1e-12.
    bool series_ok = true;
    std::uniform_real_distribution<double> uc(-1.0, 1.0);
    for (int trial = 0; trial < 30; trial++) {
        const int order = 1 + (trial % 5);
        BiSeries a(order), b(order);
        for (int j = 0; j <= order; j++) {
            for (int kk = 0; kk <= order; kk++) {
                a.at(j, kk) = cplx(uc(rng), uc(rng));
                b.at(j, kk) = cplx(uc(rng), uc(rng));
            }
        }
        a.at(0, 0) = cplx(1.0 + 0.2 * uc(rng), 0.1 * uc(rng));
        auto close = [](const BiSeries& x, const BiSeries& y) {
            double w = 0;
            for (int j = 0; j <= x.order(); j++) {
                for (int kk = 0; kk <= x.order(); kk++) {
                    w = std::max(w, std::abs(x.at(j, kk) - y.at(j, kk)));
                }
            }
            return w <= 1e-12;
        };
        series_ok = series_ok && close(a * b, b * a);
        series_ok = series_ok && close(a * (b + b), a * b + a * b);
        series_ok = series_ok && close(a * recip(a), BiSeries::constant(order, 1));
        series_ok = series_ok && close(pow(a, 2), a * a);
        series_ok = series_ok && close(pow(a, 0.5) * pow(a, 0.5), a);
        series_ok = series_ok && close(exp(log(a)), a);
    }

    char buf[128];
    std::snprintf(buf, sizeof(buf), "derivative rel dev %.3g (tol 1e-6); series properties %s", worst,
                  series_ok ? "ok" : "FAIL");
    report(6, "numerical robustness", worst <= 1e-6 && series_ok, buf);
}

// --- criterion 7: determinism

void criterion7() {
    namespace fs = std::filesystem;
    const fs::path tmp = fs::temp_directory_path() / "pcmzi_acceptance";
    fs::remove_all(tmp);
    const std::string p1 = sweep::write_figure("4b", (tmp / "run1").string());
    const std::string p2 = sweep::write_figure("4b", (tmp / "run2").string());
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const bool identical = slurp(p1) == slurp(p2) && !slurp(p1).empty();

    // 100 random points through the dual-engine sweep path.
    std::mt19937 rng(7777);
    std::uniform_real_distribution<double> ua(0.0, 1.0), ur(0.2, 1.0), ue(0.1, 1.0);
    std::uniform_int_distribution<int> um(0, 3);
    sweep::SweepSpec spec;
    spec.engine = sweep::Engine::both;
    spec.fixed = {{"alpha", ua(rng)}, {"r", ur(rng)}, {"eta", ue(rng)}, {"m", (double)um(rng)}};
    spec.axes.push_back({"phi", 0.05, 1.2, 100});
    spec.outputs = {"parity", "qfi", "pm", "nbar"};
    const sweep::Table t = sweep::run_sweep(spec);
    const double delta = sweep::max_relative_delta(t);

    char buf[128];
    std::snprintf(buf, sizeof(buf), "figure reruns %s; 100-point dual-engine max delta %.3g (tol 1e-8)",
                  identical ? "byte-identical" : "DIFFER", delta);
    report(7, "determinism and dual-engine agreement", identical && delta < 1e-8, buf);
    fs::remove_all(tmp);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
