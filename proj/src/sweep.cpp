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

#include "pcmzi/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <thread>
#include <tuple>

#include "pcmzi/errors.hpp"
#include "pcmzi/fock.hpp"
#include "pcmzi/ideal.hpp"
#include "pcmzi/numerics.hpp"

namespace pcmzi {
namespace sweep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string> kAxisNames = {"alpha", "r", "eta", "m", "phi", "t1", "t2", "t", "nbar"};
const std::set<std::string> kOutputNames = {"parity", "sensitivity", "qfi",  "qcrb", "sql",
                                            "hl",     "nbar",        "pm",   "f_ql", "qcrb_l"};

template <typename F>
void parallel_for(int n, F&& f) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (hw == 1 || n <= 1) {
        for (int i = 0; i < n; i++) {
            f(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < std::min<unsigned>(hw, n); w++) {
        workers.emplace_back([&] {
            int i;
            while ((i = next.fetch_add(1)) < n) {
                f(i);
            }
        });
    }
    for (auto& t : workers) {
        t.join();
    }
}

std::vector<double> linspace_step(double start, double stop, double step) {
    const int n = (int)std::lround((stop - start) / step);
    std::vector<double> out(n + 1);
    for (int i = 0; i <= n; i++) {
        out[i] = start + i * step;
    }
    return out;
}

}  // namespace

Engine engine_from_string(const std::string& s) {
    if (s == "closed_form") {
        return Engine::closed_form;
    }
    if (s == "oracle") {
        return Engine::oracle;
    }
    if (s == "both") {
        return Engine::both;
    }
    throw UsageError("unknown engine '" + s + "' (expected closed_form | oracle | both)");
}

std::string engine_to_string(Engine e) {
    switch (e) {
        case Engine::closed_form:
            return "closed_form";
        case Engine::oracle:
            return "oracle";
        default:
            return "both";
    }
}

SweepSpec SweepSpec::from_json(const nlohmann::json& j) {
    SweepSpec spec;
    for (const auto& [key, val] : j.items()) {
        if (key == "engine") {
            spec.engine = engine_from_string(val.get<std::string>());
        } else if (key == "fixed") {
            for (const auto& [name, v] : val.items()) {
                if (!kAxisNames.count(name)) {
                    throw UsageError("unknown fixed parameter '" + name + "'");
                }
                spec.fixed[name] = v.get<double>();
            }
        } else if (key == "swept") {
            for (const auto& ax : val) {
                Axis a;
                for (const auto& [k2, v2] : ax.items()) {
                    if (k2 == "name") {
                        a.name = v2.get<std::string>();
                    } else if (k2 == "start") {
                        a.start = v2.get<double>();
                    } else if (k2 == "stop") {
                        a.stop = v2.get<double>();
                    } else if (k2 == "steps") {
                        a.steps = v2.get<int>();
                    } else {
                        throw UsageError("unknown axis key '" + k2 + "'");
                    }
                }
                spec.axes.push_back(a);
            }
        } else if (key == "outputs") {
            spec.outputs = val.get<std::vector<std::string>>();
        } else if (key == "loss") {
            LossConfig lc;
            for (const auto& [k2, v2] : val.items()) {
                if (k2 == "t1") {
                    lc.t1 = v2.get<double>();
                } else if (k2 == "t2") {
                    lc.t2 = v2.get<double>();
                } else if (k2 == "t") {
                    lc.t = v2.get<double>();
                } else {
                    throw UsageError("unknown loss key '" + k2 + "'");
                }
            }
            spec.loss = lc;
        } else if (key == "nmax") {
            spec.nmax = j["nmax"].get<int>();
        } else {
            throw UsageError("unknown config key '" + key + "'");
        }
    }
    spec.validate();
    return spec;
}

nlohmann::json SweepSpec::to_json() const {
    nlohmann::json j;
    j["engine"] = engine_to_string(engine);
    j["fixed"] = fixed;
    j["swept"] = nlohmann::json::array();
    for (const auto& a : axes) {
        j["swept"].push_back({{"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"steps", a.steps}});
    }
    j["outputs"] = outputs;
    if (loss) {
        j["loss"] = {{"t1", loss->t1}, {"t2", loss->t2}, {"t", loss->t}};
    }
    j["nmax"] = nmax;
    return j;
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 2) {
        throw UsageError("a sweep needs one or two axes");
    }
    std::set<std::string> seen;
    for (const auto& a : axes) {
        if (!kAxisNames.count(a.name)) {
            throw UsageError("unknown axis '" + a.name + "'");
        }
        if (!seen.insert(a.name).second || fixed.count(a.name)) {
            throw UsageError("axis '" + a.name + "' duplicated or also fixed");
        }
        if (a.steps < 2) {
            throw UsageError("axis '" + a.name + "' needs steps >= 2");
        }
    }
    if (outputs.empty()) {
        throw UsageError("no outputs requested");
    }
    for (const auto& o : outputs) {
        if (!kOutputNames.count(o)) {
            throw UsageError("unknown output '" + o + "'");
        }
    }
    const auto has = [&](const std::string& n) { return seen.count(n) || fixed.count(n); };
    if (has("alpha") && has("nbar")) {
        throw UsageError("alpha and nbar cannot both be assigned (nbar solves for alpha)");
    }
    // Only one lossy parity placement at a time.
    const bool ext = has("t1") || (loss && loss->t1 < 1);
    const bool inl = has("t2") || (loss && loss->t2 < 1);
    if (ext && inl) {
        throw UsageError("external (t1) and internal (t2) loss cannot both be active in one sweep");
    }
    if (nmax < 4 || nmax > 200) {
        throw UsageError("nmax must lie in 4..200");
    }
}

namespace {

/// Caches the per-configuration state shared by all outputs at a point.
class Evaluator {
  public:
    explicit Evaluator(int nmax) : nmax_(nmax) {}

    const CatalysisKernel& kernel(const SystemParams& p) {
        const auto key = std::make_tuple(p.alpha, p.r, p.eta, p.m);
        auto it = kernels_.find(key);
        if (it == kernels_.end()) {
            it = kernels_.emplace(key, build_kernel(p)).first;
        }
        return it->second;
    }

    const std::pair<fock::SingleModeState, double>& pcsvs(const SystemParams& p) {
        const auto key = std::make_tuple(p.r, p.eta, p.m);
        auto it = states_.find(key);
        if (it == states_.end()) {
            SystemParams q = p;
            q.alpha = 0;
            it = states_.emplace(key, fock::prepare_pcsvs(q, nmax_)).first;
        }
        return it->second;
    }

    double oracle_parity(const SystemParams& p, double phi, const LossConfig& loss) {
        const auto& [state, success] = pcsvs(p);
        if (loss.t2 < 1) {
            return fock::parity_internal_lossy(state, p.alpha, phi, loss.t2, nmax_);
        }
        const fock::TwoModeState out = fock::mzi_output(state, p.alpha, phi, nmax_);
        if (loss.t1 < 1) {
            return fock::parity_after_external_loss(out, loss.t1);
        }
        return fock::parity_b(out);
    }

    double closed_parity(const SystemParams& p, double phi, const LossConfig& loss) {
        if (loss.t2 < 1) {
            return parity_internal(kernel(p), phi, loss.t2);
        }
        if (loss.t1 < 1) {
            return parity_external(kernel(p), phi, loss.t1);
        }
        return parity_expectation(kernel(p), phi);
    }

    double sensitivity(Engine eng, const SystemParams& p, double phi, const LossConfig& loss) {
        if (std::abs(phi) < 1e-8) {
            throw DegeneratePointError("sensitivity undefined at phi = 0; evaluate at a small offset");
        }
        auto f = [&](double x) {
            return eng == Engine::oracle ? oracle_parity(p, x, loss) : closed_parity(p, x, loss);
        };
        const double pv = f(phi);
        const double d = richardson_derivative(f, phi, derivative_step(phi));
        if (std::abs(d) < 1e-14) {
            throw DegeneratePointError("parity signal is stationary");
        }
        return std::sqrt(std::max(0.0, 1 - pv * pv)) / std::abs(d);
    }

    double eval(const std::string& out, Engine eng, const SystemParams& p, double phi,
                const LossConfig& loss) {
        const bool oracle = eng == Engine::oracle;
        if (out == "parity") {
            return oracle ? oracle_parity(p, phi, loss) : closed_parity(p, phi, loss);
        }
        if (out == "sensitivity") {
            return sensitivity(eng, p, phi, loss);
        }
        if (out == "pm") {
            return oracle ? pcsvs(p).second : kernel(p).pm;
        }
        if (out == "nbar") {
            return nbar(eng, p);
        }
        if (out == "sql") {
            return benchmarks(nbar(eng, p)).first;
        }
        if (out == "hl") {
            return benchmarks(nbar(eng, p)).second;
        }
        if (out == "qfi") {
            return fisher(eng, p);
        }
        if (out == "qcrb") {
            const double f = fisher(eng, p);
            if (!(f > 0)) {
                throw UndefinedBoundError("QCRB undefined at zero Fisher information");
            }
            return 1 / std::sqrt(f);
        }
        if (out == "f_ql") {
            return fisher_lossy(eng, p, loss.t);
        }
        if (out == "qcrb_l") {
            const double f = fisher_lossy(eng, p, loss.t);
            if (!(f > 0)) {
                throw UndefinedBoundError("lossy QCRB undefined at zero Fisher information");
            }
            return 1 / std::sqrt(f);
        }
        throw UsageError("unknown output '" + out + "'");
    }

    double nbar(Engine eng, const SystemParams& p) {
        if (eng == Engine::oracle) {
            return p.alpha * p.alpha + fock::mean_photon(pcsvs(p).first);
        }
        return total_mean_photons(kernel(p));
    }

    double fisher(Engine eng, const SystemParams& p) {
        if (eng == Engine::oracle) {
            return fock::qfi_numeric(pcsvs(p).first, p.alpha, nmax_);
        }
        return qfi(kernel(p));
    }

    double fisher_lossy(Engine eng, const SystemParams& p, double t) {
        if (!(t > 0 && t <= 1)) {
            throw DomainError("t must lie in (0, 1]");
        }
        const double fq = fisher(eng, p);
        const double nb = nbar(eng, p) / 2;
        if (fq == 0 || nb == 0) {
            return 0;
        }
        return 4 * fq * t * nb / ((1 - t) * fq + 4 * t * nb);
    }

    double mean_photon_closed(const SystemParams& p) {
        return mean_photon_b(kernel(p));
    }

  private:
    int nmax_;
    std::map<std::tuple<double, double, double, int>, CatalysisKernel> kernels_;
    std::map<std::tuple<double, double, int>, std::pair<fock::SingleModeState, double>> states_;
};

std::string classify(const std::exception& e) {
    if (dynamic_cast<const DegeneratePointError*>(&e)) {
        return "degenerate";
    }
    if (dynamic_cast<const UndefinedBoundError*>(&e)) {
        return "undefined_bound";
    }
    if (dynamic_cast<const TruncationError*>(&e)) {
        return "truncation";
    }
    if (dynamic_cast<const ConsistencyError*>(&e)) {
        return "inconsistent";
    }
    return "error";
}

}  // namespace

Table run_sweep(const SweepSpec& spec) {
    spec.validate();
    Table table;
    for (const auto& a : spec.axes) {
        table.columns.push_back(a.name);
    }
    for (const auto& o : spec.outputs) {
        if (spec.engine == Engine::both) {
            table.columns.push_back(o + "_cf");
            table.columns.push_back(o + "_oracle");
            table.columns.push_back(o + "_delta_abs");
            table.columns.push_back(o + "_delta_rel");
        } else {
            table.columns.push_back(o);
        }
    }
    table.columns.push_back("error");

    std::vector<std::vector<double>> grids;
    for (const auto& a : spec.axes) {
        std::vector<double> g(a.steps);
        for (int i = 0; i < a.steps; i++) {
            g[i] = a.start + (a.stop - a.start) * i / (a.steps - 1);
        }
        grids.push_back(std::move(g));
    }
    const int n0 = (int)grids[0].size();
    const int n1 = grids.size() == 2 ? (int)grids[1].size() : 1;

    Evaluator ev(spec.nmax);
    for (int i = 0; i < n0; i++) {
        for (int j = 0; j < n1; j++) {
            std::map<std::string, double> assign = spec.fixed;
            assign[spec.axes[0].name] = grids[0][i];
            if (grids.size() == 2) {
                assign[spec.axes[1].name] = grids[1][j];
            }

            std::vector<double> row;
            for (size_t k = 0; k < spec.axes.size(); k++) {
                row.push_back(assign[spec.axes[k].name]);
            }
            std::string err;

            SystemParams p;
            p.alpha = assign.count("alpha") ? assign["alpha"] : 0;
            p.r = assign.count("r") ? assign["r"] : 0;
            p.eta = assign.count("eta") ? assign["eta"] : 1;
            p.m = assign.count("m") ? (int)std::lround(assign["m"]) : 0;
            const double phi = assign.count("phi") ? assign["phi"] : 0;
            LossConfig loss = spec.loss.value_or(LossConfig{});
            if (assign.count("t1")) {
                loss.t1 = assign["t1"];
            }
            if (assign.count("t2")) {
                loss.t2 = assign["t2"];
            }
            if (assign.count("t")) {
                loss.t = assign["t"];
            }

            bool feasible = true;
            try {
                p.validate();
                loss.validate();
                if (assign.count("nbar")) {
                    // n_b is alpha-independent, so the energy constraint
                    // solves in closed form.
                    SystemParams q = p;
                    q.alpha = 0;
                    const double nb = ev.mean_photon_closed(q);
                    const double a2 = assign["nbar"] - nb;
                    if (a2 < -1e-12) {
                        feasible = false;
                        err = "infeasible";
                    } else {
                        p.alpha = std::sqrt(std::max(0.0, a2));
                    }
                }
            } catch (const std::exception& e) {
                feasible = false;
                err = classify(e);
            }

            for (const auto& out : spec.outputs) {
                const int cells = spec.engine == Engine::both ? 4 : 1;
                if (!feasible) {
                    row.insert(row.end(), cells, kNaN);
                    continue;
                }
                double cf = kNaN, orc = kNaN;
                if (spec.engine != Engine::oracle) {
                    try {
                        cf = ev.eval(out, Engine::closed_form, p, phi, loss);
                    } catch (const std::exception& e) {
                        if (err.empty()) {
                            err = classify(e);
                        }
                    }
                }
                if (spec.engine != Engine::closed_form) {
                    try {
                        orc = ev.eval(out, Engine::oracle, p, phi, loss);
                    } catch (const std::exception& e) {
                        if (err.empty()) {
                            err = classify(e);
                        }
                    }
                }
                if (spec.engine == Engine::both) {
                    const double abs_d = std::abs(cf - orc);
                    const double rel_d = abs_d / std::max(1.0, std::max(std::abs(cf), std::abs(orc)));
                    row.push_back(cf);
                    row.push_back(orc);
                    row.push_back(abs_d);
                    row.push_back(rel_d);
                } else {
                    row.push_back(spec.engine == Engine::oracle ? orc : cf);
                }
            }
            table.rows.push_back(std::move(row));
            table.errors.push_back(err);
        }
    }
    return table;
}

double max_relative_delta(const Table& t) {
    double worst = 0;
    for (size_t c = 0; c < t.columns.size(); c++) {
        if (t.columns[c].size() > 10 && t.columns[c].substr(t.columns[c].size() - 10) == "_delta_rel") {
            for (const auto& row : t.rows) {
                if (!std::isnan(row[c])) {
                    worst = std::max(worst, row[c]);
                }
            }
        }
    }
    return worst;
}

EtaOptResult optimize_eta(const SystemParams& base, double phi, double grid_floor) {
    if (std::abs(phi) < 1e-8) {
        throw DegeneratePointError("eta optimization undefined at phi = 0");
    }
    if (!(grid_floor > 0 && grid_floor < 1)) {
        throw DomainError("grid_floor must lie in (0, 1)");
    }
    auto eval = [&](double eta) {
        SystemParams p = base;
        p.eta = eta;
        try {
            return phase_sensitivity(p, phi);
        } catch (const DegeneratePointError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    const double step = 0.005;
    double best_eta = kNaN;
    double best_s = std::numeric_limits<double>::infinity();
    const int n = (int)std::lround((1 - grid_floor) / step);
    for (int i = 0; i <= n; i++) {
        const double eta = std::min(1.0, grid_floor + i * step);
        const double s = eval(eta);
        if (s <= best_s) {  // ties toward larger eta
            best_s = s;
            best_eta = eta;
        }
    }
    if (!std::isfinite(best_s)) {
        throw DegeneratePointError("all eta grid points are degenerate");
    }

    double a = std::max(grid_floor, best_eta - step);
    double b = std::min(1.0, best_eta + step);
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > 1e-4) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = eval(d);
        }
    }

    EtaOptResult res;
    res.phi = phi;
    // Candidates in descending eta so exact ties resolve toward larger eta.
    res.eta_opt = b;
    res.sensitivity_at_opt = eval(b);
    for (const double x : {(a + b) / 2, a}) {
        const double s = eval(x);
        if (s < res.sensitivity_at_opt) {
            res.sensitivity_at_opt = s;
            res.eta_opt = x;
        }
    }
    return res;
}

std::string format_value(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const Table& t, std::ostream& out) {
    const bool has_error_col = !t.columns.empty() && t.columns.back() == "error";
    for (size_t c = 0; c < t.columns.size(); c++) {
        out << (c ? "," : "") << t.columns[c];
    }
    out << "\n";
    for (size_t rix = 0; rix < t.rows.size(); rix++) {
        const auto& row = t.rows[rix];
        for (size_t c = 0; c < row.size(); c++) {
            out << (c ? "," : "") << format_value(row[c]);
        }
        if (has_error_col) {
            out << "," << (rix < t.errors.size() ? t.errors[rix] : "");
        }
        out << "\n";
    }
}

nlohmann::json table_to_json(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    const bool has_error_col = !t.columns.empty() && t.columns.back() == "error";
    for (size_t rix = 0; rix < t.rows.size(); rix++) {
        nlohmann::json row;
        for (size_t c = 0; c < t.rows[rix].size(); c++) {
            const double v = t.rows[rix][c];
            if (std::isfinite(v)) {
                row[t.columns[c]] = v;
            } else {
                row[t.columns[c]] = format_value(v);
            }
        }
        if (has_error_col) {
            row["error"] = rix < t.errors.size() ? t.errors[rix] : "";
        }
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Figure reproduction
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string> kFigureIds = {
    "2a", "2b", "3a", "3b", "4a", "4b", "5a", "5b", "5c", "5d", "6a", "6b", "7a", "7b",
    "8",  "9a", "9b", "11a", "11b", "12a", "12b", "14a", "14b", "15a", "15b", "15c", "16a", "16b"};

double guard_nan(const std::function<double()>& f) {
    try {
        return f();
    } catch (const std::exception&) {
        return kNaN;
    }
}

struct FigureBuilder {
    Table t;
    nlohmann::json sidecar;

    void axis(const std::string& name, const std::vector<double>& grid) {
        t.columns.push_back(name);
        t.rows.resize(grid.size());
        for (size_t i = 0; i < grid.size(); i++) {
            t.rows[i].push_back(grid[i]);
        }
        sidecar["axis"] = {{"name", name},
                           {"start", grid.front()},
                           {"stop", grid.back()},
                           {"points", grid.size()}};
    }

    /// Adds a column computed per axis row; exceptions become NaN cells.
    void column(const std::string& name, const std::vector<double>& grid,
                const std::function<double(double)>& f, bool parallel = false) {
        t.columns.push_back(name);
        std::vector<double> vals(grid.size());
        auto work = [&](int i) { vals[i] = guard_nan([&] { return f(grid[i]); }); };
        if (parallel) {
            parallel_for((int)grid.size(), work);
        } else {
            for (int i = 0; i < (int)grid.size(); i++) {
                work(i);
            }
        }
        for (size_t i = 0; i < grid.size(); i++) {
            t.rows[i].push_back(vals[i]);
        }
    }
};

SystemParams make_params(double alpha, double r, double eta, int m) {
    SystemParams p;
    p.alpha = alpha;
    p.r = r;
    p.eta = eta;
    p.m = m;
    return p;
}

/// alpha solving nbar = alpha^2 + n_b; NaN-signalling domain error if
/// infeasible.
double alpha_for_nbar(double nbar, double r, double eta, int m) {
    const double nb = mean_photon_b(make_params(0, r, eta, m));
    if (nbar < nb) {
        throw DomainError("nbar below the catalyzed state's photon number");
    }
    return std::sqrt(nbar - nb);
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    return kFigureIds;
}

Table figure_table(const std::string& id, nlohmann::json* sidecar_out) {
    FigureBuilder fb;
    fb.sidecar["figure"] = id;
    auto& p = fb.sidecar["parameters"];

    if (id == "2a") {
        p = {{"r", 0.9}};
        const auto grid = linspace_step(0.01, 1.0, 0.01);
        fb.axis("eta", grid);
        for (int m : {1, 2, 3}) {
            fb.column("nb_m" + std::to_string(m), grid,
                      [m](double eta) { return mean_photon_b(make_params(0, 0.9, eta, m)); });
        }
    } else if (id == "2b") {
        p = {{"eta", 0.2}};
        const auto grid = linspace_step(0.0, 1.2, 0.01);
        fb.axis("r", grid);
        fb.column("nb_svs", grid, [](double r) { return std::sinh(r) * std::sinh(r); });
        for (int m : {1, 2, 3}) {
            fb.column("nb_m" + std::to_string(m), grid,
                      [m](double r) { return mean_photon_b(make_params(0, r, 0.2, m)); });
        }
    } else if (id == "3a" || id == "3b") {
        const auto grid = linspace_step(-3.14, 3.14, 0.01);
        fb.axis("phi", grid);
        if (id == "3a") {
            p = {{"alpha", 1.0}, {"r", 0.9}, {"eta", 0.2}};
            fb.column("parity_svs", grid, [](double phi) { return parity_svs_closed_form(1.0, 0.9, phi); });
            for (int m : {1, 2, 3}) {
                const CatalysisKernel k = build_kernel(make_params(1.0, 0.9, 0.2, m));
                fb.column("parity_m" + std::to_string(m), grid,
                          [k](double phi) { return parity_expectation(k, phi); });
            }
        } else {
            p = {{"alpha", 1.0}, {"r", 0.9}, {"m", 2}};
            fb.column("parity_svs", grid, [](double phi) { return parity_svs_closed_form(1.0, 0.9, phi); });
            for (double eta : {0.1, 0.2, 0.3}) {
                const CatalysisKernel k = build_kernel(make_params(1.0, 0.9, eta, 2));
                char label[32];
                std::snprintf(label, sizeof(label), "parity_eta%.1f", eta);
                fb.column(label, grid, [k](double phi) { return parity_expectation(k, phi); });
            }
        }
    } else if (id == "4a" || id == "4b") {
        p = {{"alpha", 1.0}, {"r", 0.9}};
        const auto grid = linspace_step(-1.0, 1.0, 0.01);
        fb.axis("phi", grid);
        if (id == "4a") {
            const CatalysisKernel ksvs = build_kernel(make_params(1.0, 0.9, 1.0, 0));
            fb.column("dphi_svs", grid, [ksvs](double phi) { return phase_sensitivity(ksvs, phi); });
        }
        for (int m : {1, 2, 3}) {
            const SystemParams base = make_params(1.0, 0.9, 1.0, m);
            fb.column((id == "4a" ? "dphi_m" : "eta_opt_m") + std::to_string(m), grid,
                      [base, &id](double phi) {
                          const EtaOptResult res = optimize_eta(base, phi);
                          return id == "4a" ? res.sensitivity_at_opt : res.eta_opt;
                      },
                      /*parallel=*/true);
        }
    } else if (id == "5a" || id == "5b" || id == "5c" || id == "5d") {
        const double alpha = id == "5a" ? 0.0 : id == "5b" ? 0.25 : id == "5c" ? 0.35 : 0.45;
        p = {{"alpha", alpha}, {"phi", 1e-4}, {"eta", 0.1}};
        const auto grid = linspace_step(0.0, 0.9, 0.01);
        fb.axis("r", grid);
        fb.column("dphi_svs", grid,
                  [alpha](double r) { return phase_sensitivity(make_params(alpha, r, 1.0, 0), 1e-4); });
        for (int m : {1, 2, 3}) {
            fb.column("dphi_m" + std::to_string(m), grid,
                      [alpha, m](double r) { return phase_sensitivity(make_params(alpha, r, 0.1, m), 1e-4); },
                      /*parallel=*/true);
        }
    } else if (id == "6a") {
        p = {{"r", 0.4}, {"phi", 1e-4}, {"eta", 0.1}};
        const auto grid = linspace_step(0.0, 1.0, 0.01);
        fb.axis("alpha", grid);
        fb.column("dphi_svs", grid,
                  [](double a) { return phase_sensitivity(make_params(a, 0.4, 1.0, 0), 1e-4); });
        for (int m : {1, 2, 3}) {
            fb.column("dphi_m" + std::to_string(m), grid,
                      [m](double a) { return phase_sensitivity(make_params(a, 0.4, 0.1, m), 1e-4); });
        }
    } else if (id == "6b") {
        p = {{"r", 0.4}, {"phi", 1e-4}, {"eta", 0.1}};
        const auto grid = linspace_step(0.1, 3.0, 0.02);
        fb.axis("nbar", grid);
        fb.column("dphi_svs", grid, [](double nb) {
            return phase_sensitivity(make_params(alpha_for_nbar(nb, 0.4, 1.0, 0), 0.4, 1.0, 0), 1e-4);
        });
        for (int m : {1, 2, 3}) {
            fb.column("dphi_m" + std::to_string(m), grid, [m](double nb) {
                return phase_sensitivity(make_params(alpha_for_nbar(nb, 0.4, 0.1, m), 0.4, 0.1, m), 1e-4);
            });
        }
        fb.column("sql", grid, [](double nb) { return 1 / std::sqrt(nb); });
        fb.column("hl", grid, [](double nb) { return 1 / nb; });
    } else if (id == "7a") {
        p = {{"alpha", 1.0}, {"r", 0.9}};
        const auto grid = linspace_step(0.01, 1.0, 0.01);
        fb.axis("eta", grid);
        const double svs = qfi(make_params(1.0, 0.9, 1.0, 0));
        fb.column("qfi_svs", grid, [svs](double) { return svs; });
        for (int m : {1, 2, 3}) {
            fb.column("qfi_m" + std::to_string(m), grid,
                      [m](double eta) { return qfi(make_params(1.0, 0.9, eta, m)); });
        }
    } else if (id == "7b") {
        p = {{"alpha", 1.0}, {"eta", 0.2}};
        const auto grid = linspace_step(0.0, 1.2, 0.01);
        fb.axis("r", grid);
        fb.column("qfi_svs", grid, [](double r) { return qfi(make_params(1.0, r, 1.0, 0)); });
        for (int m : {1, 2, 3}) {
            fb.column("qfi_m" + std::to_string(m), grid,
                      [m](double r) { return qfi(make_params(1.0, r, 0.2, m)); });
        }
    } else if (id == "8") {
        p = {{"r", 0.4}, {"eta", 0.1}};
        const auto grid = linspace_step(0.0, 1.5, 0.01);
        fb.axis("alpha", grid);
        fb.column("qfi_svs", grid, [](double a) { return qfi(make_params(a, 0.4, 1.0, 0)); });
        for (int m : {1, 2, 3}) {
            fb.column("qfi_m" + std::to_string(m), grid,
                      [m](double a) { return qfi(make_params(a, 0.4, 0.1, m)); });
        }
    } else if (id == "9a" || id == "9b") {
        p = {{"r", 0.4}, {"eta", 0.1}};
        const auto grid = linspace_step(0.1, 3.0, 0.02);
        fb.axis("nbar", grid);
        auto val = [&](double nb, double eta, int m) {
            const double f = qfi(make_params(alpha_for_nbar(nb, 0.4, eta, m), 0.4, eta, m));
            if (id == "9a") {
                return f;
            }
            if (!(f > 0)) {
                throw UndefinedBoundError("zero Fisher information");
            }
            return 1 / std::sqrt(f);
        };
        const std::string stem = id == "9a" ? "qfi" : "qcrb";
        fb.column(stem + "_svs", grid, [&](double nb) { return val(nb, 1.0, 0); });
        for (int m : {1, 2, 3}) {
            fb.column(stem + "_m" + std::to_string(m), grid, [&](double nb) { return val(nb, 0.1, m); });
        }
        if (id == "9b") {
            fb.column("sql", grid, [](double nb) { return 1 / std::sqrt(nb); });
            fb.column("hl", grid, [](double nb) { return 1 / nb; });
        }
    } else if (id == "11a") {
        p = {{"eta", 0.1}, {"r", 0.4}, {"alpha", 0.2}, {"phi", 0.5}};
        const auto grid = linspace_step(0.5, 1.0, 0.005);
        fb.axis("transmissivity", grid);
        auto add = [&](const std::string& name, double eta, int m, LossKind kind) {
            const CatalysisKernel k = build_kernel(make_params(0.2, 0.4, eta, m));
            fb.column(name, grid,
                      [k, kind](double tv) {
                          LossConfig lc;
                          (kind == LossKind::external ? lc.t1 : lc.t2) = tv;
                          return sensitivity_lossy(k, 0.5, lc, kind);
                      },
                      /*parallel=*/true);
        };
        add("dphiL_ext_svs", 1.0, 0, LossKind::external);
        add("dphiL_int_svs", 1.0, 0, LossKind::internal);
        for (int m : {1, 2, 3}) {
            add("dphiL_ext_m" + std::to_string(m), 0.1, m, LossKind::external);
            add("dphiL_int_m" + std::to_string(m), 0.1, m, LossKind::internal);
        }
    } else if (id == "11b") {
        p = {{"eta", 0.1}, {"r", 0.4}, {"alpha", 0.2}, {"t1", 0.95}, {"t2", 0.95}};
        const auto grid = linspace_step(-1.5, 1.5, 0.01);
        fb.axis("phi", grid);
        LossConfig ext;
        ext.t1 = 0.95;
        LossConfig inl;
        inl.t2 = 0.95;
        auto add = [&](const std::string& name, double eta, int m, const LossConfig& lc, LossKind kind) {
            const CatalysisKernel k = build_kernel(make_params(0.2, 0.4, eta, m));
            fb.column(name, grid,
                      [k, lc, kind](double phi) { return sensitivity_lossy(k, phi, lc, kind); },
                      /*parallel=*/true);
        };
        add("dphiL_ext_svs", 1.0, 0, ext, LossKind::external);
        add("dphiL_int_svs", 1.0, 0, inl, LossKind::internal);
        for (int m : {1, 2, 3}) {
            add("dphiL_ext_m" + std::to_string(m), 0.1, m, ext, LossKind::external);
            add("dphiL_int_m" + std::to_string(m), 0.1, m, inl, LossKind::internal);
        }
    } else if (id == "12a" || id == "12b") {
        const bool vs_r = id == "12a";
        p = {{"phi", 0.5}, {"t1", 0.95}, {"t2", 0.95}, {"eta", 0.1}};
        p[vs_r ? "alpha" : "r"] = vs_r ? 0.2 : 0.9;
        const auto grid = vs_r ? linspace_step(0.0, 0.9, 0.01) : linspace_step(0.0, 1.0, 0.01);
        fb.axis(vs_r ? "r" : "alpha", grid);
        LossConfig ext;
        ext.t1 = 0.95;
        LossConfig inl;
        inl.t2 = 0.95;
        auto add = [&](const std::string& name, double eta, int m, const LossConfig& lc, LossKind kind) {
            fb.column(name, grid,
                      [=](double x) {
                          const SystemParams sp =
                              vs_r ? make_params(0.2, x, eta, m) : make_params(x, 0.9, eta, m);
                          return sensitivity_lossy(sp, 0.5, lc, kind);
                      },
                      /*parallel=*/true);
        };
        add("dphiL_ext_svs", 1.0, 0, ext, LossKind::external);
        add("dphiL_int_svs", 1.0, 0, inl, LossKind::internal);
        for (int m : {1, 2, 3}) {
            add("dphiL_ext_m" + std::to_string(m), 0.1, m, ext, LossKind::external);
            add("dphiL_int_m" + std::to_string(m), 0.1, m, inl, LossKind::internal);
        }
    } else if (id == "14a" || id == "14b") {
        p = {{"r", 0.9}, {"alpha", 1.0}};
        p[id == "14a" ? "eta" : "t"] = id == "14a" ? 0.2 : 0.9;
        const auto grid = linspace_step(0.01, 1.0, 0.01);
        fb.axis(id == "14a" ? "t" : "eta", grid);
        auto val = [&](double x, double eta, int m) {
            return id == "14a" ? qfi_lossy(make_params(1.0, 0.9, eta, m), x)
                               : qfi_lossy(make_params(1.0, 0.9, x, m), 0.9);
        };
        fb.column("fql_svs", grid, [&](double x) { return val(x, 1.0, 0); });
        for (int m : {1, 2, 3}) {
            fb.column("fql_m" + std::to_string(m), grid,
                      [&, m](double x) { return val(x, id == "14a" ? 0.2 : x, m); });
        }
    } else if (id == "15a" || id == "15b" || id == "15c") {
        const double t = 0.9;
        if (id == "15a") {
            p = {{"t", t}, {"alpha", 1.0}, {"eta", 0.2}};
            const auto grid = linspace_step(0.0, 1.2, 0.01);
            fb.axis("r", grid);
            fb.column("fql_svs", grid, [t](double r) { return qfi_lossy(make_params(1.0, r, 1.0, 0), t); });
            for (int m : {1, 2, 3}) {
                fb.column("fql_m" + std::to_string(m), grid,
                          [t, m](double r) { return qfi_lossy(make_params(1.0, r, 0.2, m), t); });
            }
        } else if (id == "15b") {
            p = {{"t", t}, {"r", 0.4}, {"eta", 0.1}};
            const auto grid = linspace_step(0.0, 1.5, 0.01);
            fb.axis("alpha", grid);
            fb.column("fql_svs", grid, [t](double a) { return qfi_lossy(make_params(a, 0.4, 1.0, 0), t); });
            for (int m : {1, 2, 3}) {
                fb.column("fql_m" + std::to_string(m), grid,
                          [t, m](double a) { return qfi_lossy(make_params(a, 0.4, 0.1, m), t); });
            }
        } else {
            p = {{"t", t}, {"r", 0.4}, {"eta", 0.1}};
            const auto grid = linspace_step(0.1, 3.0, 0.02);
            fb.axis("nbar", grid);
            fb.column("fql_svs", grid, [t](double nb) {
                return qfi_lossy(make_params(alpha_for_nbar(nb, 0.4, 1.0, 0), 0.4, 1.0, 0), t);
            });
            for (int m : {1, 2, 3}) {
                fb.column("fql_m" + std::to_string(m), grid, [t, m](double nb) {
                    return qfi_lossy(make_params(alpha_for_nbar(nb, 0.4, 0.1, m), 0.4, 0.1, m), t);
                });
            }
        }
    } else if (id == "16a" || id == "16b") {
        const double t = id == "16a" ? 0.9 : 0.5;
        p = {{"t", t}, {"r", 0.4}, {"eta", 0.1}};
        const auto grid = linspace_step(0.1, 3.0, 0.02);
        fb.axis("nbar", grid);
        auto val = [t](double nb, double eta, int m) {
            const double f = qfi_lossy(make_params(alpha_for_nbar(nb, 0.4, eta, m), 0.4, eta, m), t);
            if (!(f > 0)) {
                throw UndefinedBoundError("zero Fisher information");
            }
            return 1 / std::sqrt(f);
        };
        fb.column("qcrbL_svs", grid, [&](double nb) { return val(nb, 1.0, 0); });
        for (int m : {1, 2, 3}) {
            fb.column("qcrbL_m" + std::to_string(m), grid, [&](double nb) { return val(nb, 0.1, m); });
        }
        fb.column("sql", grid, [](double nb) { return 1 / std::sqrt(nb); });
        fb.column("hl", grid, [](double nb) { return 1 / nb; });
    } else {
        throw UsageError("unknown figure id '" + id + "'");
    }

    if (sidecar_out) {
        *sidecar_out = fb.sidecar;
    }
    return fb.t;
}

std::string write_figure(const std::string& id, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    nlohmann::json sidecar;
    const Table t = figure_table(id, &sidecar);
    sidecar["columns"] = t.columns;

    const fs::path csv_path = fs::path(out_dir) / ("figure_" + id + ".csv");
    {
        std::ofstream out(csv_path);
        if (!out) {
            throw UsageError("cannot write " + csv_path.string());
        }
        write_csv(t, out);
    }
    {
        std::ofstream out(fs::path(out_dir) / ("figure_" + id + ".json"));
        out << sidecar.dump(2) << "\n";
    }
    return csv_path.string();
}

}  // namespace sweep
}  // namespace pcmzi
