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

#ifndef PCMZI_SWEEP_HPP
#define PCMZI_SWEEP_HPP

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcmzi/catalysis.hpp"
#include "pcmzi/lossy.hpp"

namespace pcmzi {
namespace sweep {

enum class Engine { closed_form, oracle, both };

Engine engine_from_string(const std::string& s);
std::string engine_to_string(Engine e);

struct Axis {
    std::string name;  // alpha, r, eta, m, phi, t1, t2, t, nbar
    double start = 0;
    double stop = 0;
    int steps = 0;
};

struct SweepSpec {
    Engine engine = Engine::closed_form;
    std::map<std::string, double> fixed;
    std::vector<Axis> axes;
    std::vector<std::string> outputs;
    std::optional<LossConfig> loss;
    int nmax = 60;

    static SweepSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;
};

/// Numeric result grid. Cells that could not be evaluated hold NaN, with the
/// reason in the row's error code ("" when clean).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> errors;
};

Table run_sweep(const SweepSpec& spec);

/// Largest relative closed-form/oracle disagreement across all paired
/// columns of an engine=both table; 0 for tables without pairs.
double max_relative_delta(const Table& t);

struct EtaOptResult {
    double phi = 0;
    double eta_opt = 0;
    double sensitivity_at_opt = 0;
};

/// Grid search over eta (step 0.005 down to grid_floor) followed by
/// golden-section refinement to 1e-4 width; ties break toward larger eta.
/// p.eta is ignored.
EtaOptResult optimize_eta(const SystemParams& p, double phi, double grid_floor = 0.01);

const std::vector<std::string>& figure_ids();

/// Writes figure_<id>.csv plus a sidecar figure_<id>.json with the exact
/// parameter values used, into out_dir. Returns the CSV path.
std::string write_figure(const std::string& id, const std::string& out_dir);

/// Figure dataset in memory (same content the CSV is written from).
Table figure_table(const std::string& id, nlohmann::json* sidecar = nullptr);

/// 17-significant-digit formatting; "nan", "inf", "-inf" spellings.
std::string format_value(double v);
void write_csv(const Table& t, std::ostream& out);
nlohmann::json table_to_json(const Table& t);

}  // namespace sweep
}  // namespace pcmzi

#endif
