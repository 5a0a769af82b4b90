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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pcmzi/errors.hpp"
#include "pcmzi/ideal.hpp"
#include "pcmzi/sweep.hpp"

using namespace pcmzi;
using namespace pcmzi::sweep;

namespace {

nlohmann::json base_spec() {
    return nlohmann::json{
        {"engine", "closed_form"},
        {"fixed", {{"eta", 0.2}, {"m", 2}, {"alpha", 1.0}, {"r", 0.9}}},
        {"swept", nlohmann::json::array({{{"name", "phi"}, {"start", 0.1}, {"stop", 1.0}, {"steps", 10}}})},
        {"outputs", {"parity", "sensitivity"}},
    };
}

}  // namespace

TEST_CASE("spec JSON round-trips") {
    const SweepSpec spec = SweepSpec::from_json(base_spec());
    const SweepSpec again = SweepSpec::from_json(spec.to_json());
    CHECK(again.to_json() == spec.to_json());
    CHECK(again.axes.size() == 1);
    CHECK(again.axes[0].steps == 10);
}

TEST_CASE("spec validation rejects malformed input") {
    auto j = base_spec();
    j["unknown_key"] = 1;
    CHECK_THROWS_AS((void)SweepSpec::from_json(j), UsageError);

    j = base_spec();
    j["outputs"] = {"no_such_output"};
    CHECK_THROWS_AS((void)SweepSpec::from_json(j), UsageError);

    j = base_spec();
    j["swept"][0]["name"] = "alpha";  // also fixed
    CHECK_THROWS_AS((void)SweepSpec::from_json(j), UsageError);

    j = base_spec();
    j["swept"][0]["steps"] = 1;
    CHECK_THROWS_AS((void)SweepSpec::from_json(j), UsageError);

    j = base_spec();
    j["engine"] = "quantum";
    CHECK_THROWS_AS((void)SweepSpec::from_json(j), UsageError);
}

TEST_CASE("sweeps are deterministic down to the emitted bytes") {
    const SweepSpec spec = SweepSpec::from_json(base_spec());
    std::ostringstream a, b;
    write_csv(run_sweep(spec), a);
    write_csv(run_sweep(spec), b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("phi,parity,sensitivity,error") == 0);
}

TEST_CASE("both-engine sweeps agree and report deltas") {
    auto j = base_spec();
    j["engine"] = "both";
    j["outputs"] = {"parity", "qfi", "pm"};
    const Table t = run_sweep(SweepSpec::from_json(j));
    CHECK(max_relative_delta(t) < 1e-8);
    CHECK(t.columns[1] == "parity_cf");
    CHECK(t.columns[2] == "parity_oracle");
}

TEST_CASE("nbar axis solves the energy constraint and marks infeasible rows") {
    nlohmann::json j = {
        {"engine", "closed_form"},
        {"fixed", {{"eta", 0.1}, {"m", 2}, {"r", 0.4}, {"phi", 1e-4}}},
        {"swept", nlohmann::json::array({{{"name", "nbar"}, {"start", 0.1}, {"stop", 2.0}, {"steps", 20}}})},
        {"outputs", {"sensitivity", "nbar"}},
    };
    const Table t = run_sweep(SweepSpec::from_json(j));
    bool saw_infeasible = false, saw_ok = false;
    for (size_t i = 0; i < t.rows.size(); i++) {
        if (t.errors[i] == "infeasible") {
            saw_infeasible = true;
            CHECK(std::isnan(t.rows[i][1]));
        } else if (t.errors[i].empty()) {
            saw_ok = true;
            // Requested total energy must be reproduced by the solved alpha.
            CHECK(t.rows[i][2] == doctest::Approx(t.rows[i][0]).epsilon(1e-10));
        }
    }
    CHECK(saw_infeasible);  // nb(m=2, eta=0.1, r=0.4) > 0.1
    CHECK(saw_ok);
}

TEST_CASE("degenerate points are recorded per row, not fatal") {
    nlohmann::json j = {
        {"engine", "closed_form"},
        {"fixed", {{"eta", 0.2}, {"m", 1}, {"alpha", 1.0}, {"r", 0.9}}},
        {"swept", nlohmann::json::array({{{"name", "phi"}, {"start", 0.0}, {"stop", 0.5}, {"steps", 6}}})},
        {"outputs", {"sensitivity"}},
    };
    const Table t = run_sweep(SweepSpec::from_json(j));
    CHECK(t.errors[0] == "degenerate");  // phi = 0
    CHECK(std::isnan(t.rows[0][1]));
    CHECK(t.errors[5].empty());
}

TEST_CASE("optimize_eta reproduces the documented regimes") {
    SystemParams p;
    p.alpha = 1;
    p.r = 0.9;
    p.m = 1;
    CHECK(optimize_eta(p, 0.2).eta_opt == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(optimize_eta(p, 0.8).eta_opt < 1.0);
    p.m = 2;
    const EtaOptResult res = optimize_eta(p, 0.2);
    CHECK(res.eta_opt < 0.5);
    // The reported optimum must beat a coarse scan.
    for (double eta = 0.05; eta <= 1.0; eta += 0.05) {
        SystemParams q = p;
        q.eta = eta;
        CHECK(res.sensitivity_at_opt <= phase_sensitivity(q, 0.2) + 1e-9);
    }
    CHECK_THROWS_AS((void)optimize_eta(p, 0.0), DegeneratePointError);
}

TEST_CASE("figure ids are all generatable (spot check grids)") {
    CHECK(figure_ids().size() == 28);
    const Table t2a = figure_table("2a");
    CHECK(t2a.columns[0] == "eta");
    CHECK(t2a.rows.size() == 100);
    const Table t5a = figure_table("5a");
    CHECK(t5a.columns[0] == "r");
    CHECK(t5a.columns.size() == 5);
    CHECK_THROWS_AS((void)figure_table("99z"), UsageError);
}

TEST_CASE("value formatting") {
    CHECK(format_value(std::nan("")) == "nan");
    CHECK(format_value(INFINITY) == "inf");
    CHECK(format_value(-INFINITY) == "-inf");
    CHECK(format_value(0.1) == "0.10000000000000001");
    CHECK(format_value(1.0) == "1");
}
