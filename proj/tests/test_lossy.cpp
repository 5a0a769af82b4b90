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

#include "pcmzi/errors.hpp"
#include "pcmzi/fock.hpp"
#include "pcmzi/ideal.hpp"
#include "pcmzi/lossy.hpp"

using namespace pcmzi;

namespace {

SystemParams params(double alpha, double r, double eta, int m) {
    SystemParams p;
    p.alpha = alpha;
    p.r = r;
    p.eta = eta;
    p.m = m;
    return p;
}

}  // namespace

TEST_CASE("loss config validation") {
    LossConfig ok;
    CHECK_NOTHROW(ok.validate());
    LossConfig bad;
    bad.t1 = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.t1 = 1.1;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("unit transmissivity reduces both loss models to the ideal signal") {
    for (int m : {0, 1, 2, 3}) {
        const CatalysisKernel k = build_kernel(params(0.7, 0.9, 0.2, m));
        for (double phi = -3.0; phi <= 3.0; phi += 0.31) {
            const double ideal = parity_expectation(k, phi);
            CHECK(std::abs(parity_external(k, phi, 1.0) - ideal) <= 1e-10);
            CHECK(std::abs(parity_internal(k, phi, 1.0) - ideal) <= 1e-10);
        }
    }
}

TEST_CASE("external loss matches the loss-dressed observable on the reference state") {
    for (double t1 : {0.5, 0.8, 0.95}) {
        for (double phi : {0.1, 0.5, 1.2}) {
            const SystemParams p = params(0.5, 0.6, 0.2, 2);
            const auto [state, pm] = fock::prepare_pcsvs(p, 60);
            const auto out = fock::mzi_output(state, p.alpha, phi, 60);
            const double want = fock::parity_after_external_loss(out, t1);
            CHECK(parity_external(p, phi, t1) == doctest::Approx(want).epsilon(1e-9));
            // The observable route must itself match the explicit channel.
            CHECK(fock::apply_loss_channel(out, t1).parity == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("internal loss matches the physical channel inserted before the last beam splitter") {
    for (double t2 : {0.6, 0.95}) {
        for (double phi : {0.1, 0.5, 1.2}) {
            const SystemParams p = params(0.5, 0.6, 0.2, 2);
            const auto [state, pm] = fock::prepare_pcsvs(p, 60);
            const double want = fock::parity_internal_lossy(state, p.alpha, phi, t2, 60);
            CHECK(parity_internal(p, phi, t2) == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("the internal X2 factor has a removable singularity at (t2, phi) = (1, 0)") {
    CHECK(internal_factors(0.0, 1.0).x2 == cplx(0));
    // Approaching along phi at t2 = 1: X2 -> 0 continuously.
    CHECK(std::abs(internal_factors(1e-8, 1.0).x2) <= 1e-6);
}

TEST_CASE("lossy sensitivity rejects the stationary point and degrades with loss") {
    const SystemParams p = params(0.2, 0.4, 0.1, 2);
    LossConfig lc;
    lc.t1 = 0.9;
    CHECK_THROWS_AS((void)sensitivity_lossy(p, 0.0, lc, LossKind::external), DegeneratePointError);
    const double lossy = sensitivity_lossy(p, 0.5, lc, LossKind::external);
    const double clean = phase_sensitivity(p, 0.5);
    CHECK(lossy >= clean - 1e-12);
}

TEST_CASE("lossy Fisher information interpolates to the lossless value") {
    const SystemParams p = params(1.0, 0.9, 0.2, 2);
    const double f = qfi(p);
    CHECK(qfi_lossy(p, 1.0) == f);  // exact algebraic reduction
    double prev = 0;
    for (int i = 1; i <= 10; i++) {
        const double t = i / 10.0;
        const double fl = qfi_lossy(p, t);
        CHECK(fl >= prev - 1e-12);
        CHECK(fl <= f + 1e-12);
        prev = fl;
    }
    CHECK(qcrb_lossy(p, 0.5) == doctest::Approx(1 / std::sqrt(qfi_lossy(p, 0.5))).epsilon(1e-13));
}
