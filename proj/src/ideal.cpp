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

#include "pcmzi/ideal.hpp"

#include <cmath>
#include <string>

#include "pcmzi/errors.hpp"
#include "pcmzi/numerics.hpp"

namespace pcmzi {

double parity_expectation(const CatalysisKernel& kernel, double phi) {
    if (!std::isfinite(phi)) {
        throw DomainError("phi must be finite");
    }
    const int m = kernel.params.m;
    const double a2 = kernel.params.alpha * kernel.params.alpha;
    const double c = std::cos(phi);
    const double s = std::sin(phi);

    const BiSeries one = BiSeries::constant(m, 1);
    const BiSeries w1w4 = 4.0 * (kernel.w1 * kernel.w);
    const BiSeries f = one - (c * c) * w1w4;  // 1 - 4 W1 W cos^2(phi)
    const BiSeries g = one - w1w4;            // 1 - 4 W1 W
    // Both exponential factors share the denominator f; combine them.
    const BiSeries numer = (c - 1.0) * g - (s * s) * w1w4 + (s * s) * (kernel.w1 + kernel.w);
    const BiSeries expr = kernel.eps * pow(f, -0.5) * exp(numer * a2 * recip(f));

    const double val = dhat(kernel, expr);
    if (std::abs(val) > 1 + 1e-9) {
        throw ConsistencyError("|parity| > 1: " + std::to_string(val));
    }
    return val;
}

double parity_expectation(const SystemParams& p, double phi) {
    return parity_expectation(build_kernel(p), phi);
}

double parity_svs_closed_form(double alpha, double r, double phi) {
    if (alpha < 0 || r < 0) {
        throw DomainError("alpha and r must be >= 0");
    }
    const double sh2 = std::sinh(r) * std::sinh(r);
    const double s2 = std::sin(phi) * std::sin(phi);
    const double den = 1 + sh2 * s2;
    const double a2 = alpha * alpha;
    const double expo = (std::cos(phi) - 1 - sh2 * s2) * a2 / den - std::sinh(2 * r) * s2 * a2 / (2 * den);
    return std::exp(expo) / std::sqrt(den);
}

double phase_sensitivity(const CatalysisKernel& kernel, double phi) {
    if (std::abs(phi) < 1e-8) {
        throw DegeneratePointError(
            "the parity signal is stationary at phi = 0; evaluate at a small offset such as phi = 1e-4");
    }
    const double pv = parity_expectation(kernel, phi);
    const double d = richardson_derivative(
        [&](double x) { return parity_expectation(kernel, x); }, phi, derivative_step(phi));
    if (std::abs(d) < 1e-14) {
        throw DegeneratePointError("parity signal is stationary at phi = " + std::to_string(phi));
    }
    return std::sqrt(std::max(0.0, 1 - pv * pv)) / std::abs(d);
}

double phase_sensitivity(const SystemParams& p, double phi) {
    return phase_sensitivity(build_kernel(p), phi);
}

double qfi(const CatalysisKernel& kernel) {
    const int m = kernel.params.m;
    const double a2 = kernel.params.alpha * kernel.params.alpha;

    const BiSeries one = BiSeries::constant(m, 1);
    const BiSeries w1w = kernel.w1 * kernel.w;
    const BiSeries g = one - 4.0 * w1w;
    const BiSeries core = (4.0 * a2) * (one - kernel.w) + 12.0 * (w1w * recip(g));
    const double projected = dhat(kernel, kernel.eps * pow(g, -1.5) * core);

    const double nbar = total_mean_photons(kernel);
    const double f = projected + a2 * a2 - 2 * a2 - nbar * nbar;
    if (f < -1e-9) {
        throw ConsistencyError("negative QFI: " + std::to_string(f));
    }
    return std::max(f, 0.0);
}

double qfi(const SystemParams& p) {
    return qfi(build_kernel(p));
}

double qcrb(const SystemParams& p) {
    const double f = qfi(p);
    if (!(f > 0)) {
        throw UndefinedBoundError("QCRB undefined at zero Fisher information");
    }
    return 1 / std::sqrt(f);
}

std::pair<double, double> benchmarks(double nbar) {
    if (!(nbar > 0)) {
        throw DomainError("benchmarks require nbar > 0");
    }
    return {1 / std::sqrt(nbar), 1 / nbar};
}

}  // namespace pcmzi
