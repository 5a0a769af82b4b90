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

#include "pcmzi/catalysis.hpp"

#include <cmath>
#include <string>

#include "pcmzi/errors.hpp"

namespace pcmzi {

namespace {

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; i++) {
        f *= i;
    }
    return f;
}

}  // namespace

void SystemParams::validate() const {
    if (!(alpha >= 0) || !std::isfinite(alpha)) {
        throw DomainError("alpha must be finite and >= 0");
    }
    if (!(r >= 0) || !std::isfinite(r)) {
        throw DomainError("r must be finite and >= 0");
    }
    if (r > 1.5) {
        throw DomainError("r > 1.5 exceeds the double-precision ceiling of the series engine");
    }
    if (!(eta > 0 && eta <= 1)) {
        throw DomainError("eta must lie in (0, 1]");
    }
    if (m < 0 || m > 8) {
        throw DomainError("m must lie in 0..8 (coefficient growth in (m!)^2 beyond that)");
    }
}

CatalysisKernel build_kernel(const SystemParams& p) {
    p.validate();
    const int m = p.m;
    const double th = std::tanh(p.r);

    const BiSeries one = BiSeries::constant(m, 1);
    const BiSeries tau = BiSeries::tau(m);
    const BiSeries inv1 = recip(one - tau);
    // (1 - tau/eta)^2 expanded exactly as a degree-2 polynomial; this keeps
    // the eta -> 0 regime free of cancellation.
    const BiSeries poly = one - (2.0 / p.eta) * tau + (1.0 / (p.eta * p.eta)) * (tau * tau);

    CatalysisKernel k{p, 0, BiSeries(m), BiSeries(m), BiSeries(m), 0};
    k.w = (-p.eta * th / 2.0) * (poly * (inv1 * inv1));
    k.w1 = k.w.transpose();
    k.eps = inv1 * recip(one - BiSeries::tau1(m));
    k.w0 = std::pow(p.eta, m / 2.0) / (factorial(m) * std::sqrt(std::cosh(p.r)));

    const cplx raw = coeff_mm(k.eps * pow(one - 4.0 * (k.w1 * k.w), -0.5));
    const double pm = k.w0 * k.w0 * raw.real();
    if (!(pm > 0)) {
        throw ConsistencyError("normalization P_m is not positive: " + std::to_string(pm));
    }
    k.pm = pm;
    return k;
}

double dhat(const CatalysisKernel& kernel, const BiSeries& f) {
    if (f.order() != kernel.params.m) {
        throw UsageError("dhat: series order does not match the kernel's catalysis photon number");
    }
    const cplx raw = coeff_mm(f) * (kernel.w0 * kernel.w0 / kernel.pm);
    const double scale = std::max(1.0, std::abs(raw.real()));
    if (std::abs(raw.imag()) > 1e-10 * scale) {
        throw ConsistencyError("dhat: non-real expectation, imaginary residue " + std::to_string(raw.imag()));
    }
    return raw.real();
}

double mean_photon_b(const CatalysisKernel& kernel) {
    const BiSeries one = BiSeries::constant(kernel.params.m, 1);
    const BiSeries g = one - 4.0 * (kernel.w1 * kernel.w);
    const double nb = dhat(kernel, kernel.eps * pow(g, -1.5)) - 1.0;
    // Exactly zero for vacuum catalysis; tiny negative values are roundoff.
    return nb < 0 && nb > -1e-12 ? 0.0 : nb;
}

double mean_photon_b(const SystemParams& p) {
    return mean_photon_b(build_kernel(p));
}

double total_mean_photons(const CatalysisKernel& kernel) {
    const double a = kernel.params.alpha;
    return a * a + mean_photon_b(kernel);
}

double total_mean_photons(const SystemParams& p) {
    return total_mean_photons(build_kernel(p));
}

}  // namespace pcmzi
