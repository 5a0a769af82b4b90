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

#include "pcmzi/lossy.hpp"

#include <cmath>
#include <string>

#include "pcmzi/errors.hpp"
#include "pcmzi/ideal.hpp"
#include "pcmzi/numerics.hpp"

namespace pcmzi {

namespace {

void check_transmissivity(double t, const char* name) {
    if (!(t > 0 && t <= 1)) {
        throw DomainError(std::string(name) + " must lie in (0, 1]");
    }
}

}  // namespace

void LossConfig::validate() const {
    check_transmissivity(t1, "t1");
    check_transmissivity(t2, "t2");
    check_transmissivity(t, "t");
}

double parity_external(const CatalysisKernel& kernel, double phi, double t1) {
    check_transmissivity(t1, "t1");
    const int m = kernel.params.m;
    const double a2 = kernel.params.alpha * kernel.params.alpha;
    const double c = std::cos(phi);
    const double s = std::sin(phi);

    const BiSeries one = BiSeries::constant(m, 1);
    const BiSeries w1w4 = 4.0 * (kernel.w1 * kernel.w);
    const double u = 1 - t1 * (c + 1);
    const BiSeries a1 = one - (u * u) * w1w4;
    // The W-linear term must enter symmetrized as (W + W1); inside the
    // exponential the two placements are not interchangeable, and only the
    // symmetric form reduces to the lossless signal at t1 = 1.
    const BiSeries a2s = (t1 * t1 * s * s) * (kernel.w + kernel.w1) -
                         (t1 * t1 * s * s * (t1 * (c + 1) - 1)) * w1w4;
    const BiSeries expo = (a1 * (t1 * (c - 1)) + a2s) * a2 * recip(a1);
    const double val = dhat(kernel, kernel.eps * pow(a1, -0.5) * exp(expo));
    if (std::abs(val) > 1 + 1e-9) {
        throw ConsistencyError("|lossy parity| > 1: " + std::to_string(val));
    }
    return val;
}

double parity_external(const SystemParams& p, double phi, double t1) {
    return parity_external(build_kernel(p), phi, t1);
}

InternalLossFactors internal_factors(double phi, double t2) {
    check_transmissivity(t2, "t2");
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double rt = std::sqrt(t2);
    InternalLossFactors f;
    f.x1 = (2 * rt * c - 1 - t2) / 2;
    f.x3 = -(2 * rt * c + 1 + t2) / 2;
    const cplx den = cplx(2 * rt * s, t2 - 1) * 2.0;
    if (std::abs(den) == 0) {
        f.x2 = 0;  // removable singularity at (t2, phi) = (1, 0)
    } else {
        const double num = (t2 + 1) * (t2 + 1) - 4 * t2 * c * c;
        f.x2 = num / den;
    }
    return f;
}

double parity_internal(const CatalysisKernel& kernel, double phi, double t2) {
    const InternalLossFactors x = internal_factors(phi, t2);
    const int m = kernel.params.m;
    const double a2 = kernel.params.alpha * kernel.params.alpha;

    const BiSeries one = BiSeries::constant(m, 1);
    const BiSeries w1w4 = 4.0 * (kernel.w1 * kernel.w);
    const double g = 1 + x.x3;
    const BiSeries b1 = one - (g * g) * w1w4;
    const BiSeries b2 = (x.x2 * x.x2) * kernel.w1 + (std::conj(x.x2) * std::conj(x.x2)) * kernel.w +
                        (std::norm(x.x2) * g) * w1w4;
    const BiSeries expo = (b1 * x.x1 + b2) * cplx(a2) * recip(b1);
    const double val = dhat(kernel, kernel.eps * pow(b1, -0.5) * exp(expo));
    if (std::abs(val) > 1 + 1e-9) {
        throw ConsistencyError("|lossy parity| > 1: " + std::to_string(val));
    }
    return val;
}

double parity_internal(const SystemParams& p, double phi, double t2) {
    return parity_internal(build_kernel(p), phi, t2);
}

double sensitivity_lossy(const CatalysisKernel& kernel, double phi, const LossConfig& loss, LossKind which) {
    loss.validate();
    if (std::abs(phi) < 1e-8) {
        throw DegeneratePointError(
            "the lossy parity signal is stationary at phi = 0 (and the sensitivity diverges as phi -> 0)");
    }
    auto signal = [&](double x) {
        return which == LossKind::external ? parity_external(kernel, x, loss.t1)
                                           : parity_internal(kernel, x, loss.t2);
    };
    const double pv = signal(phi);
    const double d = richardson_derivative(signal, phi, derivative_step(phi));
    if (std::abs(d) < 1e-14) {
        throw DegeneratePointError("lossy parity signal is stationary at phi = " + std::to_string(phi));
    }
    return std::sqrt(std::max(0.0, 1 - pv * pv)) / std::abs(d);
}

double sensitivity_lossy(const SystemParams& p, double phi, const LossConfig& loss, LossKind which) {
    return sensitivity_lossy(build_kernel(p), phi, loss, which);
}

double qfi_lossy(const CatalysisKernel& kernel, double t) {
    check_transmissivity(t, "t");
    const double fq = qfi(kernel);
    if (t == 1) {
        return fq;
    }
    const double nb = total_mean_photons(kernel) / 2;  // <psi| b'b |psi> = nbar/2
    if (fq == 0 || nb == 0) {
        return 0;
    }
    return 4 * fq * t * nb / ((1 - t) * fq + 4 * t * nb);
}

double qfi_lossy(const SystemParams& p, double t) {
    return qfi_lossy(build_kernel(p), t);
}

double qcrb_lossy(const SystemParams& p, double t) {
    const double f = qfi_lossy(p, t);
    if (!(f > 0)) {
        throw UndefinedBoundError("lossy QCRB undefined at zero Fisher information");
    }
    return 1 / std::sqrt(f);
}

}  // namespace pcmzi
