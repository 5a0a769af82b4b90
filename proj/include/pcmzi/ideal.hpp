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

#ifndef PCMZI_IDEAL_HPP
#define PCMZI_IDEAL_HPP

#include <utility>

#include "pcmzi/catalysis.hpp"

namespace pcmzi {

/// One evaluated record of a sweep.
struct MetrologyPoint {
    double phi = 0;
    double parity = 0;
    double dparity_dphi = 0;
    double sensitivity = 0;
    double qfi = 0;
    double qcrb = 0;
    double sql = 0;
    double hl = 0;
    double nbar = 0;
};

/// Parity signal of the lossless interferometer at phase shift phi.
double parity_expectation(const SystemParams& p, double phi);
double parity_expectation(const CatalysisKernel& kernel, double phi);

/// Closed-form parity for the eta = 1 special case (coherent light mixed
/// with a plain squeezed vacuum); m-independent regression target.
double parity_svs_closed_form(double alpha, double r, double phi);

/// Error-propagation phase sensitivity sqrt(1 - <Pi>^2) / |d<Pi>/dphi|.
/// Rejects |phi| < 1e-8: the signal is stationary at phi = 0, evaluate at
/// a small offset (e.g. 1e-4) instead.
double phase_sensitivity(const SystemParams& p, double phi);
double phase_sensitivity(const CatalysisKernel& kernel, double phi);

/// Quantum Fisher information of the phase-encoded state.
double qfi(const SystemParams& p);
double qfi(const CatalysisKernel& kernel);

/// Quantum Cramer-Rao bound 1/sqrt(F_Q).
double qcrb(const SystemParams& p);

/// (SQL, HL) = (nbar^{-1/2}, nbar^{-1}).
std::pair<double, double> benchmarks(double nbar);

}  // namespace pcmzi

#endif
