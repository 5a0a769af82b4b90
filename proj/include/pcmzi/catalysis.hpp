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

#ifndef PCMZI_CATALYSIS_HPP
#define PCMZI_CATALYSIS_HPP

#include "pcmzi/bi_series.hpp"

namespace pcmzi {

/// Physical configuration of the input light: coherent amplitude alpha
/// (phase fixed to zero), squeezing r, catalysis beam-splitter
/// transmissivity eta, and catalysis photon number m.
struct SystemParams {
    double alpha = 0;
    double r = 0;
    double eta = 1;
    int m = 0;

    /// Throws DomainError when outside the supported domain
    /// (alpha >= 0, 0 <= r <= 1.5, 0 < eta <= 1, 0 <= m <= 8).
    void validate() const;
};

/// Generating-function data of the photon-catalyzed squeezed vacuum state:
/// the series W(tau), W1(tau1), eps = 1/((1-tau)(1-tau1)), the scalar
/// prefactor w0, and the normalization pm (operationally the catalysis
/// success probability).
struct CatalysisKernel {
    SystemParams params;
    double w0 = 0;
    BiSeries w;
    BiSeries w1;
    BiSeries eps;
    double pm = 0;
};

CatalysisKernel build_kernel(const SystemParams& p);

/// The projection functional: (w0^2 / pm) * d^2m/dtau^m dtau1^m f |_0.
/// The result of every physical expectation is real; an imaginary residue
/// beyond tolerance raises ConsistencyError.
double dhat(const CatalysisKernel& kernel, const BiSeries& f);

/// Mean photon number of the catalyzed state.
double mean_photon_b(const SystemParams& p);
double mean_photon_b(const CatalysisKernel& kernel);

/// Total input energy: alpha^2 + mean_photon_b.
double total_mean_photons(const SystemParams& p);
double total_mean_photons(const CatalysisKernel& kernel);

}  // namespace pcmzi

#endif
