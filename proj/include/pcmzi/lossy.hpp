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

#ifndef PCMZI_LOSSY_HPP
#define PCMZI_LOSSY_HPP

#include "pcmzi/catalysis.hpp"

namespace pcmzi {

/// Transmissivities of the three loss placements: t1 before the detector
/// (external), t2 between phase shifter and BS2 (internal), t for the
/// Fisher-information loss channel. A value of 1 means lossless.
struct LossConfig {
    double t1 = 1;
    double t2 = 1;
    double t = 1;

    void validate() const;
};

enum class LossKind { external, internal };

/// The three scalars of the normal-ordered internal-loss parity operator.
/// x2 is genuinely complex away from t2 = 1.
struct InternalLossFactors {
    double x1 = 0;
    cplx x2 = 0;
    double x3 = 0;
};

/// Parity signal with photon loss (transmissivity t1) in front of the
/// detector.
double parity_external(const SystemParams& p, double phi, double t1);
double parity_external(const CatalysisKernel& kernel, double phi, double t1);

/// Factors of the internal-loss parity operator. The (t2, phi) = (1, 0)
/// point of x2 is a removable singularity, handled by its limit 0.
InternalLossFactors internal_factors(double phi, double t2);

/// Parity signal with photon loss (transmissivity t2) between the phase
/// shifter and the second beam splitter.
double parity_internal(const SystemParams& p, double phi, double t2);
double parity_internal(const CatalysisKernel& kernel, double phi, double t2);

/// Error-propagation sensitivity on the chosen lossy parity signal.
double sensitivity_lossy(const SystemParams& p, double phi, const LossConfig& loss, LossKind which);
double sensitivity_lossy(const CatalysisKernel& kernel, double phi, const LossConfig& loss, LossKind which);

/// Fisher information through the optimized pure-loss channel bound:
/// F_QL = 4 F_Q T <n> / ((1-T) F_Q + 4 T <n>) with <n> = nbar/2.
double qfi_lossy(const SystemParams& p, double t);
double qfi_lossy(const CatalysisKernel& kernel, double t);

/// 1/sqrt(F_QL).
double qcrb_lossy(const SystemParams& p, double t);

}  // namespace pcmzi

#endif
