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

#ifndef PCMZI_FOCK_HPP
#define PCMZI_FOCK_HPP

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "pcmzi/catalysis.hpp"

namespace pcmzi {
namespace fock {

/// Single-mode Fock amplitude vector, indices 0..n_max.
struct SingleModeState {
    int n_max = 0;
    std::vector<cplx> amps;
    double norm_tail = 0;  // probability mass beyond the truncation

    explicit SingleModeState(int n_max_) : n_max(n_max_), amps(n_max_ + 1, cplx(0)) {}
};

/// Two-mode Fock amplitude grid, entry (n1, n2).
struct TwoModeState {
    int n_max = 0;
    std::vector<cplx> amps;
    double norm_tail = 0;

    explicit TwoModeState(int n_max_) : n_max(n_max_), amps((n_max_ + 1) * (n_max_ + 1), cplx(0)) {}
    cplx at(int n1, int n2) const { return amps[n1 * (n_max + 1) + n2]; }
    cplx& at(int n1, int n2) { return amps[n1 * (n_max + 1) + n2]; }
    double norm_sq() const;
};

SingleModeState squeezed_vacuum(double r, int n_max);
SingleModeState coherent_state(double alpha, int n_max);
TwoModeState product_state(const SingleModeState& mode1, const SingleModeState& mode2);

/// Applies a passive two-mode transform B defined by its action on the
/// creation operators: B c1' B+ = M[0][0] c1' + M[0][1] c2' and
/// B c2' B+ = M[1][0] c1' + M[1][1] c2' (M unitary). Amplitude mass pushed
/// beyond n_max is accumulated into norm_tail.
TwoModeState apply_linear(const TwoModeState& in, const std::array<std::array<cplx, 2>, 2>& m);

/// Real beam splitter of the stated transmissivity; |1,0> maps to
/// sqrt(T)|1,0> - sqrt(1-T)|0,1>.
TwoModeState beam_splitter_apply(const TwoModeState& in, double transmissivity);

/// Phase shifter exp(i phi n) on the second mode.
void apply_phase_mode2(TwoModeState& s, double phi);

/// Heralded catalysis: beam splitter on (squeezed vacuum, |m>), projection
/// of the ancilla onto |m>, renormalization. Returns the prepared state and
/// the success probability (= P_m).
std::pair<SingleModeState, double> prepare_pcsvs(const SystemParams& p, int n_max);

/// Full interferometer output B2 U(phi) B1 (|alpha> (x) pcsvs); mode 1 is
/// the coherent arm, mode 2 carries the catalyzed state.
TwoModeState mzi_output(const SingleModeState& pcsvs, double alpha, double phi, int n_max);

/// <(-1)^{n_2}> of a normalized two-mode state.
double parity_b(const TwoModeState& s);

/// <(1 - 2 t1)^{n_2}>: the loss-dressed parity observable evaluated on the
/// lossless output (0^0 = 1 at t1 = 0.5).
double parity_after_external_loss(const TwoModeState& s, double t1);

/// (<n_2>, <n_2^2>).
std::pair<double, double> number_moments_mode2(const TwoModeState& s);

struct LossChannelResult {
    double parity = 0;
    double mean_n = 0;
    double total_prob = 0;  // Kraus completeness check, should be 1
};

/// Pure-loss channel on mode 2 via the Kraus sum; returns the traced parity
/// and photon-number mean of the mixed output.
LossChannelResult apply_loss_channel(const TwoModeState& s, double t);

/// One unnormalized Kraus branch K_l = sqrt((1-t)^l / l!) t^{n/2} b^l
/// applied to mode 2.
TwoModeState kraus_branch(const TwoModeState& s, double t, int l);

/// Physical-channel reference for the internal-loss parity: loss of
/// transmissivity t2 inserted between the phase shifter and BS2.
double parity_internal_lossy(const SingleModeState& pcsvs, double alpha, double phi, double t2, int n_max);

/// Exact-moment Fisher information: 4 Var(n_2) on B1|in>.
double qfi_numeric(const SystemParams& p, int n_max);
double qfi_numeric(const SingleModeState& pcsvs, double alpha, int n_max);

/// <n> of a normalized single-mode state.
double mean_photon(const SingleModeState& s);

/// Interferometer input |alpha> (x) pcsvs on a common grid.
TwoModeState input_state(const SingleModeState& pcsvs, double alpha, int n_max);

/// The two 50:50 beam splitters of the interferometer.
TwoModeState apply_bs1(const TwoModeState& s);
TwoModeState apply_bs2(const TwoModeState& s);

/// <n_2> on B1|in>; equals nbar/2.
double mean_n_after_bs1(const SystemParams& p, int n_max);

}  // namespace fock
}  // namespace pcmzi

#endif
