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

#ifndef PCMZI_NUMERICS_HPP
#define PCMZI_NUMERICS_HPP

#include <cmath>

namespace pcmzi {

/// Central difference with two Richardson extrapolation levels
/// (evaluations at h, h/2, h/4; error O(h^6)).
template <typename F>
double richardson_derivative(F&& f, double x, double base_step) {
    auto central = [&](double h) { return (f(x + h) - f(x - h)) / (2 * h); };
    const double d0 = central(base_step);
    const double d1 = central(base_step / 2);
    const double d2 = central(base_step / 4);
    const double r0 = (4 * d1 - d0) / 3;
    const double r1 = (4 * d2 - d1) / 3;
    return (16 * r1 - r0) / 15;
}

/// Step used for all phase derivatives.
inline double derivative_step(double phi) {
    return 1e-6 * std::max(1.0, std::abs(phi));
}

}  // namespace pcmzi

#endif
