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

#include "pcmzi/bi_series.hpp"

#include <cmath>

#include "pcmzi/errors.hpp"

namespace pcmzi {

namespace {

void check_same_order(const BiSeries& a, const BiSeries& b) {
    if (a.order() != b.order()) {
        throw UsageError(
            "BiSeries order mismatch: " + std::to_string(a.order()) + " vs " + std::to_string(b.order()));
    }
}

constexpr double kSingularFloor = 1e-300;

}  // namespace

BiSeries::BiSeries(int order) : order_(order), coeffs_((order + 1) * (order + 1), cplx(0)) {
    if (order < 0) {
        throw UsageError("BiSeries order must be nonnegative");
    }
}

BiSeries BiSeries::constant(int order, cplx value) {
    BiSeries s(order);
    s.at(0, 0) = value;
    return s;
}

BiSeries BiSeries::tau(int order) {
    BiSeries s(order);
    if (order >= 1) {
        s.at(1, 0) = 1;
    }
    return s;
}

BiSeries BiSeries::tau1(int order) {
    BiSeries s(order);
    if (order >= 1) {
        s.at(0, 1) = 1;
    }
    return s;
}

BiSeries BiSeries::transpose() const {
    BiSeries s(order_);
    for (int j = 0; j <= order_; j++) {
        for (int k = 0; k <= order_; k++) {
            s.at(k, j) = at(j, k);
        }
    }
    return s;
}

BiSeries& BiSeries::operator+=(const BiSeries& rhs) {
    check_same_order(*this, rhs);
    for (size_t i = 0; i < coeffs_.size(); i++) {
        coeffs_[i] += rhs.coeffs_[i];
    }
    return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& rhs) {
    check_same_order(*this, rhs);
    for (size_t i = 0; i < coeffs_.size(); i++) {
        coeffs_[i] -= rhs.coeffs_[i];
    }
    return *this;
}

BiSeries& BiSeries::operator*=(cplx scale) {
    for (auto& c : coeffs_) {
        c *= scale;
    }
    return *this;
}

BiSeries BiSeries::operator-() const {
    BiSeries s = *this;
    for (auto& c : s.coeffs_) {
        c = -c;
    }
    return s;
}

BiSeries operator-(cplx c, const BiSeries& a) {
    BiSeries s = -a;
    s.at(0, 0) += c;
    return s;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    check_same_order(a, b);
    const int n = a.order();
    BiSeries out(n);
    for (int j = 0; j <= n; j++) {
        for (int k = 0; k <= n; k++) {
            cplx acc = 0;
            for (int p = 0; p <= j; p++) {
                for (int q = 0; q <= k; q++) {
                    acc += a.at(p, q) * b.at(j - p, k - q);
                }
            }
            out.at(j, k) = acc;
        }
    }
    return out;
}

BiSeries recip(const BiSeries& a) {
    const int n = a.order();
    const cplx c0 = a.at(0, 0);
    if (std::abs(c0) < kSingularFloor) {
        throw SingularSeriesError("recip of series with zero constant term");
    }
    const cplx inv0 = cplx(1) / c0;
    BiSeries r(n);
    // Row-major recurrence: every (j-p, k-q) with (p,q) != (0,0) is already
    // solved when (j,k) is reached.
    for (int j = 0; j <= n; j++) {
        for (int k = 0; k <= n; k++) {
            if (j == 0 && k == 0) {
                r.at(0, 0) = inv0;
                continue;
            }
            cplx acc = 0;
            for (int p = 0; p <= j; p++) {
                for (int q = 0; q <= k; q++) {
                    if (p == 0 && q == 0) {
                        continue;
                    }
                    acc += a.at(p, q) * r.at(j - p, k - q);
                }
            }
            r.at(j, k) = -inv0 * acc;
        }
    }
    return r;
}

BiSeries log(const BiSeries& a) {
    const int n = a.order();
    const cplx c0 = a.at(0, 0);
    if (std::abs(c0) < kSingularFloor) {
        throw SingularSeriesError("log of series with zero constant term");
    }
    // u = a/c0 - 1 is nilpotent: u^(2n+1) vanishes at truncation.
    BiSeries u = a * (cplx(1) / c0);
    u.at(0, 0) -= cplx(1);
    BiSeries acc = BiSeries::constant(n, std::log(c0));
    BiSeries term = u;
    for (int i = 1; i <= 2 * n; i++) {
        acc += term * ((i % 2 == 1 ? 1.0 : -1.0) / i);
        if (i < 2 * n) {
            term = term * u;
        }
    }
    return acc;
}

BiSeries exp(const BiSeries& a) {
    const int n = a.order();
    const cplx c0 = a.at(0, 0);
    const cplx e0 = std::exp(c0);
    if (!std::isfinite(e0.real()) || !std::isfinite(e0.imag())) {
        throw RangeError("exp overflow on series constant term");
    }
    BiSeries v = a;
    v.at(0, 0) = 0;
    BiSeries acc = BiSeries::constant(n, 1);
    BiSeries term = BiSeries::constant(n, 1);
    for (int i = 1; i <= 2 * n; i++) {
        term = term * v;
        term *= cplx(1.0 / i);
        acc += term;
    }
    return acc * e0;
}

BiSeries pow(const BiSeries& a, double p) {
    if (p == 1.0) {
        return a;
    }
    return exp(log(a) * p);
}

cplx coeff_mm(const BiSeries& a) {
    const int m = a.order();
    double fact = 1;
    for (int i = 2; i <= m; i++) {
        fact *= i;
    }
    return a.at(m, m) * (fact * fact);
}

}  // namespace pcmzi
