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

#ifndef PCMZI_BI_SERIES_HPP
#define PCMZI_BI_SERIES_HPP

#include <complex>
#include <vector>

namespace pcmzi {

using cplx = std::complex<double>;

/// Truncated bivariate formal power series in (tau, tau1) with complex
/// coefficients. Both variables are truncated at the same degree `order`;
/// every arithmetic operation closes at that truncation (higher-degree
/// products are dropped). Values are immutable in spirit: all operations
/// return fresh series, so sharing across threads is safe.
class BiSeries {
  public:
    explicit BiSeries(int order);

    static BiSeries constant(int order, cplx value);
    static BiSeries tau(int order);   // the formal variable tau
    static BiSeries tau1(int order);  // the formal variable tau1

    int order() const { return order_; }

    /// Coefficient of tau^j tau1^k.
    cplx at(int j, int k) const { return coeffs_[idx(j, k)]; }
    cplx& at(int j, int k) { return coeffs_[idx(j, k)]; }

    /// Swap tau <-> tau1 (grid transpose).
    BiSeries transpose() const;

    BiSeries& operator+=(const BiSeries& rhs);
    BiSeries& operator-=(const BiSeries& rhs);
    BiSeries& operator*=(cplx scale);
    BiSeries operator-() const;

    friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
    friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
    friend BiSeries operator*(BiSeries a, cplx s) { return a *= s; }
    friend BiSeries operator*(cplx s, BiSeries a) { return a *= s; }
    friend BiSeries operator*(BiSeries a, double s) { return a *= cplx(s); }
    friend BiSeries operator*(double s, BiSeries a) { return a *= cplx(s); }
    friend BiSeries operator+(BiSeries a, cplx c) { a.at(0, 0) += c; return a; }
    friend BiSeries operator+(cplx c, BiSeries a) { a.at(0, 0) += c; return a; }
    friend BiSeries operator-(BiSeries a, cplx c) { a.at(0, 0) -= c; return a; }
    friend BiSeries operator-(cplx c, const BiSeries& a);

    /// Truncated Cauchy product.
    friend BiSeries operator*(const BiSeries& a, const BiSeries& b);

    bool operator==(const BiSeries& rhs) const = default;

  private:
    int idx(int j, int k) const { return j * (order_ + 1) + k; }

    int order_;
    std::vector<cplx> coeffs_;
};

/// Multiplicative inverse at truncation. Requires a nonzero constant term.
BiSeries recip(const BiSeries& a);

/// a^p = exp(p log a), principal branch on the constant term.
BiSeries pow(const BiSeries& a, double p);

/// exp(a): exact exp of the constant term times the Taylor series of the
/// nilpotent part (finite at truncation).
BiSeries exp(const BiSeries& a);

/// log(a), principal branch on the constant term.
BiSeries log(const BiSeries& a);

/// (m!)^2 times the coefficient of tau^m tau1^m with m = a.order(), i.e.
/// the mixed derivative d^2m/dtau^m dtau1^m of the represented function,
/// evaluated at tau = tau1 = 0.
cplx coeff_mm(const BiSeries& a);

}  // namespace pcmzi

#endif
