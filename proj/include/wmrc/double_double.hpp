// SPDX-License-Identifier: Apache-2.0
//
// wishart-mrc — exact performance statistics for MIMO beamforming/MRC links
// over doubly-correlated Rayleigh fading
// Copyright (C) 2026 the wishart-mrc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Minimal double-double arithmetic (Dekker/Knuth error-free transforms, FMA
// products). Used where an alternating closed form cancels far below double
// precision while the quantity itself is well-conditioned in its inputs.

#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace wmrc::detail {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h, double l) : hi(h), lo(l) {}
    explicit constexpr DD(double x) : hi(x), lo(0.0) {}

    double value() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) { // requires |a| >= |b|
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD operator+(DD a, DD b) {
    const DD s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
    const DD p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD operator*(DD a, double b) {
    const DD p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline DD operator/(DD a, DD b) {
    const double q1 = a.hi / b.hi;
    DD r = a - b * q1;
    const double q2 = r.hi / b.hi;
    r = r - b * q2;
    const double q3 = r.hi / b.hi;
    return quick_two_sum(q1, q2) + DD(q3);
}

inline DD operator/(DD a, double b) { return a / DD(b); }

inline DD dd_sqrt(DD a) {
    if (a.hi <= 0.0) return DD(0.0);
    const double x = std::sqrt(a.hi);
    const DD x2 = two_prod(x, x);
    const DD diff = a - x2;
    return quick_two_sum(x, diff.hi / (2.0 * x));
}

/// a^n for small non-negative integer n by binary exponentiation.
inline DD dd_powi(DD a, int n) {
    DD result(1.0);
    DD base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

/// e^a via 2^k e^r reduction and a Taylor tail, |r| <= ln2 / 2.
inline DD dd_exp(DD a) {
    if (a.hi > 709.0) return DD(std::numeric_limits<double>::infinity());
    if (a.hi < -745.0) return DD(0.0);
    const DD ln2(6.931471805599452862e-01, 2.319046813846299558e-17);
    const double k = std::round(a.hi / ln2.hi);
    const DD r = a - ln2 * k;
    DD term = r;
    DD sum = DD(1.0) + r;
    for (int n = 2; n < 30; ++n) {
        term = term * r / static_cast<double>(n);
        sum = sum + term;
        if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
    }
    const double scale = std::ldexp(1.0, static_cast<int>(k));
    return {sum.hi * scale, sum.lo * scale};
}

/// Determinant of a small dense matrix (row-major, n x n) by partially
/// pivoted elimination in double-double arithmetic. The buffer is destroyed.
inline DD dd_det_destructive(std::vector<DD>& a, int n) {
    DD det(1.0);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col].hi) > std::abs(a[pivot * n + col].hi)) pivot = r;
        if (a[pivot * n + col].hi == 0.0) return DD(0.0);
        if (pivot != col) {
            for (int c = col; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
            det = -det;
        }
        det = det * a[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            const DD factor = a[r * n + col] / a[col * n + col];
            for (int c = col + 1; c < n; ++c)
                a[r * n + c] = a[r * n + c] - factor * a[col * n + c];
        }
    }
    return det;
}

} // namespace wmrc::detail
