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

#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "wmrc/linalg.hpp"

using namespace wmrc;
using namespace wmrc_test;

TEST_CASE("hermitian_eig on diagonal and identity input") {
    const auto id = hermitian_eig(ComplexMatrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i) CHECK(id.eigenvalues[i] == doctest::Approx(1.0).epsilon(1e-14));

    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 9.0;
    d(1, 1) = 1.0;
    d(2, 2) = 4.0;
    const auto eig = hermitian_eig(d);
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(4.0));
    CHECK(eig.eigenvalues[2] == doctest::Approx(9.0));
}

TEST_CASE("hermitian_eig reconstruction residual") {
    CounterRng rng(2024, 0);
    for (int n : {2, 3, 5, 8}) {
        const ComplexMatrix a = random_hermitian(rng, n);
        const auto eig = hermitian_eig(a);
        const ComplexMatrix reconstructed =
            eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
        CHECK((reconstructed - a).norm() <= 1e-12 * a.norm());
        const ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
        CHECK((gram - ComplexMatrix::Identity(n, n)).norm() < 1e-12);
    }
}

TEST_CASE("hermitian_eig rejects non-Hermitian and non-PD input") {
    ComplexMatrix bad(2, 2);
    bad << Complex(1, 0), Complex(2, 1), Complex(0, 0), Complex(1, 0);
    CHECK_THROWS_AS(hermitian_eig(bad), ShapeError);
    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::Zero(2, 3)), ShapeError);

    ComplexMatrix indef = ComplexMatrix::Identity(2, 2);
    indef(1, 1) = -1.0;
    CHECK_THROWS_AS(hermitian_eig(indef, true), DefinitenessError);
    CHECK_NOTHROW(hermitian_eig(indef, false));
}

TEST_CASE("eigenvalues are invariant under unitary conjugation") {
    CounterRng rng(7, 3);
    for (int n : {2, 4, 6}) {
        const ComplexMatrix a = random_hermitian(rng, n);
        const ComplexMatrix v = random_unitary(rng, n);
        const ComplexMatrix b = v * a * v.adjoint();
        const auto ea = hermitian_eig(a);
        const auto eb = hermitian_eig(0.5 * (b + b.adjoint().eval()));
        for (int i = 0; i < n; ++i)
            CHECK(eb.eigenvalues[i] ==
                  doctest::Approx(ea.eigenvalues[i]).epsilon(1e-11).scale(a.norm()));
    }
}

TEST_CASE("hermitian_sqrt_psd squares back to the input") {
    CHECK((hermitian_sqrt_psd(ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(3, 3)).norm() <
          1e-14);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const ComplexMatrix r = hermitian_sqrt_psd(d);
    CHECK(r(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r(1, 1).real() == doctest::Approx(3.0).epsilon(1e-14));

    CounterRng rng(11, 0);
    for (int n : {2, 4, 7}) {
        const ComplexMatrix g = random_complex_gaussian(rng, n, n);
        const ComplexMatrix a = g * g.adjoint(); // PSD
        const ComplexMatrix b = hermitian_sqrt_psd(a);
        CHECK((b * b - a).norm() <= 1e-11 * a.norm());
        CHECK((b - b.adjoint().eval()).norm() <= 1e-12 * b.norm());
    }

    ComplexMatrix negdef = -ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(hermitian_sqrt_psd(negdef), DefinitenessError);
}

TEST_CASE("determinant basics") {
    CHECK(determinant(ComplexMatrix::Identity(4, 4)).real() == doctest::Approx(1.0).epsilon(1e-14));

    ComplexMatrix two_equal_rows(3, 3);
    two_equal_rows << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(1, 0), Complex(2, 0),
        Complex(3, 0), Complex(0, 1), Complex(1, 1), Complex(2, 0);
    CHECK(std::abs(determinant(two_equal_rows)) <= 1e-12);

    ComplexMatrix m(2, 2);
    m << Complex(1, 2), Complex(3, -1), Complex(0, 1), Complex(2, 2);
    const Complex expected = Complex(1, 2) * Complex(2, 2) - Complex(3, -1) * Complex(0, 1);
    CHECK(std::abs(determinant(m) - expected) < 1e-13);

    CHECK_THROWS_AS(determinant(ComplexMatrix::Zero(2, 3)), ShapeError);
}

TEST_CASE("determinant equals the eigenvalue product for Hermitian matrices") {
    CounterRng rng(5, 5);
    for (int n : {2, 3, 5}) {
        const ComplexMatrix a = random_hermitian(rng, n);
        const auto eig = hermitian_eig(a);
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= eig.eigenvalues[i];
        CHECK(determinant(a).real() == doctest::Approx(prod).epsilon(1e-11));
        CHECK(std::abs(determinant(a).imag()) < 1e-11 * std::abs(prod));
    }
}

TEST_CASE("log_abs_det matches determinant") {
    CounterRng rng(17, 1);
    for (int n : {1, 3, 6}) {
        RealMatrix a(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) a(r, c) = 2.0 * rng.next_unit() - 1.0;
        const SignedLogDet sld = log_abs_det(a);
        const double det = Eigen::PartialPivLU<RealMatrix>(a).determinant();
        CHECK(static_cast<double>(sld.sign) * std::exp(sld.log_abs) ==
              doctest::Approx(det).epsilon(1e-12));
    }
    RealMatrix singular = RealMatrix::Zero(2, 2);
    CHECK(log_abs_det(singular).sign == 0);
}

TEST_CASE("vandermonde basics and antisymmetry") {
    CHECK(vandermonde(std::vector<double>{5.0}) == 1.0);
    CHECK(vandermonde(std::vector<double>{}) == 1.0);
    CHECK(vandermonde(std::vector<double>{1.0, 2.0, 3.0}) == 2.0);

    // swapping two entries flips the sign and keeps the magnitude
    const std::vector<double> v{0.5, 1.25, 2.0, 3.5};
    std::vector<double> w = v;
    std::swap(w[1], w[3]);
    CHECK(vandermonde(w) == doctest::Approx(-vandermonde(v)).epsilon(1e-15));

    CounterRng rng(23, 0);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = random_spectrum(rng, 5);
        auto b = a;
        std::swap(b[0], b[2]);
        CHECK(vandermonde(b) == doctest::Approx(-vandermonde(a)).epsilon(1e-14));
    }
}

TEST_CASE("reciprocal Vandermonde identity") {
    // prod_{i<j} (1/w_j - 1/w_i) = prod_{i<j} (w_i - w_j) / prod_i w_i^{m-1}
    CounterRng rng(29, 0);
    for (int m : {2, 3, 4, 5, 6}) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto w = random_spectrum(rng, m, 0.1, 4.0);
            std::vector<double> recip(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) recip[i] = 1.0 / w[i];
            double lhs = 1.0;
            for (std::size_t i = 0; i < w.size(); ++i)
                for (std::size_t j = i + 1; j < w.size(); ++j) lhs *= recip[j] - recip[i];
            double numerator = 1.0, denom = 1.0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                for (std::size_t j = i + 1; j < w.size(); ++j) numerator *= w[i] - w[j];
                denom *= std::pow(w[i], static_cast<double>(m - 1));
            }
            CHECK(lhs == doctest::Approx(numerator / denom).epsilon(1e-10));
        }
    }
}

TEST_CASE("multivariate_gamma_norm values") {
    CHECK(multivariate_gamma_norm(1) == 1.0);
    CHECK(multivariate_gamma_norm(3) == 2.0);
    CHECK(multivariate_gamma_norm(4) == 12.0);
    CHECK_THROWS_AS(multivariate_gamma_norm(0), DomainError);
    for (int n = 1; n <= 10; ++n)
        CHECK(std::exp(log_multivariate_gamma_norm(n)) ==
              doctest::Approx(multivariate_gamma_norm(n)).epsilon(1e-13));
}
