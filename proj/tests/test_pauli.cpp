// Copyright 2026 The Paraplaq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "paraplaq/matrix.hpp"
#include "paraplaq/pauli.hpp"
#include "paraplaq/rng.hpp"

using namespace paraplaq;

namespace {

GeneralizedPauli random_pauli(Rng& rng, int sites, int d = 3) {
    GeneralizedPauli p(d);
    p.set_phase(static_cast<int>(rng.next_below(d)));
    for (int s = 0; s < sites; ++s)
        p.set_site(s, static_cast<int>(rng.next_below(d)), static_cast<int>(rng.next_below(d)));
    return p;
}

// Independent dense-matrix oracle for small site counts.
Matrix dense(const GeneralizedPauli& p, int sites) {
    const int d = p.d();
    Matrix x(d), z(d);
    for (int m = 0; m < d; ++m) {
        x((m - 1 + d) % d, m) = 1.0;
        z(m, m) = root_of_unity(m, d);
    }
    Matrix acc(1);
    acc(0, 0) = root_of_unity(p.phase(), d);
    for (int s = 0; s < sites; ++s) {
        auto [xe, ze] = p.exponents_at(s);
        acc = kron(acc, x.pow(xe) * z.pow(ze));
    }
    return acc;
}

}  // namespace

TEST_CASE("XZ and ZX differ by one unit of phase", "[pauli]") {
    auto X = GeneralizedPauli::x(0), Z = GeneralizedPauli::z(0);
    auto xz = mul(X, Z), zx = mul(Z, X);
    REQUIRE(xz.exponents_at(0) == zx.exponents_at(0));
    REQUIRE(mod_d(xz.phase() - zx.phase(), 3) == 1);
}

TEST_CASE("identity is neutral for mul", "[pauli]") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_pauli(rng, 5);
        REQUIRE(mul(p, GeneralizedPauli::identity()) == p);
        REQUIRE(mul(GeneralizedPauli::identity(), p) == p);
    }
}

TEST_CASE("X applied d times is the identity with zero phase", "[pauli]") {
    auto X = GeneralizedPauli::x(0);
    auto acc = GeneralizedPauli::identity();
    for (int i = 0; i < 3; ++i) acc = mul(acc, X);
    REQUIRE(acc.is_identity());
    REQUIRE(pauli_power(X, 3).is_identity());
}

TEST_CASE("mismatched dimensions are rejected", "[pauli]") {
    GeneralizedPauli a(3), b(5);
    REQUIRE_THROWS_AS(mul(a, b), DimensionMismatch);
}

TEST_CASE("commutation exponent basics", "[pauli]") {
    auto X = GeneralizedPauli::x(0), Z = GeneralizedPauli::z(0);
    REQUIRE(commutation_exponent(X, Z) == 1);
    REQUIRE(commutation_exponent(X, X) == 0);
    // a*b = w^s b*a, exactly, on random operators.
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_pauli(rng, 4), b = random_pauli(rng, 4);
        const int s = commutation_exponent(a, b);
        REQUIRE(mul(a, b) == mul(b, a).with_phase(s));
    }
}

TEST_CASE("mul agrees with dense matrix arithmetic", "[pauli]") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_pauli(rng, 3), b = random_pauli(rng, 3);
        Matrix lhs = dense(mul(a, b), 3);
        Matrix rhs = dense(a, 3) * dense(b, 3);
        REQUIRE((lhs - rhs).frobenius_norm() < 1e-12);
    }
}

TEST_CASE("pauli_power matches repeated mul and closes at power d", "[pauli]") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_pauli(rng, 4);
        auto acc = GeneralizedPauli::identity();
        for (int k = 0; k < 3; ++k) {
            REQUIRE(pauli_power(p, k) == acc);
            acc = mul(acc, p);
        }
        auto zero_phase = p;
        zero_phase.set_phase(0);
        REQUIRE(pauli_power(zero_phase, 3).is_identity());
    }
}

TEST_CASE("adjoint inverts and matches dense conjugate transpose", "[pauli]") {
    REQUIRE(pauli_adjoint(GeneralizedPauli::identity()).is_identity());
    Rng rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_pauli(rng, 3);
        REQUIRE(mul(p, pauli_adjoint(p)).is_identity());
        Matrix lhs = dense(pauli_adjoint(p), 3);
        Matrix rhs = dense(p, 3).dagger();
        REQUIRE((lhs - rhs).frobenius_norm() < 1e-12);
    }
}

TEST_CASE("XZ and its adjoint share eigenvectors with conjugate labels", "[pauli]") {
    // Eigenvalue-1 eigenvectors of XZ and (XZ)^dag coincide as sets with
    // swapped labels: v_k of XZ with eigenvalue w^k satisfies
    // (XZ)^dag v_k = w^{-k} v_k. Checked by explicit 3x3 arithmetic.
    auto xz = mul(GeneralizedPauli::x(0), GeneralizedPauli::z(0));
    Matrix m = dense(xz, 1), md = dense(pauli_adjoint(xz), 1);
    // Projector-style eigenvector extraction: v_k ~ sum_j w^{-kj} M^j e0.
    for (int k = 0; k < 3; ++k) {
        std::vector<cplx> v(3, 0.0);
        Matrix mj = Matrix::identity(3);
        for (int j = 0; j < 3; ++j) {
            for (int r = 0; r < 3; ++r) v[r] += root_of_unity(mod_d(-k * j, 3), 3) * mj(r, 0);
            mj = m * mj;
        }
        double nrm = 0;
        for (auto& c : v) nrm += std::norm(c);
        REQUIRE(nrm > 1e-9);  // every sector is populated from e0
        // M v = w^k v and M^dag v = w^{-k} v.
        for (int r = 0; r < 3; ++r) {
            cplx mv = 0, mdv = 0;
            for (int c = 0; c < 3; ++c) {
                mv += m(r, c) * v[c];
                mdv += md(r, c) * v[c];
            }
            REQUIRE(std::abs(mv - root_of_unity(k, 3) * v[r]) < 1e-12);
            REQUIRE(std::abs(mdv - root_of_unity(mod_d(-k, 3), 3) * v[r]) < 1e-12);
        }
    }
}

TEST_CASE("canonicalization is idempotent", "[pauli]") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        auto p = random_pauli(rng, 4);
        auto q = mul(p, GeneralizedPauli::identity());
        REQUIRE(p == q);
        REQUIRE(pauli_power(p, 1) == p);
    }
}

TEST_CASE("projector weights at lambda 0 are uniform 1/d", "[pauli][projector]") {
    ChargeProjectorSpec spec(GeneralizedPauli::z(0), 0);
    auto w = projector_weights(spec);
    REQUIRE(w.size() == 3);
    for (auto& [k, c] : w) REQUIRE(std::abs(c - cplx(1.0 / 3.0, 0.0)) < 1e-15);
}

TEST_CASE("projector completeness and orthogonality as 3x3 matrices", "[pauli][projector]") {
    // O_p = Z on one qutrit; direct matrix arithmetic.
    auto Z = GeneralizedPauli::z(0);
    Matrix zd = dense(Z, 1);
    std::vector<Matrix> proj;
    for (int lam = 0; lam < 3; ++lam) {
        ChargeProjectorSpec spec(Z, lam);
        Matrix acc(3);
        Matrix zk = Matrix::identity(3);
        for (auto& [k, c] : projector_weights(spec)) {
            acc = acc + c * zk;
            zk = zk * zd;
        }
        proj.push_back(acc);
    }
    Matrix sum(3);
    for (auto& p : proj) sum = sum + p;
    REQUIRE((sum - Matrix::identity(3)).frobenius_norm() < 1e-12);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Matrix prod = proj[a] * proj[b];
            Matrix expect = a == b ? proj[a] : Matrix(3);
            REQUIRE((prod - expect).frobenius_norm() < 1e-12);
        }
}

TEST_CASE("charge projector rejects non-order-d operators", "[pauli][projector]") {
    REQUIRE_THROWS_AS(ChargeProjectorSpec(GeneralizedPauli::identity(), 0), std::invalid_argument);
}

TEST_CASE("pauli text format round-trips bit-exactly", "[pauli][format]") {
    Rng rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_pauli(rng, 6);
        REQUIRE(parse_pauli(pauli_to_string(p), 3) == p);
        REQUIRE(parse_pauli(pauli_to_string(p, 4), 3, 4) == p);
    }
    // The documented example shape.
    auto p = parse_pauli("w^2 * X2.Z2 @q(3,4) * X1 @q(3,5)", 3, 8);
    REQUIRE(p.phase() == 2);
    REQUIRE(p.exponents_at(3 * 8 + 4) == std::make_pair(2, 2));
    REQUIRE(p.exponents_at(3 * 8 + 5) == std::make_pair(1, 0));
    REQUIRE(pauli_to_string(p, 8) == "w^2 * X2.Z2 @q(3,4) * X1 @q(3,5)");
    REQUIRE(parse_pauli("1", 3).is_identity());
    REQUIRE_THROWS(parse_pauli("X1 @q(1,2)", 3));  // coordinate form without column count
}

TEST_CASE("pauli algebra holds for d=5 as well", "[pauli][d5]") {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_pauli(rng, 3, 5), b = random_pauli(rng, 3, 5);
        const int s = commutation_exponent(a, b);
        REQUIRE(mul(a, b) == mul(b, a).with_phase(s));
        auto zp = a;
        zp.set_phase(0);
        REQUIRE(pauli_power(zp, 5).is_identity());
    }
}
