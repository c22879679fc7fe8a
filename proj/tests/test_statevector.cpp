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

#include "paraplaq/gates.hpp"
#include "paraplaq/statevector.hpp"

using namespace paraplaq;

TEST_CASE("product state basics", "[statevector]") {
    std::vector<int> zeros(12, 0);
    auto s = StateVector::product_state(12, zeros);
    REQUIRE(std::abs(s.amplitudes()[0] - cplx(1.0, 0.0)) < 1e-15);
    REQUIRE(std::abs(s.norm() - 1.0) < 1e-12);

    std::vector<int> digits{1, 2};
    auto t = StateVector::product_state(2, digits);
    REQUIRE(std::abs(t.amplitudes()[1 * 3 + 2] - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("Hadamard builds the uniform |+> state", "[statevector]") {
    const auto& lib = qutrit_gates();
    StateVector s(1);
    s.apply_gate(lib.gate("H").m, std::array{0});
    for (int i = 0; i < 3; ++i) REQUIRE(std::abs(s.amplitudes()[i] - cplx(1.0 / std::sqrt(3.0), 0.0)) < 1e-12);

    // |+>^2 has nine equal amplitudes 1/3.
    StateVector t(2);
    t.apply_gate(lib.gate("H").m, std::array{0});
    t.apply_gate(lib.gate("H").m, std::array{1});
    for (int i = 0; i < 9; ++i) REQUIRE(std::abs(t.amplitudes()[i] - cplx(1.0 / 3.0, 0.0)) < 1e-12);
}

TEST_CASE("U_v on |00> gives the first column of its entry table", "[statevector]") {
    const auto& lib = qutrit_gates();
    StateVector s(2);
    s.apply_gate(lib.gate("UV").m, std::array{0, 1});
    const double r3 = std::sqrt(3.0);
    REQUIRE(std::abs(s.amplitudes()[0] - cplx(1 / r3, 0)) < 1e-12);                    // |00>
    REQUIRE(std::abs(s.amplitudes()[1] - cplx(1 / r3, 0)) < 1e-12);                    // |01>
    REQUIRE(std::abs(s.amplitudes()[2] - root_of_unity(1, 3) / r3) < 1e-12);           // |02>
    for (int i = 3; i < 9; ++i) REQUIRE(std::abs(s.amplitudes()[i]) < 1e-12);
}

TEST_CASE("identity gate leaves the state unchanged", "[statevector]") {
    StateVector s(3);
    const auto& lib = qutrit_gates();
    s.apply_gate(lib.gate("H").m, std::array{1});
    auto before = s.amplitudes();
    s.apply_gate(Matrix::identity(3), std::array{2});
    for (size_t i = 0; i < before.size(); ++i) REQUIRE(std::abs(before[i] - s.amplitudes()[i]) < 1e-15);
}

TEST_CASE("apply_pauli matches the qudit operator definitions", "[statevector]") {
    // Z|1> = w|1>
    std::vector<int> one{1};
    auto s = StateVector::product_state(1, one);
    s.apply_pauli(GeneralizedPauli::z(0));
    REQUIRE(std::abs(s.amplitudes()[1] - root_of_unity(1, 3)) < 1e-15);

    // X|0> = |2> (X|m> = |m-1 mod 3>)
    std::vector<int> zero{0};
    auto t = StateVector::product_state(1, zero);
    t.apply_pauli(GeneralizedPauli::x(0));
    REQUIRE(std::abs(t.amplitudes()[2] - cplx(1.0, 0.0)) < 1e-15);

    // X applied three times is the identity.
    t.apply_pauli(GeneralizedPauli::x(0));
    t.apply_pauli(GeneralizedPauli::x(0));
    REQUIRE(std::abs(t.amplitudes()[0] - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("gate application preserves norm and inverts cleanly", "[statevector]") {
    const auto& lib = qutrit_gates();
    Rng rng(5);
    StateVector s(4);
    // Random-ish product start.
    for (int q = 0; q < 4; ++q) s.apply_gate(lib.gate("H").m, std::array{q});
    s.apply_gate(lib.gate("CZ").m, std::array{0, 2});
    s.apply_gate(lib.gate("UV").m, std::array{1, 3});
    REQUIRE(std::abs(s.norm() - 1.0) < 1e-12);
    auto before = s.amplitudes();
    s.apply_gate(lib.gate("UV").m, std::array{2, 0});
    s.apply_gate(lib.gate("UVD").m, std::array{2, 0});
    for (size_t i = 0; i < before.size(); ++i) REQUIRE(std::abs(before[i] - s.amplitudes()[i]) < 1e-12);
}

TEST_CASE("expectation and projector expectation on simple states", "[statevector]") {
    std::vector<int> zeros(2, 0);
    auto s = StateVector::product_state(2, zeros);
    REQUIRE(std::abs(s.expectation(GeneralizedPauli::identity()) - cplx(1.0, 0.0)) < 1e-12);
    REQUIRE(std::abs(s.expectation(GeneralizedPauli::z(0)) - cplx(1.0, 0.0)) < 1e-12);
    REQUIRE(std::abs(s.expectation(GeneralizedPauli::x(0))) < 1e-12);

    // Projector sums to one over lambda for arbitrary states.
    const auto& lib = qutrit_gates();
    s.apply_gate(lib.gate("H").m, std::array{0});
    s.apply_gate(lib.gate("UV").m, std::array{0, 1});
    auto op = mul(GeneralizedPauli::z(0), GeneralizedPauli::x(1));
    double total = 0;
    for (int lam = 0; lam < 3; ++lam) total += s.projector_expectation(ChargeProjectorSpec(op, lam));
    REQUIRE(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("measuring XZ-dagger on fresh qutrits is uniform", "[statevector][measure]") {
    // Single-qutrit operator on a product state: each outcome 1/3.
    auto xzd = mul(GeneralizedPauli::x(0), pauli_adjoint(GeneralizedPauli::z(0)));
    std::vector<int> zeros(2, 0);
    for (int k = 0; k < 3; ++k) {
        auto s = StateVector::product_state(2, zeros);
        const double p = s.postselect(xzd, k);
        REQUIRE(std::abs(p - 1.0 / 3.0) < 1e-12);
    }
}

TEST_CASE("postselecting eigenvalue 1 of XZ gives the stated eigenvector", "[statevector][measure]") {
    // For XZ the eigenvalue-1 state is (|0> + wbar|1> + |2>)/sqrt(3).
    auto xz = mul(GeneralizedPauli::x(0), GeneralizedPauli::z(0));
    std::vector<int> zero{0};
    auto s = StateVector::product_state(1, zero);
    s.postselect(xz, 0);
    const cplx a0 = s.amplitudes()[0];
    REQUIRE(std::abs(a0) > 1e-9);
    const cplx a1 = s.amplitudes()[1] / a0, a2 = s.amplitudes()[2] / a0;
    REQUIRE(std::abs(a1 - root_of_unity(2, 3)) < 1e-12);
    REQUIRE(std::abs(a2 - cplx(1.0, 0.0)) < 1e-12);

    // And for XZ-dagger it is (|0> + w|1> + |2>)/sqrt(3).
    auto xzd = mul(GeneralizedPauli::x(0), pauli_adjoint(GeneralizedPauli::z(0)));
    auto t = StateVector::product_state(1, zero);
    t.postselect(xzd, 0);
    const cplx b0 = t.amplitudes()[0];
    REQUIRE(std::abs(t.amplitudes()[1] / b0 - root_of_unity(1, 3)) < 1e-12);
    REQUIRE(std::abs(t.amplitudes()[2] / b0 - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("measuring a stabilizer of the state is deterministic", "[statevector][measure]") {
    StateVector s(1);
    Rng rng(3);
    auto r = s.measure(GeneralizedPauli::z(0), rng);
    REQUIRE(r.outcome == 0);
    REQUIRE(std::abs(r.probability - 1.0) < 1e-12);
}

TEST_CASE("measurement statistics match analytic probabilities", "[statevector][measure][slow]") {
    auto xzd = mul(GeneralizedPauli::x(0), pauli_adjoint(GeneralizedPauli::z(0)));
    std::vector<int> zero{0};
    const int shots = 10000;
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < shots; ++i) {
        Rng rng(42, i);
        auto s = StateVector::product_state(1, zero);
        counts[s.measure(xzd, rng).outcome]++;
    }
    // 5 standard errors around p = 1/3.
    const double p = 1.0 / 3.0, se = std::sqrt(p * (1 - p) / shots);
    for (int k = 0; k < 3; ++k) REQUIRE(std::abs(counts[k] / double(shots) - p) < 5 * se);
}

TEST_CASE("overlap and fidelity", "[statevector]") {
    std::vector<int> a{0, 1}, b{0, 2};
    auto sa = StateVector::product_state(2, a);
    auto sb = StateVector::product_state(2, b);
    REQUIRE(std::abs(sa.fidelity(sa) - 1.0) < 1e-12);
    REQUIRE(std::abs(sa.fidelity(sb)) < 1e-12);
    StateVector other(3);
    REQUIRE_THROWS_AS(sa.overlap(other), DimensionMismatch);
}

TEST_CASE("postselecting a zero-probability branch throws", "[statevector][measure]") {
    StateVector s(1);  // |0>, Z-eigenvalue 1
    REQUIRE_THROWS(s.postselect(GeneralizedPauli::z(0), 1));
}

TEST_CASE("size cap is enforced for qutrits", "[statevector]") {
    REQUIRE_THROWS_AS(StateVector(17, 3), std::invalid_argument);
}
