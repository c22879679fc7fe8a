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

#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "paraplaq/matrix.hpp"
#include "paraplaq/pauli.hpp"

namespace paraplaq {

struct GateMatrix {
    std::string name;
    int arity = 1;
    int d = 3;
    Matrix m;
};

/// One gate application inside a named circuit; slots index the circuit's
/// formal qudits (0 = first, 1 = second).
struct CircuitGate {
    std::string gate;
    std::vector<int> slots;
};

namespace gatedef {

inline Matrix fourier(int d) {
    Matrix h(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) h(i, j) = root_of_unity(i * j, d) / std::sqrt(double(d));
    return h;
}

inline Matrix pauli_x_matrix(int d) {
    // X|m> = |m-1 mod d>
    Matrix x(d);
    for (int m = 0; m < d; ++m) x((m - 1 + d) % d, m) = 1.0;
    return x;
}

inline Matrix pauli_z_matrix(int d) {
    Matrix z(d);
    for (int m = 0; m < d; ++m) z(m, m) = root_of_unity(m, d);
    return z;
}

inline Matrix reflect(int d) {
    // K|j> = |d-j mod d>
    Matrix k(d);
    for (int j = 0; j < d; ++j) k((d - j) % d, j) = 1.0;
    return k;
}

inline Matrix phase_s(int d) {
    // S = diag(w^{j(j-1)/2}); for d=3 this is diag(1, 1, w).
    Matrix s(d);
    for (int j = 0; j < d; ++j) s(j, j) = root_of_unity(j * (j - 1) / 2, d);
    return s;
}

inline Matrix controlled_z(int d, int power) {
    Matrix g(d * d);
    for (int c = 0; c < d; ++c)
        for (int t = 0; t < d; ++t) g(c * d + t, c * d + t) = root_of_unity(power * c * t, d);
    return g;
}

inline Matrix controlled_x(int d, int power) {
    // CX|c,t> = |c, t - c>; power -1 gives the adder |c, t + c>.
    Matrix g(d * d);
    for (int c = 0; c < d; ++c)
        for (int t = 0; t < d; ++t) g(c * d + ((t - power * c) % d + d * d) % d, c * d + t) = 1.0;
    return g;
}

inline Matrix swap(int d) {
    Matrix g(d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) g(b * d + a, a * d + b) = 1.0;
    return g;
}

/// Vertical-move two-qutrit unitary, algebraic form:
///   U_v(i,j) = (1 + w Zi^dag Xj + Zi Xj^dag) / sqrt(3),
/// in the basis |i j> with i the first factor.
inline Matrix uv_algebraic() {
    const int d = 3;
    const Matrix X = pauli_x_matrix(d), Z = pauli_z_matrix(d), I = Matrix::identity(d);
    Matrix u = kron(I, I) + root_of_unity(1, 3) * kron(Z.dagger(), X) + kron(Z, X.dagger());
    return cplx(1.0 / std::sqrt(3.0), 0.0) * u;
}

/// Horizontal-move unitary: U_h(i,j) = (1 + w Zj Xi + Zj^dag Xi^dag) / sqrt(3).
inline Matrix uh_algebraic() {
    const int d = 3;
    const Matrix X = pauli_x_matrix(d), Z = pauli_z_matrix(d), I = Matrix::identity(d);
    Matrix u = kron(I, I) + root_of_unity(1, 3) * kron(X, Z) + kron(X.dagger(), Z.dagger());
    return cplx(1.0 / std::sqrt(3.0), 0.0) * u;
}

/// U_v as the explicit entry table (block ordering |00>,|01>,...,|22>).
inline Matrix uv_table() {
    const cplx w = root_of_unity(1, 3), wb = root_of_unity(2, 3), one = 1.0, nil = 0.0;
    const cplx e[9][9] = {
        {one, w, one, nil, nil, nil, nil, nil, nil},
        {one, one, w, nil, nil, nil, nil, nil, nil},
        {w, one, one, nil, nil, nil, nil, nil, nil},
        {nil, nil, nil, one, one, w, nil, nil, nil},
        {nil, nil, nil, w, one, one, nil, nil, nil},
        {nil, nil, nil, one, w, one, nil, nil, nil},
        {nil, nil, nil, nil, nil, nil, one, wb, wb},
        {nil, nil, nil, nil, nil, nil, wb, one, wb},
        {nil, nil, nil, nil, nil, nil, wb, wb, one},
    };
    Matrix m(9);
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c) m(r, c) = e[r][c] / std::sqrt(3.0);
    return m;
}

/// U_h entry table in the same basis.
inline Matrix uh_table() {
    const cplx w = root_of_unity(1, 3), wb = root_of_unity(2, 3), one = 1.0, nil = 0.0;
    const cplx e[9][9] = {
        {one, nil, nil, w, nil, nil, one, nil, nil},
        {nil, one, nil, nil, wb, nil, nil, wb, nil},
        {nil, nil, one, nil, nil, one, nil, nil, w},
        {one, nil, nil, one, nil, nil, w, nil, nil},
        {nil, wb, nil, nil, one, nil, nil, wb, nil},
        {nil, nil, w, nil, nil, one, nil, nil, one},
        {w, nil, nil, one, nil, nil, one, nil, nil},
        {nil, wb, nil, nil, wb, nil, nil, one, nil},
        {nil, nil, one, nil, nil, w, nil, nil, one},
    };
    Matrix m(9);
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c) m(r, c) = e[r][c] / std::sqrt(3.0);
    return m;
}

/// Single-qutrit block of the vertical-move circuit: two Givens rotations in
/// the {0,1} and {1,2} subspaces interleaved with diagonal phase layers.
inline Matrix gv(double theta1, double theta2) {
    auto diag = [](cplx a, cplx b, cplx c) {
        Matrix m(3);
        m(0, 0) = a;
        m(1, 1) = b;
        m(2, 2) = c;
        return m;
    };
    auto r12 = [](double t) {
        Matrix m = Matrix::identity(3);
        m(1, 1) = std::cos(t);
        m(1, 2) = -std::sin(t);
        m(2, 1) = std::sin(t);
        m(2, 2) = std::cos(t);
        return m;
    };
    auto r01 = [](double t) {
        Matrix m = Matrix::identity(3);
        m(0, 0) = std::cos(t);
        m(0, 1) = -std::sin(t);
        m(1, 0) = std::sin(t);
        m(1, 1) = std::cos(t);
        return m;
    };
    const double pi = 3.14159265358979323846;
    Matrix d1 = diag(1.0, std::polar(1.0, pi / 3), std::polar(1.0, pi / 3));
    Matrix d2 = diag(1.0, std::polar(1.0, 4 * pi / 3), std::polar(1.0, 5 * pi / 6));
    Matrix d3 = diag(1.0, 1.0, -1.0);
    return d1 * r12(theta1) * r01(theta2) * d2 * r12(theta1) * d3;
}

}  // namespace gatedef

/// The named gate set plus the composite circuits the tests exercise. The
/// constructor runs the internal consistency checks and refuses to hand out
/// a library that failed any of them.
class GateLibrary {
  public:
    explicit GateLibrary(int d = 3) : d_(d) {
        if (!is_odd_prime(d)) throw std::invalid_argument("gate library: d must be an odd prime");
        using namespace gatedef;
        add("H", 1, fourier(d));
        add("HD", 1, fourier(d).dagger());
        add("K", 1, reflect(d));
        add("S", 1, phase_s(d));
        add("SD", 1, phase_s(d).dagger());
        add("X", 1, pauli_x_matrix(d));
        add("XD", 1, pauli_x_matrix(d).dagger());
        add("Z", 1, pauli_z_matrix(d));
        add("ZD", 1, pauli_z_matrix(d).dagger());
        add("CZ", 2, controlled_z(d, 1));
        add("CZD", 2, controlled_z(d, -1));
        add("CX", 2, controlled_x(d, 1));
        add("CXD", 2, controlled_x(d, -1));
        add("SWAP", 2, swap(d));
        if (d == 3) {
            build_qutrit_moves();
            self_check();
        }
    }

    int d() const { return d_; }

    const GateMatrix& gate(const std::string& name) const {
        auto it = gates_.find(name);
        if (it == gates_.end()) throw std::invalid_argument("unknown gate: " + name);
        return it->second;
    }

    bool has(const std::string& name) const { return gates_.count(name) != 0; }

    double theta1() const { return theta1_; }
    double theta2() const { return theta2_; }

    /// Circuit realizing U_v(slot0, slot1) from G_v plus one CZ, up to a
    /// global phase. Verified against the entry table on construction.
    const std::vector<CircuitGate>& uv_from_gv_circuit() const { return uv_circuit_; }

    /// Circuit turning U_v into U_h: conjugation by SWAP and K on slot 1.
    const std::vector<CircuitGate>& uh_from_uv_circuit() const { return uh_circuit_; }

    /// SWAP decomposed into CX-type gates, themselves expanded to H/CZ; the
    /// CZ comes from the U_v/G_v circuit, so SWAP reduces to {U_v, G_v, K,
    /// H, S, Z} as building blocks.
    const std::vector<CircuitGate>& swap_circuit() const { return swap_circuit_; }

    /// Composes a circuit over `slots` formal qudits into a dense matrix.
    Matrix compose(const std::vector<CircuitGate>& circuit, int slots) const {
        int dim = 1;
        for (int i = 0; i < slots; ++i) dim *= d_;
        Matrix acc = Matrix::identity(dim);
        for (const CircuitGate& cg : circuit) acc = embed(gate(cg.gate).m, cg.slots, slots) * acc;
        return acc;
    }

    /// Embeds a 1- or 2-qudit gate into a `slots`-qudit operator.
    Matrix embed(const Matrix& g, const std::vector<int>& on, int slots) const {
        int dim = 1;
        for (int i = 0; i < slots; ++i) dim *= d_;
        Matrix m(dim);
        std::vector<int> dr(slots), dc(slots);
        for (int r = 0; r < dim; ++r) {
            int rem = r;
            for (int q = slots - 1; q >= 0; --q) {
                dr[q] = rem % d_;
                rem /= d_;
            }
            for (int c = 0; c < dim; ++c) {
                rem = c;
                for (int q = slots - 1; q >= 0; --q) {
                    dc[q] = rem % d_;
                    rem /= d_;
                }
                bool same = true;
                for (int q = 0; q < slots && same; ++q) {
                    bool acted = false;
                    for (int s : on) acted = acted || s == q;
                    if (!acted && dr[q] != dc[q]) same = false;
                }
                if (!same) continue;
                int gr = 0, gc = 0;
                for (int s : on) {
                    gr = gr * d_ + dr[s];
                    gc = gc * d_ + dc[s];
                }
                m(r, c) = g(gr, gc);
            }
        }
        return m;
    }

  private:
    void add(const std::string& name, int arity, Matrix m) {
        if (!m.is_unitary(1e-12)) throw std::logic_error("gate library: " + name + " is not unitary");
        gates_[name] = GateMatrix{name, arity, d_, std::move(m)};
    }

    void build_qutrit_moves() {
        using namespace gatedef;
        // Both move unitaries are pinned two ways: the algebraic Pauli sum
        // and the literal entry table must agree exactly.
        Matrix uv_a = uv_algebraic(), uv_t = uv_table();
        if ((uv_a - uv_t).frobenius_norm() > 1e-12)
            throw std::logic_error("gate library: U_v algebraic form disagrees with its entry table");
        Matrix uh_a = uh_algebraic(), uh_t = uh_table();
        if ((uh_a - uh_t).frobenius_norm() > 1e-12)
            throw std::logic_error("gate library: U_h algebraic form disagrees with its entry table");
        add("UV", 2, uv_t);
        add("UVD", 2, uv_t.dagger());
        add("UH", 2, uh_t);
        add("UHD", 2, uh_t.dagger());

        refine_theta2();
        add("GV", 1, gatedef::gv(theta1_, theta2_));
        add("GVD", 1, gatedef::gv(theta1_, theta2_).dagger());

        uv_circuit_ = {{"GV", {1}}, {"HD", {1}}, {"CZ", {0, 1}}, {"Z", {1}}, {"H", {1}}, {"SD", {0}}};
        uh_circuit_ = {{"K", {1}}, {"SWAP", {0, 1}}, {"UV", {0, 1}}, {"SWAP", {0, 1}}, {"K", {1}}};

        // SWAP = K_0 . CXD(0,1) . CX(1,0) . CXD(0,1), with CX(c,t) expanded
        // as H_t CZ(c,t) HD_t and CZ recovered from the U_v/G_v circuit.
        auto cz_word = [](int c, int t) {
            return std::vector<CircuitGate>{{"H", {t}},  {"GVD", {t}}, {"UV", {c, t}},
                                            {"S", {c}},  {"HD", {t}},  {"ZD", {t}}};
        };
        auto append = [](std::vector<CircuitGate>& out, const std::vector<CircuitGate>& in) {
            out.insert(out.end(), in.begin(), in.end());
        };
        auto cxd_word = [&](int c, int t) {
            std::vector<CircuitGate> w{{"HD", {t}}};
            append(w, cz_word(c, t));  // CZD = CZ^2
            append(w, cz_word(c, t));
            w.push_back({"H", {t}});
            return w;
        };
        auto cx_word = [&](int c, int t) {
            std::vector<CircuitGate> w{{"HD", {t}}};
            append(w, cz_word(c, t));
            w.push_back({"H", {t}});
            return w;
        };
        swap_circuit_.clear();
        append(swap_circuit_, cxd_word(0, 1));
        append(swap_circuit_, cx_word(1, 0));
        append(swap_circuit_, cxd_word(0, 1));
        swap_circuit_.push_back({"K", {0}});
    }

    void refine_theta2() {
        // theta2 is only quoted to four digits; recover it by maximizing the
        // phase-aligned overlap of the G_v circuit with the U_v table.
        const double pi = 3.14159265358979323846;
        theta1_ = pi / 4;
        auto overlap = [&](double t2) {
            Matrix g = gatedef::gv(theta1_, t2);
            Matrix circ = uv_circuit_matrix(g);
            return std::abs((circ.dagger() * gate("UV").m).trace());
        };
        double lo = 1.68 * pi, hi = 1.71 * pi;
        for (int it = 0; it < 200; ++it) {
            const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (overlap(m1) < overlap(m2))
                lo = m1;
            else
                hi = m2;
        }
        theta2_ = 0.5 * (lo + hi);
    }

    Matrix uv_circuit_matrix(const Matrix& g) const {
        // S^dag_0 . H_1 . Z_1 . CZ . HD_1 . GV_1 (application order rightmost first).
        const Matrix I = Matrix::identity(3);
        Matrix m = kron(I, g);
        m = kron(I, gate("HD").m) * m;
        m = gate("CZ").m * m;
        m = kron(I, gate("Z").m) * m;
        m = kron(I, gate("H").m) * m;
        m = kron(gate("SD").m, I) * m;
        return m;
    }

    void self_check() {
        Matrix circ = uv_circuit_matrix(gate("GV").m);
        if (circ.phase_aligned_distance(gate("UV").m) > 1e-9)
            throw std::logic_error("gate library: G_v circuit fails to reproduce U_v");
        Matrix uh = compose(uh_from_uv_circuit(), 2);
        if (uh.phase_aligned_distance(gate("UH").m) > 1e-9)
            throw std::logic_error("gate library: U_h circuit fails to reproduce U_h");
        Matrix sw = compose(swap_circuit(), 2);
        if (sw.phase_aligned_distance(gate("SWAP").m) > 1e-9)
            throw std::logic_error("gate library: SWAP circuit fails to reproduce SWAP");
    }

    int d_;
    double theta1_ = 0, theta2_ = 0;
    std::map<std::string, GateMatrix> gates_;
    std::vector<CircuitGate> uv_circuit_, uh_circuit_, swap_circuit_;
};

/// Process-wide qutrit library (construction is expensive enough to cache).
inline const GateLibrary& qutrit_gates() {
    static const GateLibrary lib(3);
    return lib;
}

}  // namespace paraplaq
