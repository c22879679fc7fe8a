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

#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "paraplaq/gates.hpp"
#include "paraplaq/matrix.hpp"
#include "paraplaq/pauli.hpp"
#include "paraplaq/rng.hpp"
#include "paraplaq/zmod.hpp"

namespace paraplaq {

struct NonCliffordGate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Conjugation table of a Clifford gate: the image of each single-site X_t
/// and Z_t (t a formal slot index) as a phased Pauli on the slots.
struct CliffordAction {
    std::string gate;
    int arity = 1;
    int d = 3;
    std::vector<GeneralizedPauli> x_images;  // image of X_slot
    std::vector<GeneralizedPauli> z_images;  // image of Z_slot
};

namespace detail {

/// Dense matrix of a Pauli restricted to `slots` qudits.
inline Matrix pauli_matrix(const GeneralizedPauli& p, int slots) {
    const int d = p.d();
    Matrix acc(1);
    acc(0, 0) = root_of_unity(p.phase(), d);
    for (int s = 0; s < slots; ++s) {
        auto [x, z] = p.exponents_at(s);
        Matrix m = gatedef::pauli_x_matrix(d).pow(x) * gatedef::pauli_z_matrix(d).pow(z);
        acc = kron(acc, m);
    }
    return acc;
}

}  // namespace detail

/// Computes a gate's conjugation table by brute force: U P U^dag is formed
/// as a dense matrix and matched against every phased Pauli on the slots.
/// Fails loudly when some image is not a Pauli (the gate is not Clifford).
inline CliffordAction derive_clifford_action(const GateMatrix& gate) {
    const int d = gate.d, slots = gate.arity;
    CliffordAction act;
    act.gate = gate.name;
    act.arity = slots;
    act.d = d;
    const Matrix& u = gate.m;
    if (!u.is_unitary(1e-10)) throw std::invalid_argument("derive_clifford_action: gate is not unitary");
    const Matrix ud = u.dagger();

    auto match = [&](const Matrix& img, const std::string& what) -> GeneralizedPauli {
        const double tol = 1e-9;
        int patterns = 1;
        for (int i = 0; i < 2 * slots; ++i) patterns *= d;
        for (int pat = 0; pat < patterns; ++pat) {
            GeneralizedPauli cand(d);
            int rem = pat;
            for (int s = 0; s < slots; ++s) {
                const int x = rem % d;
                rem /= d;
                const int z = rem % d;
                rem /= d;
                cand.set_site(s, x, z);
            }
            Matrix cm = detail::pauli_matrix(cand, slots);
            // Find the phase from the first non-negligible entry, then verify.
            int phase = -1;
            for (int r = 0; r < cm.dim() && phase < 0; ++r)
                for (int c = 0; c < cm.dim() && phase < 0; ++c) {
                    if (std::abs(cm(r, c)) < 0.5) continue;
                    const cplx ratio = img(r, c) / cm(r, c);
                    for (int k = 0; k < d; ++k)
                        if (std::abs(ratio - root_of_unity(k, d)) < tol) phase = k;
                    if (phase < 0) goto next_pattern;
                    break;
                }
            if (phase < 0) continue;
            {
                Matrix expect = root_of_unity(phase, d) * cm;
                if ((expect - img).frobenius_norm() < tol) {
                    cand.set_phase(phase);
                    return cand;
                }
            }
        next_pattern:;
        }
        throw NonCliffordGate("gate " + gate.name + ": conjugated " + what + " is not a phased Pauli");
    };

    for (int s = 0; s < slots; ++s) {
        Matrix xs = detail::pauli_matrix(GeneralizedPauli::x(s, d), slots);
        Matrix zs = detail::pauli_matrix(GeneralizedPauli::z(s, d), slots);
        act.x_images.push_back(match(u * xs * ud, "X"));
        act.z_images.push_back(match(u * zs * ud, "Z"));
    }
    return act;
}

/// Exact stabilizer state over Z_d (odd prime): n commuting generator
/// Paulis with phases, full symplectic rank, fixing one pure state.
/// Clifford updates rewrite every generator through a conjugation table;
/// measurement uses the standard prime-qudit single-pivot update. There are
/// no destabilizer rows: deterministic outcomes solve a linear system over
/// Z_d instead, which stays cheap at a few hundred qudits.
class StabilizerTableau {
  public:
    static StabilizerTableau zero_state(int n, int d = 3) {
        StabilizerTableau t;
        t.d_ = d;
        t.n_ = n;
        if (!is_odd_prime(d)) throw std::invalid_argument("tableau: d must be an odd prime");
        if (n < 1) throw std::invalid_argument("tableau: need at least one qudit");
        t.gens_.reserve(n);
        for (int i = 0; i < n; ++i) t.gens_.push_back(GeneralizedPauli::z(i, d));
        return t;
    }

    int d() const { return d_; }
    int n() const { return n_; }
    const std::vector<GeneralizedPauli>& generators() const { return gens_; }

    /// Rewrites every generator through the conjugation table.
    void apply(const CliffordAction& act, std::span<const int> targets) {
        if (static_cast<int>(targets.size()) != act.arity)
            throw std::invalid_argument("tableau apply: target count mismatch");
        for (int t : targets)
            if (t < 0 || t >= n_) throw std::out_of_range("tableau apply: target out of range");
        for (GeneralizedPauli& g : gens_) {
            bool touched = false;
            for (int t : targets) {
                auto [x, z] = g.exponents_at(t);
                if (x || z) touched = true;
            }
            if (!touched) continue;
            GeneralizedPauli img = GeneralizedPauli::identity(d_).with_phase(g.phase());
            GeneralizedPauli rest(d_);
            for (const auto& [site, xz] : g.sites()) {
                int slot = -1;
                for (size_t k = 0; k < targets.size(); ++k)
                    if (targets[k] == site) slot = static_cast<int>(k);
                if (slot < 0) {
                    rest.set_site(site, xz.first, xz.second);
                } else {
                    img = mul(img, pauli_power(instantiate(act.x_images[slot], targets), xz.first));
                    img = mul(img, pauli_power(instantiate(act.z_images[slot], targets), xz.second));
                }
            }
            g = mul(img, rest);
        }
    }

    /// Applying a Pauli only shifts generator phases.
    void apply_pauli(const GeneralizedPauli& p) {
        for (GeneralizedPauli& g : gens_) {
            const int s = commutation_exponent(p, g);
            if (s) g = g.with_phase(s);
        }
    }

    struct MeasureResult {
        int outcome = 0;
        double probability = 1.0;
        bool deterministic = true;
    };

    /// Measures an order-d Pauli. A commuting operator has a deterministic
    /// outcome read off by group membership; otherwise the outcome is
    /// uniform over the d eigenvalues, one pivot generator is replaced by
    /// w^{-k} m and the others are corrected into commutation.
    MeasureResult measure(const GeneralizedPauli& m, Rng& rng, std::optional<int> postselect = std::nullopt) {
        if (m.d() != d_) throw DimensionMismatch("tableau measure: dimension mismatch");
        if (!has_full_order(m)) throw std::invalid_argument("tableau measure: operator must have order d");
        std::vector<int> s(n_);
        int pivot = -1;
        for (int r = 0; r < n_; ++r) {
            s[r] = commutation_exponent(m, gens_[r]);
            if (s[r] && pivot < 0) pivot = r;
        }
        if (pivot < 0) {
            const int k = deterministic_eigenvalue(m);
            if (postselect && *postselect != k)
                throw std::runtime_error("tableau measure: post-selecting a deterministic outcome on the wrong value");
            return {k, 1.0, true};
        }
        // Normalize the pivot so m g_pivot = w^1 g_pivot m, then absorb it
        // into the other non-commuting rows.
        gens_[pivot] = pauli_power(gens_[pivot], inv_mod(s[pivot], d_));
        for (int r = 0; r < n_; ++r) {
            if (r == pivot || s[r] == 0) continue;
            gens_[r] = mul(gens_[r], pauli_power(gens_[pivot], mod_d(-s[r], d_)));
        }
        const int k = postselect ? *postselect : static_cast<int>(rng.next_below(d_));
        gens_[pivot] = m.with_phase(mod_d(-k, d_));
        return {k, 1.0 / d_, false};
    }

    /// <P> on the stabilized state: w^s when w^{-s} P lies in the group,
    /// zero otherwise.
    std::complex<double> group_expectation(const GeneralizedPauli& p) const {
        if (p.is_phase_only()) return root_of_unity(p.phase(), d_);
        for (const GeneralizedPauli& g : gens_)
            if (commutation_exponent(p, g) != 0) return 0.0;
        const int k = deterministic_eigenvalue(p);
        return root_of_unity(k, d_);
    }

    /// Exact projector expectation: 1, 0, or 1/d by the structure of the
    /// group (an order-d Pauli either lies in the group up to phase, giving
    /// a delta distribution, or has uniform outcome weights).
    double projector_expectation(const ChargeProjectorSpec& spec) const {
        const std::complex<double> e = group_expectation(spec.pauli);
        if (std::abs(e) < 0.5) return 1.0 / d_;
        for (int k = 0; k < d_; ++k)
            if (std::abs(e - root_of_unity(k, d_)) < 1e-9) return k == spec.lambda ? 1.0 : 0.0;
        throw std::logic_error("tableau projector: expectation is neither zero nor a root of unity");
    }

    /// Commutation and full-rank checks; reports the first offense.
    bool check_invariants(std::string* why = nullptr) const {
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (commutation_exponent(gens_[a], gens_[b]) != 0) {
                    if (why) *why = "generators " + std::to_string(a) + " and " + std::to_string(b) + " do not commute";
                    return false;
                }
        if (symplectic_rank() != n_) {
            if (why) *why = "symplectic rank deficient";
            return false;
        }
        return true;
    }

    /// One generator per line in the Pauli round-trip format.
    std::string dump(int cols = 0) const {
        std::ostringstream os;
        for (const GeneralizedPauli& g : gens_) os << pauli_to_string(g, cols) << "\n";
        return os.str();
    }

  private:
    GeneralizedPauli instantiate(const GeneralizedPauli& slot_pauli, std::span<const int> targets) const {
        GeneralizedPauli p(d_);
        p.set_phase(slot_pauli.phase());
        for (const auto& [slot, xz] : slot_pauli.sites()) p.set_site(targets[slot], xz.first, xz.second);
        return p;
    }

    /// Solves prod_r g_r^{a_r} = (phase) * P over Z_d and reconciles phases;
    /// returns k with P|psi> = w^k |psi>. Requires P to commute with the
    /// whole group, which for a full-rank tableau implies membership.
    int deterministic_eigenvalue(const GeneralizedPauli& p) const {
        // Build the (x|z) matrix of the generators, column-reduce against p.
        const int cols = 2 * n_;
        std::vector<std::vector<int>> m(n_, std::vector<int>(cols, 0));
        for (int r = 0; r < n_; ++r)
            for (const auto& [site, xz] : gens_[r].sites()) {
                m[r][site] = xz.first;
                m[r][n_ + site] = xz.second;
            }
        std::vector<int> target(cols, 0);
        for (const auto& [site, xz] : p.sites()) {
            target[site] = xz.first;
            target[n_ + site] = xz.second;
        }
        std::vector<int> coeff(n_, 0);
        std::vector<std::vector<int>> work = m;
        std::vector<std::vector<int>> combo(n_, std::vector<int>(n_, 0));
        for (int r = 0; r < n_; ++r) combo[r][r] = 1;
        int row = 0;
        std::vector<int> pivot_col(n_, -1);
        for (int c = 0; c < cols && row < n_; ++c) {
            int pr = -1;
            for (int r = row; r < n_; ++r)
                if (work[r][c] != 0) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            std::swap(work[pr], work[row]);
            std::swap(combo[pr], combo[row]);
            const int inv = inv_mod(work[row][c], d_);
            for (int cc = 0; cc < cols; ++cc) work[row][cc] = mod_d(work[row][cc] * inv, d_);
            for (int cc = 0; cc < n_; ++cc) combo[row][cc] = mod_d(combo[row][cc] * inv, d_);
            for (int r = 0; r < n_; ++r) {
                if (r == row || work[r][c] == 0) continue;
                const int f = work[r][c];
                for (int cc = 0; cc < cols; ++cc) work[r][cc] = mod_d(work[r][cc] - f * work[row][cc], d_);
                for (int cc = 0; cc < n_; ++cc) combo[r][cc] = mod_d(combo[r][cc] - f * combo[row][cc], d_);
            }
            pivot_col[row] = c;
            ++row;
        }
        std::vector<int> residual = target;
        for (int r = 0; r < row; ++r) {
            const int c = pivot_col[r];
            if (residual[c] == 0) continue;
            const int f = residual[c];
            for (int cc = 0; cc < cols; ++cc) residual[cc] = mod_d(residual[cc] - f * work[r][cc], d_);
            for (int cc = 0; cc < n_; ++cc) coeff[cc] = mod_d(coeff[cc] + f * combo[r][cc], d_);
        }
        for (int cc = 0; cc < cols; ++cc)
            if (residual[cc] != 0)
                throw std::logic_error("tableau: commuting Pauli is not in the stabilizer group");
        GeneralizedPauli prod = GeneralizedPauli::identity(d_);
        for (int r = 0; r < n_; ++r)
            if (coeff[r]) prod = mul(prod, pauli_power(gens_[r], coeff[r]));
        // prod = w^{phi} P0 with P0 phaseless; p = w^{p.phase} P0;
        // prod |psi> = |psi>  =>  P0 |psi> = w^{-phi}|psi>.
        return mod_d(p.phase() - prod.phase(), d_);
    }

    int symplectic_rank() const {
        const int cols = 2 * n_;
        std::vector<std::vector<int>> m(n_, std::vector<int>(cols, 0));
        for (int r = 0; r < n_; ++r)
            for (const auto& [site, xz] : gens_[r].sites()) {
                m[r][site] = xz.first;
                m[r][n_ + site] = xz.second;
            }
        int rank = 0;
        for (int c = 0; c < cols && rank < n_; ++c) {
            int pr = -1;
            for (int r = rank; r < n_; ++r)
                if (m[r][c] != 0) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            std::swap(m[pr], m[rank]);
            const int inv = inv_mod(m[rank][c], d_);
            for (int cc = 0; cc < cols; ++cc) m[rank][cc] = mod_d(m[rank][cc] * inv, d_);
            for (int r = 0; r < n_; ++r) {
                if (r == rank || m[r][c] == 0) continue;
                const int f = m[r][c];
                for (int cc = 0; cc < cols; ++cc) m[r][cc] = mod_d(m[r][cc] - f * m[rank][cc], d_);
            }
            ++rank;
        }
        return rank;
    }

    int d_ = 3, n_ = 0;
    std::vector<GeneralizedPauli> gens_;
};

}  // namespace paraplaq
