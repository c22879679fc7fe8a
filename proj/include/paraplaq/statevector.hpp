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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <span>
#include <stdexcept>
#include <vector>

#include "paraplaq/matrix.hpp"
#include "paraplaq/pauli.hpp"
#include "paraplaq/rng.hpp"

namespace paraplaq {

/// Dense d^n state-vector simulator. Qudit 0 is the most significant digit
/// of the amplitude index (big-endian). Exact to floating point; the oracle
/// backend for everything the stabilizer tableau cannot express.
class StateVector {
  public:
    static constexpr int kMaxQutrits = 16;

    StateVector(int n, int d = 3) : d_(d), n_(n) {
        if (!is_odd_prime(d)) throw std::invalid_argument("qudit dimension must be an odd prime >= 3");
        if (n < 1) throw std::invalid_argument("state vector needs at least one qudit");
        if (d == 3 && n > kMaxQutrits)
            throw std::invalid_argument("state vector capped at 16 qutrits; use the stabilizer backend");
        size_t dim = 1;
        for (int i = 0; i < n; ++i) dim *= static_cast<size_t>(d);
        amp_.assign(dim, cplx{});
        amp_[0] = 1.0;
    }

    static StateVector product_state(int n, std::span<const int> digits, int d = 3) {
        if (static_cast<int>(digits.size()) != n)
            throw std::invalid_argument("product state: digit count must equal qudit count");
        StateVector s(n, d);
        size_t idx = 0;
        for (int q = 0; q < n; ++q) {
            if (digits[q] < 0 || digits[q] >= d) throw std::invalid_argument("product state: digit out of range");
            idx = idx * d + static_cast<size_t>(digits[q]);
        }
        s.amp_[0] = 0.0;
        s.amp_[idx] = 1.0;
        return s;
    }

    int d() const { return d_; }
    int n() const { return n_; }
    size_t dim() const { return amp_.size(); }
    const std::vector<cplx>& amplitudes() const { return amp_; }

    double norm() const {
        double s = 0;
        for (const cplx& a : amp_) s += std::norm(a);
        return std::sqrt(s);
    }

    size_t stride(int q) const {
        size_t s = 1;
        for (int i = q + 1; i < n_; ++i) s *= static_cast<size_t>(d_);
        return s;
    }

    /// Applies a 1- or 2-qudit unitary. Amplitudes are processed in disjoint
    /// index groups, so any future chunked parallelization is deterministic.
    void apply_gate(const Matrix& gate, std::span<const int> targets) {
        check_targets(targets);
        if (gate.dim() == d_ && targets.size() == 1) {
            apply_1q(gate, targets[0]);
        } else if (gate.dim() == d_ * d_ && targets.size() == 2) {
            apply_2q(gate, targets[0], targets[1]);
        } else {
            throw std::invalid_argument("apply_gate: matrix size does not match target count");
        }
    }

    /// Specialized permutation-with-phase application of a generalized Pauli:
    ///   P|m...> = w^{phase + sum_i z_i m_i} |m - x mod d ...>.
    void apply_pauli(const GeneralizedPauli& p) {
        if (p.d() != d_) throw DimensionMismatch("apply_pauli: dimension mismatch");
        std::vector<cplx> out(amp_.size());
        struct SiteAct {
            size_t str;
            int x, z;
        };
        std::vector<SiteAct> act;
        act.reserve(p.sites().size());
        for (const auto& [site, xz] : p.sites()) {
            if (site < 0 || site >= n_) throw std::out_of_range("apply_pauli: site out of range");
            act.push_back({stride(site), xz.first, xz.second});
        }
        std::vector<cplx> phases(d_);
        for (int k = 0; k < d_; ++k) phases[k] = root_of_unity(k, d_);
        for (size_t idx = 0; idx < amp_.size(); ++idx) {
            if (amp_[idx] == cplx{}) continue;
            long long ph = p.phase();
            size_t nidx = idx;
            for (const SiteAct& s : act) {
                const int dig = static_cast<int>((idx / s.str) % d_);
                ph += static_cast<long long>(s.z) * dig;
                const int nd = mod_d(dig - s.x, d_);
                nidx += (static_cast<long long>(nd) - dig) * static_cast<long long>(s.str);
            }
            out[nidx] += phases[mod_d(ph, d_)] * amp_[idx];
        }
        amp_.swap(out);
    }

    std::complex<double> expectation(const GeneralizedPauli& p) const {
        StateVector t = *this;
        t.apply_pauli(p);
        return inner(*this, t);
    }

    /// <P^lambda> as the Appendix-style weighted sum over <O^k>; the result
    /// is real up to rounding and clamped into [0, 1].
    double projector_expectation(const ChargeProjectorSpec& spec) const {
        const auto weights = projector_weights(spec);
        cplx acc = weights[0].second;  // k = 0 term: <identity> = 1
        StateVector t = *this;
        for (int k = 1; k < d_; ++k) {
            t.apply_pauli(spec.pauli);
            acc += weights[k].second * inner(*this, t);
        }
        return std::clamp(acc.real(), 0.0, 1.0);
    }

    struct MeasureResult {
        int outcome = 0;
        double probability = 0.0;
    };

    /// Projective measurement of an order-d Pauli, Born sampled. Collapses
    /// the state onto the w^outcome eigenspace and renormalizes.
    MeasureResult measure(const GeneralizedPauli& m, Rng& rng) {
        auto branches = eigenbranches(m);
        double u = rng.next_double();
        int outcome = d_ - 1;
        double cum = 0;
        for (int k = 0; k < d_; ++k) {
            cum += branches.prob[k];
            if (u < cum) {
                outcome = k;
                break;
            }
        }
        collapse(branches, outcome);
        return {outcome, branches.prob[outcome]};
    }

    /// Forces the w^k branch; returns its probability. Throws if the branch
    /// has (numerically) zero weight.
    double postselect(const GeneralizedPauli& m, int k) {
        auto branches = eigenbranches(m);
        if (branches.prob[k] < 1e-12)
            throw std::runtime_error("postselect: zero-probability branch");
        collapse(branches, k);
        return branches.prob[k];
    }

    friend std::complex<double> inner(const StateVector& a, const StateVector& b) {
        if (a.d_ != b.d_ || a.n_ != b.n_) throw DimensionMismatch("inner product: shape mismatch");
        cplx s;
        for (size_t i = 0; i < a.amp_.size(); ++i) s += std::conj(a.amp_[i]) * b.amp_[i];
        return s;
    }

    std::complex<double> overlap(const StateVector& other) const { return inner(*this, other); }
    double fidelity(const StateVector& other) const { return std::norm(inner(*this, other)); }

    /// Debug dump: header then little-endian f64 (re, im) pairs in index
    /// order. Not a stability contract.
    void dump_amplitudes(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("dump_amplitudes: cannot open " + path);
        const char magic[8] = {'p', 'p', 'q', 's', 'v', '0', '1', '\n'};
        f.write(magic, 8);
        const std::uint64_t dd = d_, nn = n_;
        f.write(reinterpret_cast<const char*>(&dd), 8);
        f.write(reinterpret_cast<const char*>(&nn), 8);
        for (const cplx& a : amp_) {
            const double re = a.real(), im = a.imag();
            f.write(reinterpret_cast<const char*>(&re), 8);
            f.write(reinterpret_cast<const char*>(&im), 8);
        }
    }

  private:
    struct Branches {
        std::vector<std::vector<cplx>> branch;
        std::vector<double> prob;
    };

    void check_targets(std::span<const int> targets) const {
        for (size_t i = 0; i < targets.size(); ++i) {
            if (targets[i] < 0 || targets[i] >= n_) throw std::out_of_range("gate target out of range");
            for (size_t j = i + 1; j < targets.size(); ++j)
                if (targets[i] == targets[j]) throw std::invalid_argument("gate targets must be distinct");
        }
    }

    void apply_1q(const Matrix& g, int q) {
        const size_t str = stride(q);
        const size_t dim = amp_.size();
        std::vector<cplx> in(d_);
        for (size_t base = 0; base < dim; base += str * d_) {
            for (size_t off = 0; off < str; ++off) {
                for (int r = 0; r < d_; ++r) in[r] = amp_[base + off + str * r];
                for (int r = 0; r < d_; ++r) {
                    cplx s;
                    for (int c = 0; c < d_; ++c) s += g(r, c) * in[c];
                    amp_[base + off + str * r] = s;
                }
            }
        }
    }

    void apply_2q(const Matrix& g, int q1, int q2) {
        const size_t s1 = stride(q1), s2 = stride(q2);
        const size_t dim = amp_.size();
        const int dd = d_ * d_;
        std::vector<cplx> in(dd);
        std::vector<size_t> idx(dd);
        // Walk indices whose q1 and q2 digits are zero, then expand the block.
        for (size_t base = 0; base < dim; ++base) {
            if ((base / s1) % d_ != 0 || (base / s2) % d_ != 0) continue;
            for (int a = 0; a < d_; ++a)
                for (int b = 0; b < d_; ++b) idx[a * d_ + b] = base + s1 * a + s2 * b;
            for (int k = 0; k < dd; ++k) in[k] = amp_[idx[k]];
            for (int r = 0; r < dd; ++r) {
                cplx s;
                for (int c = 0; c < dd; ++c) s += g(r, c) * in[c];
                amp_[idx[r]] = s;
            }
        }
    }

    Branches eigenbranches(const GeneralizedPauli& m) const {
        if (!has_full_order(m)) throw std::invalid_argument("measure: operator must have order d");
        Branches br;
        br.branch.assign(d_, std::vector<cplx>(amp_.size()));
        br.prob.assign(d_, 0.0);
        StateVector t = *this;
        // b_k = (1/d) sum_j w^{-kj} M^j |psi>
        for (int j = 0; j < d_; ++j) {
            for (int k = 0; k < d_; ++k) {
                const cplx w = root_of_unity(mod_d(-static_cast<long long>(k) * j, d_), d_) / cplx(d_, 0);
                for (size_t i = 0; i < amp_.size(); ++i) br.branch[k][i] += w * t.amp_[i];
            }
            if (j + 1 < d_) t.apply_pauli(m);
        }
        for (int k = 0; k < d_; ++k) {
            double p = 0;
            for (const cplx& a : br.branch[k]) p += std::norm(a);
            br.prob[k] = p;
        }
        return br;
    }

    void collapse(const Branches& br, int k) {
        const double nrm = std::sqrt(br.prob[k]);
        if (nrm < 1e-12) throw std::runtime_error("measure: collapsing onto an empty branch");
        for (size_t i = 0; i < amp_.size(); ++i) amp_[i] = br.branch[k][i] / nrm;
    }

    int d_, n_;
    std::vector<cplx> amp_;
};

}  // namespace paraplaq
