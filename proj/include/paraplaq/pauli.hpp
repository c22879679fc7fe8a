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

#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "paraplaq/zmod.hpp"

namespace paraplaq {

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Generalized Pauli operator over Z_d (d an odd prime):
///
///   w^phase * prod_i X_i^{x_i} Z_i^{z_i},   w = exp(2*pi*i/d),
///
/// with X|m> = |m-1 mod d>, Z|m> = w^m |m>. The per-site normal form keeps
/// X to the left of Z; every reordering phase is folded into `phase`. Sites
/// with (x, z) == (0, 0) are never stored, so string operators stay sparse.
/// Values are immutable in spirit: all operations return fresh canonical
/// operators, and equal operators compare equal field-by-field.
class GeneralizedPauli {
  public:
    explicit GeneralizedPauli(int d = 3) : d_(d) {
        if (!is_odd_prime(d)) throw std::invalid_argument("qudit dimension must be an odd prime >= 3");
    }

    int d() const { return d_; }
    int phase() const { return phase_; }
    const std::map<int, std::pair<int, int>>& sites() const { return sites_; }

    bool is_identity() const { return sites_.empty() && phase_ == 0; }
    bool is_phase_only() const { return sites_.empty(); }
    int weight() const { return static_cast<int>(sites_.size()); }

    std::pair<int, int> exponents_at(int site) const {
        auto it = sites_.find(site);
        return it == sites_.end() ? std::pair<int, int>{0, 0} : it->second;
    }

    GeneralizedPauli with_phase(int extra) const {
        GeneralizedPauli r = *this;
        r.phase_ = mod_d(r.phase_ + extra, d_);
        return r;
    }

    friend bool operator==(const GeneralizedPauli& a, const GeneralizedPauli& b) {
        return a.d_ == b.d_ && a.phase_ == b.phase_ && a.sites_ == b.sites_;
    }

    static GeneralizedPauli identity(int d = 3) { return GeneralizedPauli(d); }

    static GeneralizedPauli single(int site, int x_exp, int z_exp, int d = 3, int phase = 0) {
        GeneralizedPauli p(d);
        p.phase_ = mod_d(phase, d);
        p.set_site(site, x_exp, z_exp);
        return p;
    }

    static GeneralizedPauli x(int site, int d = 3) { return single(site, 1, 0, d); }
    static GeneralizedPauli z(int site, int d = 3) { return single(site, 0, 1, d); }

    // Mutating setter used by builders; keeps the canonical sparse form.
    void set_site(int site, int x_exp, int z_exp) {
        x_exp = mod_d(x_exp, d_);
        z_exp = mod_d(z_exp, d_);
        if (x_exp == 0 && z_exp == 0)
            sites_.erase(site);
        else
            sites_[site] = {x_exp, z_exp};
    }

    void set_phase(int ph) { phase_ = mod_d(ph, d_); }

  private:
    int d_;
    int phase_ = 0;
    std::map<int, std::pair<int, int>> sites_;  // site -> (x exponent, z exponent)
};

/// Canonical product a*b. The only phase source is commuting each Z^z of `a`
/// past each X^x of `b` on a shared site: Z^z X^x = w^{-zx} X^x Z^z.
inline GeneralizedPauli mul(const GeneralizedPauli& a, const GeneralizedPauli& b) {
    if (a.d() != b.d()) throw DimensionMismatch("pauli product: operands have different qudit dimension");
    const int d = a.d();
    GeneralizedPauli r = a;
    long long phase = a.phase() + b.phase();
    for (const auto& [site, xz] : b.sites()) {
        auto [xa, za] = r.exponents_at(site);
        phase -= static_cast<long long>(za) * xz.first;
        r.set_site(site, xa + xz.first, za + xz.second);
    }
    r.set_phase(mod_d(phase, d));
    return r;
}

/// Exponent s with a*b = w^s b*a; zero iff the operators commute.
/// This is the symplectic form sum_i (x_a z_b - z_a x_b).
inline int commutation_exponent(const GeneralizedPauli& a, const GeneralizedPauli& b) {
    if (a.d() != b.d()) throw DimensionMismatch("commutation exponent: different qudit dimension");
    long long s = 0;
    const auto& small = a.weight() <= b.weight() ? a : b;
    const auto& other = a.weight() <= b.weight() ? b : a;
    const bool swapped = !(a.weight() <= b.weight());
    for (const auto& [site, xz] : small.sites()) {
        auto [xo, zo] = other.exponents_at(site);
        s += static_cast<long long>(xz.first) * zo - static_cast<long long>(xz.second) * xo;
    }
    if (swapped) s = -s;
    return mod_d(s, a.d());
}

/// a^k in canonical form. Exponents are periodic with period d, and for odd
/// prime d the reordering phases close as well: a^d == identity exactly.
inline GeneralizedPauli pauli_power(const GeneralizedPauli& a, long long k) {
    const int d = a.d();
    const int kk = mod_d(k, d);
    GeneralizedPauli r(d);
    long long cross = 0;  // sum_i x_i z_i
    for (const auto& [site, xz] : a.sites()) {
        r.set_site(site, xz.first * kk, xz.second * kk);
        cross += static_cast<long long>(xz.first) * xz.second;
    }
    // (X^x Z^z)^k = w^{-k(k-1)/2 * xz} X^{kx} Z^{kz}, applied site by site.
    const long long tri = static_cast<long long>(kk) * (kk - 1) / 2;
    r.set_phase(mod_d(static_cast<long long>(kk) * a.phase() - tri * cross, d));
    return r;
}

/// Hermitian adjoint; satisfies mul(a, pauli_adjoint(a)) == identity.
inline GeneralizedPauli pauli_adjoint(const GeneralizedPauli& a) {
    const int d = a.d();
    GeneralizedPauli r(d);
    long long cross = 0;
    for (const auto& [site, xz] : a.sites()) {
        r.set_site(site, -xz.first, -xz.second);
        cross += static_cast<long long>(xz.first) * xz.second;
    }
    r.set_phase(mod_d(-static_cast<long long>(a.phase()) - cross, d));
    return r;
}

/// True iff a^d == identity with zero phase and a is not a pure phase.
inline bool has_full_order(const GeneralizedPauli& a) {
    return !a.is_phase_only() && pauli_power(a, a.d()).is_identity();
}

/// Charge projector onto the eigenvalue-w^lambda sector of an order-d Pauli:
///   P^lambda = (1/d) sum_k w^{lambda(d-k)} O^k.
struct ChargeProjectorSpec {
    GeneralizedPauli pauli;
    int lambda = 0;

    ChargeProjectorSpec(GeneralizedPauli p, int lam) : pauli(std::move(p)), lambda(lam) {
        if (!has_full_order(pauli)) throw std::invalid_argument("charge projector needs an order-d Pauli");
        if (lambda < 0 || lambda >= pauli.d()) throw std::invalid_argument("charge label out of range");
    }
};

/// Expansion coefficients (k, w^{lambda(d-k)}/d) used by both backends to
/// evaluate <P^lambda> as a weighted sum of <O^k>.
inline std::vector<std::pair<int, std::complex<double>>> projector_weights(const ChargeProjectorSpec& spec) {
    const int d = spec.pauli.d();
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<std::pair<int, std::complex<double>>> w;
    w.reserve(d);
    for (int k = 0; k < d; ++k) {
        const int e = mod_d(static_cast<long long>(spec.lambda) * (d - k), d);
        w.emplace_back(k, std::polar(1.0 / d, two_pi * e / d));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Textual round-trip format, e.g. `w^2 * X2.Z2 @q(3,4) * X1 @q(3,5)`.
// With cols > 0 sites print as @q(row,col); otherwise as flat @q(index).
// The identity prints as `1`, a pure phase as `w^k * 1`.
// ---------------------------------------------------------------------------

inline std::string pauli_to_string(const GeneralizedPauli& p, int cols = 0) {
    std::ostringstream os;
    bool first = true;
    if (p.phase() != 0) {
        os << "w^" << p.phase();
        first = false;
    }
    if (p.sites().empty()) {
        if (!first) os << " * ";
        os << "1";
        return os.str();
    }
    for (const auto& [site, xz] : p.sites()) {
        if (!first) os << " * ";
        first = false;
        if (xz.first != 0) os << "X" << xz.first;
        if (xz.first != 0 && xz.second != 0) os << ".";
        if (xz.second != 0) os << "Z" << xz.second;
        if (cols > 0)
            os << " @q(" << site / cols << "," << site % cols << ")";
        else
            os << " @q(" << site << ")";
    }
    return os.str();
}

namespace detail {
inline void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}
inline int parse_int(const std::string& s, size_t& i) {
    skip_ws(s, i);
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw std::invalid_argument("pauli parse: expected integer at offset " + std::to_string(start));
    return std::stoi(s.substr(start, i - start));
}
inline void expect(const std::string& s, size_t& i, char c) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != c)
        throw std::invalid_argument(std::string("pauli parse: expected '") + c + "' at offset " + std::to_string(i));
    ++i;
}
}  // namespace detail

inline GeneralizedPauli parse_pauli(const std::string& text, int d = 3, int cols = 0) {
    using namespace detail;
    GeneralizedPauli p(d);
    size_t i = 0;
    skip_ws(text, i);
    if (i < text.size() && text[i] == 'w') {
        ++i;
        expect(text, i, '^');
        p.set_phase(parse_int(text, i));
        skip_ws(text, i);
        if (i < text.size() && text[i] == '*') ++i;
    }
    bool saw_factor = false;
    while (true) {
        skip_ws(text, i);
        if (i >= text.size()) break;
        if (text[i] == '1') {
            ++i;
            saw_factor = true;
        } else {
            int xe = 0, ze = 0;
            bool any = false;
            if (i < text.size() && text[i] == 'X') {
                ++i;
                xe = parse_int(text, i);
                any = true;
                skip_ws(text, i);
                if (i < text.size() && text[i] == '.') ++i;
            }
            skip_ws(text, i);
            if (i < text.size() && text[i] == 'Z') {
                ++i;
                ze = parse_int(text, i);
                any = true;
            }
            if (!any) throw std::invalid_argument("pauli parse: expected X/Z factor at offset " + std::to_string(i));
            skip_ws(text, i);
            expect(text, i, '@');
            expect(text, i, 'q');
            expect(text, i, '(');
            int first = parse_int(text, i);
            int site = first;
            skip_ws(text, i);
            if (i < text.size() && text[i] == ',') {
                ++i;
                int col = parse_int(text, i);
                if (cols <= 0)
                    throw std::invalid_argument("pauli parse: @q(row,col) form needs the lattice column count");
                site = first * cols + col;
            }
            expect(text, i, ')');
            auto [ox, oz] = p.exponents_at(site);
            if (ox != 0 || oz != 0) throw std::invalid_argument("pauli parse: duplicate site");
            p.set_site(site, xe, ze);
            saw_factor = true;
        }
        skip_ws(text, i);
        if (i < text.size() && text[i] == '*') {
            ++i;
            continue;
        }
        break;
    }
    skip_ws(text, i);
    if (i != text.size()) throw std::invalid_argument("pauli parse: trailing junk at offset " + std::to_string(i));
    if (!saw_factor && p.phase() == 0)
        throw std::invalid_argument("pauli parse: empty input");
    return p;
}

}  // namespace paraplaq
