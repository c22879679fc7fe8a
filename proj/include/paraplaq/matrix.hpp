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
#include <complex>
#include <stdexcept>
#include <vector>

namespace paraplaq {

using cplx = std::complex<double>;

/// Minimal dense square complex matrix; row-major. Only the handful of
/// operations the gate library and the parafermion algebra need.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return n_; }
    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * n_ + c]; }
    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    Matrix dagger() const {
        Matrix m(n_);
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("matrix product: size mismatch");
        Matrix m(a.n_);
        for (int r = 0; r < a.n_; ++r)
            for (int k = 0; k < a.n_; ++k) {
                const cplx v = a(r, k);
                if (v == cplx{}) continue;
                for (int c = 0; c < a.n_; ++c) m(r, c) += v * b(k, c);
            }
        return m;
    }

    friend Matrix operator*(cplx s, const Matrix& a) {
        Matrix m(a.n_);
        for (size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = s * a.a_[i];
        return m;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("matrix sum: size mismatch");
        Matrix m(a.n_);
        for (size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = a.a_[i] + b.a_[i];
        return m;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("matrix difference: size mismatch");
        Matrix m(a.n_);
        for (size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = a.a_[i] - b.a_[i];
        return m;
    }

    cplx trace() const {
        cplx t;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const cplx& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    Matrix pow(int k) const {
        Matrix m = identity(n_);
        for (int i = 0; i < k; ++i) m = m * (*this);
        return m;
    }

    bool is_unitary(double tol = 1e-12) const {
        return (dagger() * (*this) - identity(n_)).frobenius_norm() <= tol * n_;
    }

    /// Distance to a target after optimal global-phase alignment.
    double phase_aligned_distance(const Matrix& target) const {
        const cplx t = (dagger() * target).trace();
        const double overlap = std::abs(t);
        double d2 = frobenius_norm() * frobenius_norm() + target.frobenius_norm() * target.frobenius_norm() -
                    2.0 * overlap;
        return std::sqrt(std::max(0.0, d2));
    }

  private:
    int n_ = 0;
    std::vector<cplx> a_;
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.dim() * b.dim());
    for (int ra = 0; ra < a.dim(); ++ra)
        for (int ca = 0; ca < a.dim(); ++ca) {
            const cplx v = a(ra, ca);
            if (v == cplx{}) continue;
            for (int rb = 0; rb < b.dim(); ++rb)
                for (int cb = 0; cb < b.dim(); ++cb)
                    m(ra * b.dim() + rb, ca * b.dim() + cb) = v * b(rb, cb);
        }
    return m;
}

inline cplx root_of_unity(int numerator, int d) {
    const double two_pi = 6.283185307179586476925286766559;
    long long n = numerator % d;
    if (n < 0) n += d;
    return std::polar(1.0, two_pi * static_cast<double>(n) / d);
}

}  // namespace paraplaq
