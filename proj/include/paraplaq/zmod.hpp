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

#include <stdexcept>
#include <string>

namespace paraplaq {

inline bool is_prime(int v) {
    if (v < 2) return false;
    for (int f = 2; f * f <= v; ++f)
        if (v % f == 0) return false;
    return true;
}

inline bool is_odd_prime(int v) { return v >= 3 && (v % 2 == 1) && is_prime(v); }

/// Canonical representative in [0, d).
inline int mod_d(long long v, int d) {
    long long r = v % d;
    return static_cast<int>(r < 0 ? r + d : r);
}

/// Multiplicative inverse mod prime d (Fermat).
inline int inv_mod(int a, int d) {
    a = mod_d(a, d);
    if (a == 0) throw std::domain_error("inv_mod: zero has no inverse mod " + std::to_string(d));
    int result = 1, base = a, e = d - 2;
    while (e > 0) {
        if (e & 1) result = mod_d(static_cast<long long>(result) * base, d);
        base = mod_d(static_cast<long long>(base) * base, d);
        e >>= 1;
    }
    return result;
}

}  // namespace paraplaq
