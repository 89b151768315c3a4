# Copyright 2026 The henntomo Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reference sampler for the frozen values in test_spin_models.cpp and test_dynamics.cpp.

Pure-Python mt19937_64 plus the libstdc++ mapping of 64-bit draws to [0, 1)
(x / 2^64) and of bernoulli(0.5) (u < 0.5).
"""

import cmath
import math

MASK = (1 << 64) - 1


class MT19937_64:
    def __init__(self, seed):
        self.mt = [0] * 312
        self.mt[0] = seed & MASK
        for i in range(1, 312):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & MASK
        self.idx = 312

    def _twist(self):
        upper, lower = 0xFFFFFFFF80000000, 0x7FFFFFFF
        for i in range(312):
            x = (self.mt[i] & upper) | (self.mt[(i + 1) % 312] & lower)
            xa = x >> 1
            if x & 1:
                xa ^= 0xB5026F5AA96619E9
            self.mt[i] = self.mt[(i + 156) % 312] ^ xa
        self.idx = 0

    def next(self):
        if self.idx >= 312:
            self._twist()
        y = self.mt[self.idx]
        self.idx += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & MASK

    def uniform(self):
        u = self.next() / 2.0**64
        return u if u < 1.0 else math.nextafter(1.0, 0.0)


def long_range(n, seed):
    rng = MT19937_64(seed)
    omega, phi = rng.uniform(), rng.uniform()
    c1, c2 = {}, {}
    for i in range(1, 4**n):
        if not rng.uniform() < 0.5:
            continue
        c1[i] = rng.uniform()
        c2[i] = rng.uniform()
    return omega, phi, c1, c2


def initial_states(n, count, seed):
    rng = MT19937_64(seed)
    out = []
    for _ in range(count):
        amps = []
        for _ in range(2**n):
            r, theta = rng.uniform(), rng.uniform()
            amps.append(math.sqrt(r) * cmath.exp(2j * math.pi * theta))
        norm = math.sqrt(sum(abs(a) ** 2 for a in amps))
        out.append([a / norm for a in amps])
    return out


if __name__ == "__main__":
    # 10k-th output of mt19937_64 seeded with 5489 is 9981545732273789042 (C++11 standard check).
    g = MT19937_64(5489)
    for _ in range(9999):
        g.next()
    assert g.next() == 9981545732273789042
    omega, phi, c1, c2 = long_range(3, 42)
    print("long_range n=3 seed=42")
    print("omega %.17g phi %.17g" % (omega, phi))
    print("links", sorted(c1))
    first = sorted(c1)[:3]
    print("first c1", [(i, "%.17g" % c1[i]) for i in first])
    print("first c2", [(i, "%.17g" % c2[i]) for i in first])
    psi = initial_states(1, 1, 7)[0]
    print("initial state n=1 seed=7", ["%.17g%+.17gj" % (a.real, a.imag) for a in psi])
