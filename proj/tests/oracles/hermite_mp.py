#!/usr/bin/env python3
"""High-precision oracle for constants frozen in the unit tests.

Evaluates the Hermite DSC kernel by direct term summation in mpmath (50 digits),
independent of the recursions used in the library, and prints the values that
tests/unit/oracle_constants.hpp freezes.

    python3 tests/oracles/hermite_mp.py
"""

import mpmath as mp

mp.mp.dps = 50

N_ORDER = 88
W = 32
R = mp.mpf("3.05")


def hermite_value(x, r=R, n=N_ORDER, dx=mp.mpf(1)):
    sigma = r * dx
    y = x / (mp.sqrt(2) * sigma)
    total = mp.mpf(0)
    for m in range(n // 2 + 1):
        total += (mp.mpf(-1) / 4) ** m / (mp.sqrt(2 * mp.pi) * mp.factorial(m)) * mp.hermite(2 * m, y)
    return mp.exp(-x * x / (2 * sigma * sigma)) * total / sigma


def main():
    v0 = hermite_value(mp.mpf(0))
    print(f"hermite_value_at_zero      {mp.nstr(v0, 20)}")

    unit = sum(hermite_value(mp.mpf(j)) for j in range(-W, W + 1))
    print(f"hermite_discrete_sum       {mp.nstr(unit, 20)}")

    off = max(abs(hermite_value(mp.mpf(j))) for j in range(1, W + 1))
    print(f"hermite_max_offcentre      {mp.nstr(off, 20)}")

    n = 64
    tv = sum(abs(mp.sin(2 * mp.pi * (i + 1) / n) - mp.sin(2 * mp.pi * i / n)) for i in range(n))
    print(f"tv_sine_64                 {mp.nstr(tv, 20)}")

    # Conjugate low-pass response at the Nyquist frequency: predict with r = 3.05,
    # restore with r = 2.5, both unit-sum half-grid stencils.
    def halfgrid(r):
        w = [hermite_value(mp.mpf(j) + mp.mpf(1) / 2, r=r) for j in range(-W, W)]
        s = sum(w)
        return [v / s for v in w]

    def half_response(w, omega):
        return sum(wj * mp.exp(1j * omega * (j - W + mp.mpf(1) / 2)) for j, wj in enumerate(w))

    p = halfgrid(R)
    q = halfgrid(mp.mpf("2.5"))
    # The composite symbol is P(w) Q(w) for even kernels. At w = pi the half-grid symbol
    # cancels pairwise, so the Nyquist mode is removed exactly; 0.9 pi is the informative point.
    for frac in ("1", "0.9"):
        w = mp.pi * mp.mpf(frac)
        val = abs(half_response(p, w) * half_response(q, w))
        print(f"lowpass_{frac}pi_r2p5{' ' * (14 - len(frac))}{mp.nstr(val, 20)}")


if __name__ == "__main__":
    main()
