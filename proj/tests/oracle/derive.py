"""Independent reference values for the test suite.

Uses mpmath at 50 digits and scipy's Mathieu characteristic values. Nothing here shares code
with the C++ library; polynomials are entered from their factored forms, wavefunction
normalisations and expectations by direct quadrature of the closed-form states.
Run:  python3 tests/oracle/derive.py
"""

import mpmath as mp
from scipy.special import mathieu_a, mathieu_b

mp.mp.dps = 50


def show(label, values):
    vals = values if isinstance(values, (list, tuple)) else [values]
    print(f"{label}: " + ", ".join(mp.nstr(v, 17) for v in vals))


def roots(coeffs_descending):
    return sorted(mp.re(r) for r in mp.polyroots(coeffs_descending, maxsteps=200, extraprec=200))


zeta, beta = mp.mpf("0.5"), mp.mpf("0.3")
gamma = (1 + beta) * zeta
shift = beta * zeta**2

# cos, n_hat = 2
lam = [2 - 2 * mp.sqrt(1 + gamma**2), 2 + 2 * mp.sqrt(1 + gamma**2)]
show("cos2 lambdas", lam)
show("cos2 energies", [x - shift for x in lam])


def P3(z, b, N):
    return [1, -20, z**2 * (2 * b**2 + 7 * b - 3 * N**2 - 3 * (b - 1) * N + 2) + 64, 32 * z**2 * (N - 1) * (b + N)]


def Q3(z, b, N):
    return [1, -20, z**2 * (b - N + 2) * (2 * b + N + 1) + 64]


def Q4(z, b, N):
    return [1, -56, 2 * z**2 * (4 * b**2 + 9 * b - N**2 - b * N + N + 4) + 784,
            8 * z**2 * (5 * N**2 + 5 * (b - 1) * N - 12 - b * (12 * b + 29)) - 2304]


show("cos3 lambdas", roots(P3(zeta, beta, 3 + 2 * beta)))
show("sin3 lambdas", roots(Q3(zeta, beta, 3 + 2 * beta)))
show("sin4 lambdas", roots(Q4(zeta, beta, 4 + 3 * beta)))

# c_n at (0.5, 0.3, 2.3)
N = mp.mpf("2.3")
a = (1 + N + 2 * beta) / (1 + beta)
for n in (1, 2, 3):
    show(f"c_{n}", 1 / (zeta**n * (N + beta) * (1 + beta) ** (n - 1) * mp.rf(a, n - 1)))

# modified Bessel I_n
for z in ("0.3", "5", "25", "60"):
    show(f"I_n({z}) n=0..5", [mp.besseli(n, mp.mpf(z)) for n in range(6)])

# Mathieu limit 4J^2 + 2 g cos(theta): theta = 2x gives -y'' + 2g cos(2x) y = a y, q = -g;
# even-index characteristic values are even in q
g = 1.0
print("mathieu g=1 lowest four:", ", ".join(repr(v) for v in sorted(
    [mathieu_a(0, g), mathieu_b(2, g), mathieu_a(2, g), mathieu_b(4, g), mathieu_a(4, g)])[:4]))

# three-level states by direct quadrature of the closed forms, gamma = 0.65, lambda = 0.3


def state(kind, theta, lam_t):
    x = theta + lam_t
    env = mp.exp(-gamma * mp.cos(x) / 4)
    r = mp.sqrt(1 + gamma**2)
    if kind == "+":
        return env * (gamma + (1 + r) * mp.cos(x))
    if kind == "-":
        return env * (gamma + (1 - r) * mp.cos(x))
    return env * mp.sin(x)


lam_t = mp.mpf("0.3")
for kind in ("+", "-", "0"):
    norm = mp.quad(lambda th: state(kind, th, lam_t) ** 2, [0, mp.pi, 2 * mp.pi])
    eu = mp.quad(lambda th: state(kind, th, lam_t) ** 2 * mp.sin(th), [0, mp.pi, 2 * mp.pi]) / norm
    ev = mp.quad(lambda th: state(kind, th, lam_t) ** 2 * mp.cos(th), [0, mp.pi, 2 * mp.pi]) / norm
    show(f"state {kind} <u>, <v>", [eu, ev])
    # unnormalised norm in the closed-form convention: (gamma / 4 pi) * integral = N_kind
    show(f"state {kind} N", gamma / (4 * mp.pi) * norm)
