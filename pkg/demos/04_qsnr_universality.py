"""Quantum signal-to-noise ratio and its hot-bath universality.

Q = T^2 H(T, t_opt) measures how estimable the temperature is in
relative terms.  It vanishes in the cold regime, grows with T in an
s-dependent way, and saturates for hot baths towards the universal
constant max_x x^2/(4(e^x - 1)) ~ 0.161903, independent of the
spectral-density exponent.  The approach to the constant is slow
(like 1/T): at T = 10 the gap is still 0.4-6e-3 depending on s.
"""

import math
import os

import numpy as np

from qubit_thermometry import OhmicSpectrum, OptimizerConfig, optimal_time, qsnr

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

# the universal constant from its one-line stationarity condition
lo, hi = 1.0, 2.0
for _ in range(100):
    x = 0.5 * (lo + hi)
    if 2.0 * math.expm1(x) - x * math.exp(x) > 0.0:
        lo = x
    else:
        hi = x
x_star = 0.5 * (lo + hi)
q_star = x_star ** 2 / (4.0 * math.expm1(x_star))
print(f"universal constant: x* = {x_star:.6f}, Q* = {q_star:.6f}")

ocfg = OptimizerConfig(bracket_lo=1e-2, bracket_hi=1e3, grid_points=100)
temps = np.geomspace(0.01, 30.0, 14)
curves = {}
for s in (0.5, 1.0, 3.0):
    spec = OhmicSpectrum(s)
    qs = []
    for T in temps:
        res = optimal_time(spec, float(T), ocfg)
        qs.append(qsnr(float(T), res.f_opt))
    curves[s] = np.array(qs)
    print(f"  s={s}: Q(T=0.01) = {qs[0]:.2e}   Q(T=30) = {qs[-1]:.6f} "
          f"(gap to Q*: {q_star - qs[-1]:.2e})")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not available; skipping figures")
else:
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for s, qs in curves.items():
        ax.loglog(temps, qs, "o-", label=f"s={s}")
    ax.axhline(q_star, color="k", ls=":", label="universal constant")
    ax.set_xlabel("T")
    ax.set_ylabel("Q at the optimal time")
    ax.set_title("QSNR: cold suppression, hot universality")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(OUT, "qsnr_universality.png")
    fig.savefig(path, dpi=120)
    print(f"wrote {path}")
