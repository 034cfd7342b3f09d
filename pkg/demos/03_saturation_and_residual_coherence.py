"""Information vs surviving coherence at the optimal time.

Reaching a high QFI requires interacting long enough to imprint the
temperature, which inevitably costs coherence.  This script tracks the
QFI and the residual coherence rc = e^{-Gamma} (optimal preparation)
along the time axis, and shows that optimal estimation happens neither
at full coherence nor at full dephasing.
"""

import math
import os

import numpy as np

from qubit_thermometry import (
    OhmicSpectrum,
    ProbePreparation,
    decoherence_factor,
    decoherence_factor_dT,
    evolved_state,
    optimal_time,
    qfi_dephasing,
    residual_coherence,
)

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

PREP = ProbePreparation(math.pi / 2.0)  # optimal preparation: equator state

curves = {}
for s in (0.5, 1.0, 3.0):
    spec = OhmicSpectrum(s)
    T = 0.5
    times = np.geomspace(0.05, 60.0, 60)
    H = []
    rc = []
    for t in times:
        gamma = decoherence_factor(spec, T, float(t))
        H.append(qfi_dephasing(gamma, decoherence_factor_dT(spec, T, float(t))))
        rc.append(residual_coherence(evolved_state(PREP, gamma)))
    curves[s] = (times, np.array(H), np.array(rc))

    res = optimal_time(spec, T)
    g_opt = decoherence_factor(spec, T, res.x_opt)
    rc_opt = residual_coherence(evolved_state(PREP, g_opt))
    print(f"s={s}: t_opt={res.x_opt:8.3f} ({res.kind.value}), "
          f"H_opt={res.f_opt:.4f}, residual coherence there = {rc_opt:.4f}")

print("\nat the optimum the probe has lost most, but never all, of its "
      "coherence;\nfull dephasing (rc -> 0) would carry no information.")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not available; skipping figures")
else:
    fig, axes = plt.subplots(1, 3, figsize=(13, 3.6), sharey=False)
    for ax, (s, (times, H, rc)) in zip(axes, curves.items()):
        ax.semilogx(times, H / H.max(), "--", label="H / max H")
        ax.semilogx(times, rc, "-", label="residual coherence")
        ax.set_xlabel("t")
        ax.set_title(f"s={s}, T=0.5")
        ax.legend()
    fig.tight_layout()
    path = os.path.join(OUT, "information_vs_coherence.png")
    fig.savefig(path, dpi=120)
    print(f"wrote {path}")
