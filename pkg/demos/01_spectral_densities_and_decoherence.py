"""Spectral densities and decoherence-factor curves.

A qubit dephasing in a bosonic bath loses coherence as e^{-Gamma(T,t)}.
This script shows the three Ohmic regimes of the bath spectral density
J(w) = w^s e^{-w} and the corresponding growth of Gamma with the
interaction time: unbounded for sub-Ohmic and Ohmic baths (full
dephasing), saturating for the super-Ohmic bath (residual coherence
survives forever).
"""

import os

import numpy as np

from qubit_thermometry import (
    OhmicSpectrum,
    classify,
    decoherence_factor,
    saturation_value,
    spectral_density,
)

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

SPECS = [OhmicSpectrum(0.5), OhmicSpectrum(1.0), OhmicSpectrum(3.0)]
TEMPS = [0.1, 0.5, 2.0]

# --- spectral densities: the peak sits at w = s ---------------------------
w = np.linspace(0.0, 10.0, 400)
print("spectral density J(w) = w^s e^-w")
for spec in SPECS:
    peak = w[np.argmax(spectral_density(spec, w))]
    print(f"  s={spec.s}: {classify(spec).value:10s} peak at w = {peak:.2f}")

# --- decoherence factor vs time -------------------------------------------
times = np.linspace(0.0, 40.0, 81)
curves = {}
for spec in SPECS:
    for T in TEMPS:
        curves[(spec.s, T)] = [decoherence_factor(spec, T, float(t)) for t in times]

print("\nGamma(T, t=40) by regime (grows without bound for s <= 1):")
for spec in SPECS:
    row = "  ".join(f"T={T}: {curves[(spec.s, T)][-1]:8.3f}" for T in TEMPS)
    print(f"  s={spec.s}: {row}")

print("\nsuper-Ohmic saturation values -1 + 2 T^2 psi1(T):")
for T in TEMPS:
    sat = saturation_value(OhmicSpectrum(3.0), T)
    print(f"  T={T}: Gamma(inf) = {sat:.6f}   (t=40 already at "
          f"{curves[(3.0, T)][-1] / sat * 100:.2f}% of it)")

# --- plots (optional) ------------------------------------------------------
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not available; skipping figures")
else:
    fig, axes = plt.subplots(1, 4, figsize=(16, 3.6))
    for spec in SPECS:
        axes[0].plot(w, spectral_density(spec, w), label=f"s={spec.s}")
    axes[0].set_xlabel("w")
    axes[0].set_ylabel("J(w)")
    axes[0].set_title("Ohmic-family spectral densities")
    axes[0].legend()
    for ax, spec in zip(axes[1:], SPECS):
        for T in TEMPS:
            ax.plot(times, curves[(spec.s, T)], label=f"T={T}")
        if spec.s == 3.0:
            for T in TEMPS:
                ax.axhline(saturation_value(spec, T), ls=":", lw=0.8, color="gray")
        ax.set_xlabel("t")
        ax.set_ylabel("Gamma(T,t)")
        ax.set_title(f"{classify(spec).value} (s={spec.s})")
        ax.legend()
    fig.tight_layout()
    path = os.path.join(OUT, "decoherence_curves.png")
    fig.savefig(path, dpi=120)
    print(f"\nwrote {path}")
