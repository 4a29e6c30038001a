"""Entanglement vs detuning: the chevron.

Away from the exact two-photon resonance the pair exchange still runs, but
faster and with reduced amplitude: a two-level system detuned by the
diagonal mismatch delta oscillates at sqrt(g_eff^2 + (delta/2)^2) with
transfer probability g_eff^2 / (g_eff^2 + (delta/2)^2).  Scanning the
mirror frequency around resonance and plotting the two-cavity entanglement
over time yields the characteristic chevron stripe pattern.

Run:  python demos/04_detuning_chevron.py
"""

import numpy as np

from trimirror import (
    ModeDims,
    SystemParams,
    TimeGrid,
    chevron_scan,
    detuned_rabi_profile,
    population_amplitude_scan,
)

g = 0.05
g_eff = 2 * np.sqrt(2) * g**2  # pair-exchange coupling of the two-photon process
params = SystemParams(omega_a=1 + g**2, omega_c=1 + g**2, g=g,
                      gamma_a=5e-4, gamma_b=5e-4, gamma_c=5e-4)
dims = ModeDims((5, 4, 5))

# --- closed-system amplitude profile ------------------------------------------
deltas = np.linspace(-4, 4, 9) * g_eff
amplitudes = population_amplitude_scan(params, deltas, dims, g_eff)
print("detuning/g_eff   fitted amplitude   two-level prediction")
for d, a in zip(deltas, amplitudes):
    _, pred = detuned_rabi_profile(d, g_eff)
    print(f"   {d/g_eff:+5.1f}          {a:.3f}              {pred:.3f}")

# --- dissipative entanglement surface -------------------------------------------
scan = chevron_scan(
    params,
    np.linspace(-4, 4, 5) * g_eff,
    TimeGrid(t_end=460.0, n_points=93),
    dims,
    split_dt=0.25,
)
peaks = scan.surface.max(axis=0)
print("\npeak E_N per detuning column (bits):")
print("  " + "  ".join(f"{d/g_eff:+.0f}g_eff: {p:.3f}" for d, p in zip(scan.delta_values, peaks)))
print("the resonant column wins; detuned columns oscillate faster and lower")
