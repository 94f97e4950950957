r"""
Zero constellations
-------------------
A BMOCZ message lives in the zeros of a polynomial.  Bit ``k`` picks one of
two zeros sharing the phase :math:`\phi_k`: the outer one at radius ``r`` or
its conjugate reciprocal at ``1/r``.  This script builds the Huffman layout
and the smooshed layout used for full-range CFO estimation.
"""
import numpy as np

from sbmocz import huffman_radius, make_constellation, map_bits_to_zeros, sbmocz_radius, zero_separation_check

#%%
# The radius trades radial against angular separation.  With ``lam = 0.5``
# and ``K = 128`` both layouts land very close to 1.0122.
print("Huffman radius, K=128:", round(huffman_radius(128, 0.5), 6))
print("SBMOCZ radius, K=128, zeta=0.0117:", round(sbmocz_radius(128, 0.5, 0.0117), 6))
print("SBMOCZ radius, K=127, zeta=0.0130:", round(sbmocz_radius(127, 0.5, 0.0130), 6))

#%%
# Smooshing removes ``zeta`` radians from the spacing budget and parks the
# leftover gap on the positive real axis.  With ``K = 8`` and a big ``zeta``
# the gap is easy to see in the phases.
for zeta in (0.0, 1.0):
    c = make_constellation(8, zeta)
    ph = np.degrees(np.mod(c.phases, 2 * np.pi))
    print(f"zeta={zeta}: phases (deg) {np.round(ph, 1)}")
    print("   gap around 0 deg:", round(360 - ph[-1] + ph[0], 1), " spacing:", round(np.degrees(c.spacing), 1))

#%%
# The pair separation ``d_cp`` is always ``lam`` times the inner chord ``d_az``.
c = make_constellation(128, 0.0117)
d_cp, d_az = zero_separation_check(c)
print("d_cp / d_az =", d_cp / d_az)

#%%
# Mapping a message to zeros is a lookup of radius per bit.
bits = np.array([1, 0, 0, 1, 1, 0, 1, 0])
z = map_bits_to_zeros(bits, make_constellation(8, 0.3))
print(np.round(np.abs(z), 4))

#%%
# Optional picture of both circles when matplotlib is around.
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    c = make_constellation(16, 0.8)
    fig, ax = plt.subplots(figsize=(4, 4))
    ax.plot(c.outer_zeros().real, c.outer_zeros().imag, "o", label="bit 1")
    ax.plot(c.inner_zeros().real, c.inner_zeros().imag, "x", label="bit 0")
    t = np.linspace(0, 2 * np.pi, 400)
    ax.plot(np.cos(t), np.sin(t), "k:", lw=0.8)
    ax.set_aspect("equal")
    ax.legend()
    fig.savefig("constellation.png", dpi=120)
