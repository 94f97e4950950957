r"""
DiZeT decoding
--------------
DiZeT tests each conjugate-reciprocal pair directly: bit ``k`` is 1 when
:math:`|Y(R e^{j\phi_k})| < R^K |Y(R^{-1} e^{j\phi_k})|`.  No channel
estimate is needed, since a flat gain scales both sides alike.
"""
import numpy as np

from sbmocz import bits_to_coeffs, dizet_decode, make_constellation, oversampled_fractional_cfo
from sbmocz.channel import apply_cfo, noise_variance_from_ebn0
from sbmocz.dizet import dizet_margins

rng = np.random.default_rng(7)
c = make_constellation(64, 0.0)
bits = rng.integers(0, 2, 64)
x = bits_to_coeffs(bits, c)

#%%
# Any complex gain, same decisions.
h = 0.03 * np.exp(2.1j)
d = dizet_decode(h * x, c)
print("errors with h =", h, ":", int(np.sum(d.bits != bits)))

#%%
# Margins shrink as noise grows; the sign is the decision.
for ebn0 in (20, 10, 5):
    s2 = noise_variance_from_ebn0(ebn0, 64, 65)
    y = x + np.sqrt(s2 / 2) * (rng.standard_normal(65) + 1j * rng.standard_normal(65))
    m = dizet_margins(y, c)
    print(f"{ebn0:2d} dB: min |margin| {np.abs(m).min():.3f}  bit errors {int(np.sum((m > 0) != bits))}")

#%%
# On a Huffman grid a rotation by a whole zero step just shifts the bits.
y = apply_cfo(x, 3 * c.spacing)
print("shift by 3 steps matches roll:", np.array_equal(dizet_decode(y, c).bits, np.roll(bits, -3)))

#%%
# The fractional part of a CFO is found by testing Q de-rotations and
# keeping the one with the most total margin.
psi0 = 0.37 * c.spacing
est = oversampled_fractional_cfo(apply_cfo(x, psi0 + 5 * c.spacing), c, Q=200)
print(f"fractional CFO {psi0:.5f}, estimate {est:.5f}, grid step {c.spacing / 200:.5f}")
