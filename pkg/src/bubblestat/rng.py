"""Seeded, splittable normal draws.

Every stream is a Philox counter-based generator keyed by ``(seed, stream)``,
so stream ``i`` of a run is the same whether streams are produced in order,
in parallel or alone. Normals come from the inverse CDF applied to open-unit
uniforms built from 53 random bits.
"""

import numpy as np

from .normal import norm_ppf

__all__ = ["stream", "uniforms", "normals"]

_MASK64 = (1 << 64) - 1


def stream(seed, index=0) -> np.random.Generator:
    """Generator for sub-stream ``index`` of ``seed`` (both 64-bit)."""
    key = ((int(seed) & _MASK64) << 64) | (int(index) & _MASK64)
    return np.random.Generator(np.random.Philox(key=key))


def uniforms(gen, size):
    """Uniforms on the open interval (0, 1): ``(k + 0.5) / 2**53``."""
    k = gen.integers(0, 1 << 53, size=size, dtype=np.int64)
    return (k + 0.5) * 2.0**-53


def normals(gen, size, scale=1.0):
    return scale * norm_ppf(uniforms(gen, size))
