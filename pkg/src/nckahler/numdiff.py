"""Central finite differences in Wirtinger form.

For ``F(z)`` of complex arguments, ``dF/dz = (dF/dx - i dF/dy)/2`` and
``dF/dzbar = (dF/dx + i dF/dy)/2``.  Output arrays carry the derivative index
as the last axis.
"""

from __future__ import annotations

import numpy as np

DEFAULT_STEP = 1e-5


def default_step(z: np.ndarray) -> float:
    return DEFAULT_STEP * max(1.0, float(np.linalg.norm(z)))


def wirtinger(fun, z: np.ndarray, step: float | None = None):
    """Return ``(dF/dz_k, dF/dzbar_k)`` stacked on the last axis."""
    z = np.asarray(z, dtype=complex)
    h = default_step(z) if step is None else step
    f0 = np.asarray(fun(z))
    holo = np.zeros(f0.shape + z.shape, dtype=complex)
    anti = np.zeros_like(holo)
    for k in range(z.size):
        e = np.zeros_like(z)
        e[k] = h
        dx = (np.asarray(fun(z + e)) - np.asarray(fun(z - e))) / (2 * h)
        dy = (np.asarray(fun(z + 1j * e)) - np.asarray(fun(z - 1j * e))) / (2 * h)
        holo[..., k] = (dx - 1j * dy) / 2
        anti[..., k] = (dx + 1j * dy) / 2
    return holo, anti


def directional(fun, z: np.ndarray, dz: np.ndarray, step: float | None = None):
    """Central difference of ``fun`` along the real direction ``dz``."""
    z = np.asarray(z, dtype=complex)
    h = default_step(z) if step is None else step
    return (np.asarray(fun(z + h * dz)) - np.asarray(fun(z - h * dz))) / (2 * h)
