"""Compensated accumulation used by the kernel sums and the force oracle."""

import numpy as np


def compensated_sum(terms, axis=-1):
    """Neumaier-compensated sum of ``terms`` along ``axis``.

    Works elementwise over all remaining axes, so a grid of kernel sums is
    reduced in one pass. Returns a Python float for a 1-D input.
    """
    terms = np.moveaxis(np.asarray(terms, dtype=float), axis, -1)
    total = np.zeros(terms.shape[:-1])
    comp = np.zeros(terms.shape[:-1])
    for k in range(terms.shape[-1]):
        x = terms[..., k]
        t = total + x
        big = np.abs(total) >= np.abs(x)
        comp += np.where(big, (total - t) + x, (x - t) + total)
        total = t
    out = total + comp
    if out.ndim == 0:
        return float(out)
    return out
