"""Gauss-Legendre rules on [0, 1]."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import InvalidInputError

TABLE_SIZES = (2, 4, 8, 16, 32)


def _leggauss_unit(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    nodes = 0.5 * (x + 1.0)
    weights = 0.5 * w
    # average each node with its mirror image so the rule is symmetric about 1/2 to round-off
    nodes = 0.5 * (nodes + (1.0 - nodes[::-1]))
    weights = 0.5 * (weights + weights[::-1])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


_TABLES = {n: _leggauss_unit(n) for n in TABLE_SIZES}


@lru_cache(maxsize=64)
def _computed(n: int):
    return _leggauss_unit(n)


def gauss_legendre_unit(n: int):
    """Nodes and weights of the n-point rule on [0, 1] (symmetric about 1/2)."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise InvalidInputError(f"number of quadrature nodes must be a positive integer, got {n!r}")
    n = int(n)
    return _TABLES[n] if n in _TABLES else _computed(n)
