"""Exhaustive pair counting in the E8 root lattice.

The degree-2 theta series of E8 equals the weight-4 Siegel Eisenstein
series normalised to constant term 1, so the coefficient at (m, r, n) is
the number of lattice pairs (x, y) with |x|^2 = 2m, |y|^2 = 2n and
<x, y> = r.  Counting those pairs by brute force gives an oracle for the
weight-4 generator that is completely independent of the lift machinery.

Coordinates are doubled so everything stays integral: in the standard
model the lattice consists of the integer vectors and the half-integer
vectors of length 8 whose coordinate sum is even, i.e. doubled vectors
with all-even or all-odd entries and coordinate sum divisible by 4.
"""

from __future__ import annotations

from math import isqrt

import numpy as np


def _doubled_vectors_by_norm(max_m: int) -> dict[int, np.ndarray]:
    """Doubled-coordinate lattice vectors grouped by m = |x|^2 / 2 <= max_m."""
    limit = 8 * max_m  # |y|^2 = 4 |x|^2 = 8m
    bound = isqrt(limit)
    parts = []
    even = np.arange(-bound if bound % 2 == 0 else -bound + 1, bound + 1, 2)
    odd = np.arange(-bound if bound % 2 == 1 else -bound + 1, bound + 1, 2)
    for values in (even, odd):
        if len(values) == 0:
            continue
        grid = np.meshgrid(*([values] * 8), indexing="ij")
        vecs = np.stack(grid, axis=-1).reshape(-1, 8).astype(np.int64)
        norms = (vecs * vecs).sum(axis=1)
        keep = (norms <= limit) & (vecs.sum(axis=1) % 4 == 0)
        parts.append(vecs[keep])
    vecs = np.concatenate(parts)
    norms = (vecs * vecs).sum(axis=1)
    out = {}
    for m in range(max_m + 1):
        out[m] = vecs[norms == 8 * m]
    return out


def e8_pair_counts(max_m: int, max_n: int) -> dict[tuple[int, int, int], int]:
    """Counts of pairs (x, y) with |x|^2 = 2m, |y|^2 = 2n, <x, y> = r.

    Returns a dict keyed by (m, r, n) covering 0 <= m <= max_m,
    0 <= n <= max_n; absent keys are zero counts.  All arithmetic is
    integer, so the counts are exact.
    """
    by_norm = _doubled_vectors_by_norm(max(max_m, max_n))
    counts: dict[tuple[int, int, int], int] = {}
    for m in range(max_m + 1):
        vm = by_norm[m]
        for n in range(max_n + 1):
            vn = by_norm[n]
            if len(vm) == 0 or len(vn) == 0:
                continue
            # inner products of doubled vectors are 4 <x, y>
            table = vm @ vn.T
            rs, cs = np.unique(table, return_counts=True)
            for r4, count in zip(rs.tolist(), cs.tolist()):
                counts[(m, r4 // 4, n)] = count
    return counts
