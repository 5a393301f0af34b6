"""Shared helpers: independent pure-python oracles the fast paths are tested against."""

import itertools

from grasscodes.codes import LinearCode
from grasscodes.linalg import MatrixGF, Subspace


def iter_rref_bases(ctx, n, k):
    """Every canonical RREF basis of a k-subspace of F_q^n, by pivot pattern.

    Independent oracle used to pin enumeration counts and memberships;
    kept deliberately simple (nested loops, no numpy).
    """
    q = ctx.q
    if k == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [
            (i, j)
            for i in range(k)
            for j in range(n)
            if j > pivots[i] and j not in pivot_set
        ]
        for assignment in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free, assignment):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


def all_subspaces(ctx, n, k):
    return [
        Subspace(ctx, n, MatrixGF(ctx, rows, ncols=n))
        for rows in iter_rref_bases(ctx, n, k)
    ]


def all_codes(ctx, n, k):
    return [LinearCode(s) for s in all_subspaces(ctx, n, k)]
