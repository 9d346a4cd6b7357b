"""Shared fixtures: session-scoped representation cache.

Constructing a polynomial model is the expensive step (closure under the
lowering operators plus full verification), so every test that needs a model
goes through one session-wide cache keyed by (n, rows, eps, side).  Det
twists of already-built models are produced by sharing the generator caches
instead of re-running the closure.
"""

import pytest

from orthobranch.weights import rank_context
from orthobranch.matrixrep import MatrixRep, construct_irrep, det_twisted


class RepCache:
    def __init__(self):
        self._store = {}

    def get(self, n: int, mu, eps=None, which: str = "big",
            dim_cap: int = 500) -> MatrixRep:
        mu = tuple(int(c) for c in mu)
        key = (n, mu, eps, which)
        hit = self._store.get(key)
        if hit is not None:
            return hit
        ctx = rank_context(n)
        size = (n + 1) if which == "big" else n
        # for a det twist of an already-built sibling, share the model
        if eps == -1:
            base_eps = 1 if (size % 2 or mu[-1] == 0) else None
            base = self._store.get((n, mu, base_eps, which))
            if base is None and size % 2 == 0 and mu[-1] >= 1:
                base = self._store.get((n, mu, None, which))
            if base is not None:
                rep = det_twisted(base)
                self._store[key] = rep
                return rep
        rep = construct_irrep(ctx, mu, eps=eps, which=which, dim_cap=dim_cap)
        self._store[key] = rep
        return rep


@pytest.fixture(scope="session")
def reps() -> RepCache:
    return RepCache()
