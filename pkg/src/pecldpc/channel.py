"""The q-ary partial-erasure channel.

The channel either delivers the transmitted symbol intact (probability
1 - epsilon) or replaces it by a uniformly chosen M-element subset of
GF(q) that contains it (probability epsilon).  M = q recovers the plain
q-ary erasure channel.
"""

from __future__ import annotations

import math

import numpy as np

from .combinatorics import binom
from .gf import GF
from .symbol_sets import SymbolSet


class PartialErasureChannel:
    """Partial-erasure channel over GF(q) with set size M.

    Parameters
    ----------
    field : GF
    M : int
        Size of the revealed set on an erasure event, 2 <= M <= q.
    epsilon : float
        Partial-erasure probability.
    """

    def __init__(self, field: GF, M: int, epsilon: float):
        if not 2 <= M <= field.q:
            raise ValueError(f"M must be in [2, q]; got M={M}, q={field.q}")
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
        self.field = field
        self.M = M
        self.epsilon = float(epsilon)
        # number of distinct supersets that can replace one symbol
        self.i_max = binom(field.q - 1, M - 1)

    def with_epsilon(self, epsilon: float) -> "PartialErasureChannel":
        return PartialErasureChannel(self.field, self.M, epsilon)

    def transmit(self, x: int, rng: np.random.Generator) -> SymbolSet:
        """One channel use: {x} or a uniform M-superset of x."""
        q = self.field.q
        if not 0 <= x < q:
            raise ValueError(f"symbol {x} outside GF({q})")
        if rng.random() >= self.epsilon:
            return SymbolSet(self.field, (x,))
        others = [e for e in range(q) if e != x]
        companions = rng.choice(len(others), size=self.M - 1, replace=False)
        mask = 1 << x
        for idx in companions:
            mask |= 1 << others[int(idx)]
        return SymbolSet.from_mask(self.field, mask)

    def transmit_zero_word(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Channel outputs for an all-zero codeword as a bitmask array.

        Vectorized companion draw; the per-row argsort makes every
        (M-1)-subset of the nonzero symbols equally likely.
        """
        q = self.field.q
        if q > 32:
            raise ValueError("bitmask word sampling supports q <= 32")
        masks = np.ones(n, dtype=np.uint32)
        erased = rng.random(n) < self.epsilon
        k = int(erased.sum())
        if k == 0:
            return masks
        if self.M == q:
            masks[erased] = (1 << q) - 1
            return masks
        picks = rng.random((k, q - 1)).argsort(axis=1)[:, : self.M - 1] + 1
        extra = np.bitwise_or.reduce(
            np.left_shift(np.uint32(1), picks.astype(np.uint32)), axis=1
        )
        masks[erased] |= extra
        return masks

    def capacity(self, units: str = "qary") -> float:
        """Channel capacity, 1 - epsilon * log_q(M), in q-ary symbols
        per use ('qary') or bits per use ('bits')."""
        c = 1.0 - self.epsilon * math.log(self.M) / math.log(self.field.q)
        if units == "qary":
            return c
        if units == "bits":
            return c * math.log2(self.field.q)
        raise ValueError(f"unknown units {units!r}")

    def conditional_entropy(self) -> float:
        """H(output | input) in q-ary units; continuous limits at the
        endpoints (0 at epsilon=0, log_q(i_max) at epsilon=1)."""
        eps = self.epsilon
        lq = math.log(self.field.q)
        h = 0.0
        if eps < 1.0:
            h -= (1.0 - eps) * math.log(1.0 - eps) / lq
        if eps > 0.0:
            h -= eps * math.log(eps / self.i_max) / lq
        return h

    def __repr__(self) -> str:
        return (
            f"PartialErasureChannel(q={self.field.q}, M={self.M}, "
            f"epsilon={self.epsilon})"
        )
