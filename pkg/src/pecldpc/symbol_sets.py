"""Subsets of GF(q) stored as bit-vectors.

A set is an int whose bit i is 1 iff field element i is a member, so
intersection is ``&`` and the two field-aware operations (scaling by a
nonzero element, sumset of a family) reduce to table lookups over set
bits.  For q <= MASK_TABLE_MAX_Q a per-field :class:`MaskTables` bundle
provides the same operations as whole-array lookups, which is what the
decoder and the Monte Carlo sampler run on.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from .gf import GF

# pairwise sumset table is 4**q entries; 12 keeps it at 32 MB of uint16
MASK_TABLE_MAX_Q = 12


def scale_mask(field: GF, mask: int, a: int) -> int:
    """Bitmask of {a*x : x in mask}; a must be nonzero."""
    if a == 0:
        raise ValueError("scaling by 0 is not invertible")
    if a == 1:
        return mask
    row = field._mul_rows[a]
    out = 0
    m = mask
    while m:
        x = (m & -m).bit_length() - 1
        out |= 1 << row[x]
        m &= m - 1
    return out


def sumset_pair_mask(field: GF, a: int, b: int) -> int:
    """Bitmask of {x + y : x in a, y in b}."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    add = field._add_rows
    out = 0
    m = a
    while m:
        x = (m & -m).bit_length() - 1
        row = add[x]
        n = b
        while n:
            y = (n & -n).bit_length() - 1
            out |= 1 << row[y]
            n &= n - 1
        m &= m - 1
    return out


class SymbolSet:
    """A nonempty-or-empty subset of GF(q) with value semantics."""

    __slots__ = ("field", "mask")

    def __init__(self, field: GF, elements: Iterable[int] = ()):
        mask = 0
        for e in elements:
            if not 0 <= e < field.q:
                raise ValueError(f"element {e} outside GF({field.q})")
            mask |= 1 << e
        self.field = field
        self.mask = mask

    @classmethod
    def from_mask(cls, field: GF, mask: int) -> "SymbolSet":
        s = cls.__new__(cls)
        s.field = field
        s.mask = mask
        return s

    @classmethod
    def full(cls, field: GF) -> "SymbolSet":
        return cls.from_mask(field, (1 << field.q) - 1)

    @classmethod
    def parse(cls, field: GF, text: str) -> "SymbolSet":
        """Parse '0,2,3' or '{0,2,3}' (whitespace tolerated)."""
        body = text.strip().strip("{}").strip()
        if not body:
            return cls(field)
        return cls(field, (int(tok) for tok in body.split(",")))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, e: int) -> bool:
        return bool((self.mask >> e) & 1)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SymbolSet)
            and other.mask == self.mask
            and other.field.q == self.field.q
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.mask))

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self) + "}"

    def __repr__(self) -> str:
        return f"SymbolSet(q={self.field.q}, {self})"

    def scale(self, a: int) -> "SymbolSet":
        return SymbolSet.from_mask(self.field, scale_mask(self.field, self.mask, a))


def _check_family(sets: Sequence[SymbolSet]) -> GF:
    if not sets:
        raise ValueError("empty set family")
    field = sets[0].field
    for s in sets[1:]:
        if s.field.q != field.q:
            raise ValueError("sets belong to different fields")
    return field


def sumset(sets: Sequence[SymbolSet]) -> SymbolSet:
    """{sum_j x_j : x_j in S_j} under field addition, folded pairwise."""
    field = _check_family(sets)
    for s in sets:
        if not s:
            raise ValueError("sumset of an empty set is undefined")
    mask = sets[0].mask
    for s in sets[1:]:
        mask = sumset_pair_mask(field, mask, s.mask)
    return SymbolSet.from_mask(field, mask)


def intersect(sets: Sequence[SymbolSet]) -> SymbolSet:
    field = _check_family(sets)
    mask = sets[0].mask
    for s in sets[1:]:
        mask &= s.mask
    return SymbolSet.from_mask(field, mask)


class MaskTables:
    """Vectorized mask algebra for one field (q <= MASK_TABLE_MAX_Q).

    Attributes
    ----------
    translate : ndarray, shape (q, 2**q)
        translate[x, m] = mask of {x + y : y in m}.
    pair_sum : ndarray, shape (2**q, 2**q)
        pair_sum[a, b] = sumset mask of a and b.
    scale : ndarray, shape (q, 2**q)
        scale[a, m] = mask of {a * y : y in m}; row 0 unused.
    popcount : ndarray, shape (2**q,)
    """

    def __init__(self, field: GF):
        q = field.q
        if q > MASK_TABLE_MAX_Q:
            raise ValueError(f"mask tables limited to q <= {MASK_TABLE_MAX_Q}")
        n = 1 << q
        masks = np.arange(n, dtype=np.uint32)
        bit = [(masks >> x) & 1 for x in range(q)]

        translate = np.zeros((q, n), dtype=np.uint16)
        for x in range(q):
            row = field.add_table[x]
            acc = np.zeros(n, dtype=np.uint32)
            for y in range(q):
                acc |= bit[y] << np.uint32(int(row[y]))
            translate[x] = acc

        pair = np.zeros((n, n), dtype=np.uint16)
        for x in range(q):
            pair[bit[x] == 1] |= translate[x][None, :]

        scale = np.zeros((q, n), dtype=np.uint16)
        for a in range(1, q):
            row = field.mul_table[a]
            acc = np.zeros(n, dtype=np.uint32)
            for y in range(q):
                acc |= bit[y] << np.uint32(int(row[y]))
            scale[a] = acc

        pc = np.zeros(n, dtype=np.uint8)
        for x in range(q):
            pc += bit[x].astype(np.uint8)

        self.q = q
        self.full_mask = n - 1
        self.translate = translate
        self.pair_sum = pair
        self.scale = scale
        self.popcount = pc


_TABLE_CACHE: dict[GF, MaskTables] = {}


def mask_tables(field: GF) -> MaskTables:
    tables = _TABLE_CACHE.get(field)
    if tables is None:
        tables = _TABLE_CACHE[field] = MaskTables(field)
    return tables
