"""GF(q) arithmetic for q prime or a prime power, q <= 256.

Field elements are plain integers in [0, q-1].  For an extension field
GF(p^s) the integer's base-p digits are the coefficients of the
polynomial representative (digit k = coefficient of x^k), so element 0
is the additive identity and element 1 the multiplicative identity in
every supported field.

All arithmetic is table-driven: the constructor builds full q x q
add/mul tables plus neg/inv vectors, which keeps the decoder and the
sumset enumeration loops free of polynomial arithmetic.
"""

from __future__ import annotations

from itertools import product

import numpy as np

MAX_Q = 256


def _smallest_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    # mod is monic
    a = list(a)
    d = len(mod) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for j in range(d + 1):
                a[i - d + j] = (a[i - d + j] - c * mod[j]) % p
    a = a[:d]
    while len(a) < d:
        a.append(0)
    return a


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not any(_poly_mod(poly, divisor, p)):
                return False
    return True


def _find_reduction_poly(p: int, s: int) -> tuple[int, ...]:
    """Smallest (by base-p value of the low coefficients) monic
    irreducible polynomial of degree s over GF(p)."""
    for value in range(p**s):
        coeffs = []
        v = value
        for _ in range(s):
            coeffs.append(v % p)
            v //= p
        poly = coeffs + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise RuntimeError(f"no irreducible polynomial of degree {s} over GF({p})")


class GF:
    """Finite field GF(q) with precomputed operation tables.

    Parameters
    ----------
    q : int
        Field order, 2 <= q <= 256, prime or prime power.

    Attributes
    ----------
    q, p, s : int
        Order, characteristic and extension degree (q = p^s).
    reduction_poly : tuple[int, ...]
        Coefficients (ascending degree, monic) of the irreducible
        polynomial used for s > 1; empty tuple for prime fields.
    add_table, mul_table : ndarray
        q x q operation tables.
    neg_table, inv_table : ndarray
        Negation for all elements; inverse for nonzero elements
        (entry 0 of inv_table is unused).
    """

    def __init__(self, q: int):
        if not isinstance(q, int) or q < 2 or q > MAX_Q:
            raise ValueError(f"q must be an integer in [2, {MAX_Q}], got {q}")
        p = _smallest_prime_factor(q)
        s = 0
        n = q
        while n % p == 0:
            n //= p
            s += 1
        if n != 1:
            raise ValueError(f"q={q} is not a prime power")

        self.q = q
        self.p = p
        self.s = s
        self.reduction_poly: tuple[int, ...] = () if s == 1 else _find_reduction_poly(p, s)
        self._build_tables()

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.s):
            out.append(a % self.p)
            a //= self.p
        return out

    def _from_digits(self, coeffs: list[int]) -> int:
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c
        return v

    def _build_tables(self) -> None:
        q, p, s = self.q, self.p, self.s
        add = np.zeros((q, q), dtype=np.int16)
        mul = np.zeros((q, q), dtype=np.int16)
        if s == 1:
            grid = np.arange(q)
            add[:, :] = (grid[:, None] + grid[None, :]) % q
            mul[:, :] = (grid[:, None] * grid[None, :]) % q
        else:
            red = list(self.reduction_poly)
            digits = [self._digits(a) for a in range(q)]
            for a in range(q):
                da = digits[a]
                for b in range(a, q):
                    db = digits[b]
                    add[a, b] = add[b, a] = self._from_digits(
                        [(x + y) % p for x, y in zip(da, db)]
                    )
                    prod = _poly_mod(_poly_mul(da, db, p), red, p)
                    mul[a, b] = mul[b, a] = self._from_digits(prod)

        neg = np.zeros(q, dtype=np.int16)
        inv = np.zeros(q, dtype=np.int16)
        for a in range(q):
            row = add[a]
            neg[a] = int(np.flatnonzero(row == 0)[0])
        for a in range(1, q):
            hits = np.flatnonzero(mul[a] == 1)
            if hits.size != 1:
                raise RuntimeError(
                    f"element {a} of GF({q}) has no unique inverse; "
                    f"reduction polynomial {self.reduction_poly} is not irreducible"
                )
            inv[a] = int(hits[0])

        self.add_table = add
        self.mul_table = mul
        self.neg_table = neg
        self.inv_table = inv
        # plain nested lists: ~5x faster than ndarray scalar indexing in
        # the per-element set loops
        self._add_rows = add.tolist()
        self._mul_rows = mul.tolist()
        self._neg_list = neg.tolist()
        self._inv_list = inv.tolist()

    # -- element operations -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add_rows[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add_rows[a][self._neg_list[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul_rows[a][b]

    def neg(self, a: int) -> int:
        return self._neg_list[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self._inv_list[a]

    def div(self, a: int, b: int) -> int:
        return self._mul_rows[a][self.inv(b)]

    def elements(self) -> range:
        return range(self.q)

    def nonzero_elements(self) -> range:
        return range(1, self.q)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GF)
            and other.q == self.q
            and other.reduction_poly == self.reduction_poly
        )

    def __hash__(self) -> int:
        return hash((self.q, self.reduction_poly))

    def __repr__(self) -> str:
        if self.s == 1:
            return f"GF({self.q})"
        terms = []
        for k in range(self.s, -1, -1):
            c = 1 if k == self.s else self.reduction_poly[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append("x" if c == 1 else f"{c}x")
            else:
                terms.append(f"x^{k}" if c == 1 else f"{c}x^{k}")
        return f"GF({self.q}, poly={'+'.join(terms)})"
