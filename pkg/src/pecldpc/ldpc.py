"""Tanner graphs for GF(q) LDPC codes.

Graphs come from the configuration model: variable and check sockets
are matched by a uniform random permutation and every edge carries an
independent uniform nonzero label.  Parallel edges are kept, as the
ensemble defines them.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .gf import GF


class TannerGraph:
    """Bipartite variable/check graph with nonzero GF(q) edge labels.

    Edge arrays are index-aligned: edge e connects variable
    ``edge_var[e]`` to check ``edge_chk[e]`` with label ``edge_label[e]``.
    """

    def __init__(self, field: GF, edge_var, edge_chk, edge_label, n=None, m=None):
        ev = np.asarray(edge_var, dtype=np.int64)
        ec = np.asarray(edge_chk, dtype=np.int64)
        el = np.asarray(edge_label, dtype=np.int64)
        if not (ev.shape == ec.shape == el.shape) or ev.ndim != 1:
            raise ValueError("edge arrays must be 1-d and index-aligned")
        if ev.size and ((el < 1).any() or (el >= field.q).any()):
            raise ValueError("edge labels must be nonzero field elements")
        self.field = field
        self.edge_var = ev
        self.edge_chk = ec
        self.edge_label = el
        self.n = int(n) if n is not None else int(ev.max()) + 1 if ev.size else 0
        self.m = int(m) if m is not None else int(ec.max()) + 1 if ec.size else 0
        if ev.size and (ev.min() < 0 or ev.max() >= self.n):
            raise ValueError("variable index out of range")
        if ec.size and (ec.min() < 0 or ec.max() >= self.m):
            raise ValueError("check index out of range")
        self.var_degrees = np.bincount(ev, minlength=self.n)
        self.chk_degrees = np.bincount(ec, minlength=self.m)

    @property
    def n_edges(self) -> int:
        return self.edge_var.size

    def edges_of_check(self, j: int) -> np.ndarray:
        return np.flatnonzero(self.edge_chk == j)

    def edges_of_var(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.edge_var == i)

    def check_satisfied(self, assignment, j: int) -> bool:
        """True iff the label-weighted GF(q) sum over check j is zero."""
        assignment = np.asarray(assignment)
        if assignment.shape != (self.n,):
            raise ValueError(f"assignment must have length {self.n}")
        f = self.field
        acc = 0
        for e in self.edges_of_check(j):
            acc = f.add(acc, f.mul(int(self.edge_label[e]), int(assignment[self.edge_var[e]])))
        return acc == 0

    # -- serialization: header "q n m", then one "v c label" line per edge --

    def to_text(self) -> str:
        lines = [f"{self.field.q} {self.n} {self.m}"]
        for v, c, h in zip(self.edge_var, self.edge_chk, self.edge_label):
            lines.append(f"{v} {c} {h}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TannerGraph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not rows or len(rows[0]) != 3:
            raise ValueError("expected header line 'q n m'")
        q, n, m = (int(x) for x in rows[0])
        ev, ec, el = [], [], []
        for row in rows[1:]:
            if len(row) != 3:
                raise ValueError(f"bad edge line {' '.join(row)!r}")
            ev.append(int(row[0]))
            ec.append(int(row[1]))
            el.append(int(row[2]))
        return cls(GF(q), ev, ec, el, n=n, m=m)

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path) -> "TannerGraph":
        return cls.from_text(Path(path).read_text())

    def __repr__(self) -> str:
        return (
            f"TannerGraph(q={self.field.q}, n={self.n}, m={self.m}, "
            f"edges={self.n_edges})"
        )


def build_regular(
    n: int, d_v: int, d_c: int, field: GF, rng: np.random.Generator
) -> TannerGraph:
    """Configuration-model (d_v, d_c)-regular graph on n variables.

    Requires n*d_v divisible by d_c.  Variable sockets are laid out in
    variable order and matched to a random permutation of check
    sockets; labels are uniform over the nonzero field elements.
    """
    if d_v < 2 or d_c < 2:
        raise ValueError("degrees must be at least 2")
    if (n * d_v) % d_c != 0:
        raise ValueError(f"n*d_v = {n * d_v} not divisible by d_c = {d_c}")
    m = n * d_v // d_c
    n_edges = n * d_v
    edge_var = np.repeat(np.arange(n), d_v)
    chk_sockets = np.repeat(np.arange(m), d_c)
    edge_chk = rng.permutation(chk_sockets)
    edge_label = rng.integers(1, field.q, size=n_edges)
    return TannerGraph(field, edge_var, edge_chk, edge_label, n=n, m=m)


@dataclass(frozen=True)
class DegreeDistribution:
    """Edge-perspective degree fractions for variables and checks.

    ``lambda_coeffs[i]`` (``rho_coeffs[i]``) is the fraction of edges
    attached to degree-i variable (check) nodes; each map sums to 1 and
    uses degrees >= 2.
    """

    lambda_coeffs: dict[int, float]
    rho_coeffs: dict[int, float]

    def __post_init__(self):
        for name, coeffs in (("lambda", self.lambda_coeffs), ("rho", self.rho_coeffs)):
            if not coeffs:
                raise ValueError(f"{name} coefficients are empty")
            for deg, frac in coeffs.items():
                if deg < 2:
                    raise ValueError(f"{name} degree {deg} below 2")
                if frac < 0:
                    raise ValueError(f"{name}_{deg} is negative")
            if abs(sum(coeffs.values()) - 1.0) > 1e-9:
                raise ValueError(f"{name} coefficients must sum to 1")

    @classmethod
    def regular(cls, d_v: int, d_c: int) -> "DegreeDistribution":
        return cls({d_v: 1.0}, {d_c: 1.0})

    @property
    def max_var_degree(self) -> int:
        return max(self.lambda_coeffs)

    @property
    def max_chk_degree(self) -> int:
        return max(self.rho_coeffs)
