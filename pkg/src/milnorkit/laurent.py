"""Laurent polynomials over Z/2 and Gaussian elimination over Z/2."""

from __future__ import annotations

from typing import Iterable

import numpy as np


class LaurentZ2:
    """Element of Z/2[t, t^-1], stored as the set of exponents with coefficient 1."""

    __slots__ = ("_exps",)

    def __init__(self, exponents: Iterable[int] = ()):
        exps: set[int] = set()
        for e in exponents:
            exps ^= {int(e)}
        self._exps = frozenset(exps)

    @classmethod
    def monomial(cls, k: int) -> "LaurentZ2":
        return cls((k,))

    @classmethod
    def from_coeffs(cls, coeffs: dict) -> "LaurentZ2":
        return cls(e for e, c in coeffs.items() if c % 2)

    @property
    def exponents(self) -> frozenset:
        return self._exps

    @property
    def coeffs(self) -> dict:
        return {e: 1 for e in sorted(self._exps)}

    def is_zero(self) -> bool:
        return not self._exps

    def __bool__(self) -> bool:
        return bool(self._exps)

    def __add__(self, other: "LaurentZ2") -> "LaurentZ2":
        return LaurentZ2(self._exps ^ other._exps)

    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            return self if other % 2 else ZERO
        out: set[int] = set()
        for a in self._exps:
            for b in other._exps:
                out ^= {a + b}
        return LaurentZ2(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == (ONE if other % 2 else ZERO)
        return isinstance(other, LaurentZ2) and self._exps == other._exps

    def __hash__(self):
        return hash(self._exps)

    def shift(self, k: int) -> "LaurentZ2":
        """Multiply by t^k."""
        return LaurentZ2(e + k for e in self._exps)

    def at_one(self) -> int:
        """Value at t = 1, i.e. the number of terms mod 2."""
        return len(self._exps) % 2

    def is_monomial(self) -> bool:
        return len(self._exps) == 1

    def min_degree(self) -> int:
        return min(self._exps)

    def __repr__(self) -> str:
        if not self._exps:
            return "0"
        terms = []
        for e in sorted(self._exps):
            terms.append("1" if e == 0 else ("t" if e == 1 else f"t^{e}"))
        return " + ".join(terms)


ZERO = LaurentZ2()
ONE = LaurentZ2((0,))
T = LaurentZ2((1,))


def _rref_gf2(matrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over Z/2 and the pivot columns."""
    m = np.array(matrix, dtype=np.uint8) % 2
    if m.ndim != 2:
        m = m.reshape(0, 0)
    rows, cols = m.shape
    pivots: list[int] = []
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(m[rank:, c])
        if nz.size == 0:
            continue
        pivot = rank + nz[0]
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        hit = np.flatnonzero(m[:, c])
        hit = hit[hit != rank]
        m[hit] ^= m[rank]
        pivots.append(c)
        rank += 1
    return m, pivots


def rank_gf2(matrix) -> int:
    """Rank over Z/2 of an integer matrix (entries reduced mod 2)."""
    return len(_rref_gf2(matrix)[1])


def nullspace_gf2(matrix) -> np.ndarray:
    """Basis of the kernel over Z/2, as rows of a 0/1 array."""
    m, pivots = _rref_gf2(matrix)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        basis[k, pivots] = m[: len(pivots), f]
    return basis
