"""Arithmetic and handle topology of the rational homology balls B_{p,q}.

B_{p,q} is the quotient of S_{p-1} = {z^p + 2xy = 1} by the free action of
Z/p generated by (x, y, z) -> (xi x, xi^-1 y, xi^q z), xi = exp(2 pi i / p).
Its boundary is the lens space L(p^2, pq - 1), which also bounds the linear
plumbing C_{p,q} read off from the Hirzebruch-Jung expansion of p^2/(pq - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, gcd

import numpy as np
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors

from .errors import InvalidInputError

ACTION_TOL = 1e-12


@dataclass(frozen=True)
class QuotientParams:
    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if isinstance(p, bool) or isinstance(q, bool) or not (isinstance(p, int) and isinstance(q, int)):
            raise InvalidInputError("p and q must be integers")
        if not p > q > 0:
            raise InvalidInputError(f"need p > q > 0, got p={p}, q={q}")
        if gcd(p, q) != 1:
            raise InvalidInputError(f"gcd(p, q) must be 1, got gcd({p}, {q}) = {gcd(p, q)}")

    @property
    def r(self) -> int | None:
        return self.p // 2 if self.p % 2 == 0 else None


def admissible(p_max: int, p_min: int = 2):
    """All admissible (p, q) with p_min <= p <= p_max, in lexicographic order."""
    for p in range(max(p_min, 2), p_max + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                yield QuotientParams(p, q)


def invariant_function(params: QuotientParams, point) -> complex:
    """F = z^p + 2xy."""
    x, y, z = np.asarray(point, dtype=complex)
    return z**params.p + 2 * x * y


def act(params: QuotientParams, k: int, point) -> np.ndarray:
    """The element xi^k of Gamma_{p,q} applied to (x, y, z)."""
    x, y, z = np.asarray(point, dtype=complex)
    p = params.p
    k %= p
    if k == 0:
        return np.array([x, y, z])

    def root(m):
        return np.exp(2j * np.pi * (m % p) / p)

    return np.array([root(k) * x, root(-k) * y, root(k * params.q) * z])


def random_fibre_points(params: QuotientParams, count: int, rng: np.random.Generator, scale: float = 1.5) -> np.ndarray:
    """Points of F = 1, shape (count, 3): x and z are sampled and y solved for."""
    x = scale * (rng.standard_normal(count) + 1j * rng.standard_normal(count))
    z = scale * (rng.standard_normal(count) + 1j * rng.standard_normal(count)) / 2
    y = (1 - z**params.p) / (2 * x)
    return np.stack([x, y, z], axis=1)


def is_fixed(params: QuotientParams, k: int, point, tol: float = ACTION_TOL) -> bool:
    pt = np.asarray(point, dtype=complex)
    return bool(np.max(np.abs(act(params, k, pt) - pt)) <= tol * max(1.0, float(np.max(np.abs(pt)))))


def fixed_points_on_fibre(params: QuotientParams, k: int) -> list:
    """Fixed points of xi^k on F = 1.

    For k != 0 mod p the fixed locus in C^3 is the origin (gcd(q, p) = 1 forces
    z = 0), and F(0) = 0, so the list is empty.
    """
    if k % params.p == 0:
        raise InvalidInputError("the identity fixes every point")
    return []


@dataclass(frozen=True)
class PlumbingGraph:
    """Linear plumbing with Euler numbers -b_i, stored as [-b_k, ..., -b_1]."""

    euler_numbers: tuple[int, ...]

    def __post_init__(self):
        if not self.euler_numbers:
            raise InvalidInputError("plumbing chain is empty")
        if any(e > -2 for e in self.euler_numbers):
            raise InvalidInputError("every Euler number must be <= -2")

    @property
    def b(self) -> list[int]:
        return [-e for e in self.euler_numbers]


def continued_fraction_value(b: list[int]) -> Fraction:
    """[b_k, ..., b_1] = b_k - 1/(b_{k-1} - 1/(... - 1/b_1))."""
    if not b:
        raise InvalidInputError("empty continued fraction")
    val = Fraction(b[-1])
    for bi in reversed(b[:-1]):
        val = bi - 1 / val
    return val


def hj_coefficients(num: int, den: int) -> list[int]:
    """Hirzebruch-Jung expansion of num/den > 1 by a/b -> ceil(a/b) - 1/(...)."""
    x = Fraction(num, den)
    if x <= 1:
        raise InvalidInputError("expansion needs a fraction greater than 1")
    out = []
    while True:
        c = ceil(x)
        out.append(c)
        if c == x:
            return out
        x = 1 / (c - x)


def hj_expansion(params: QuotientParams) -> PlumbingGraph:
    p, q = params.p, params.q
    b = hj_coefficients(p * p, p * q - 1)
    if continued_fraction_value(b) != Fraction(p * p, p * q - 1):
        raise ArithmeticError("continued fraction does not round-trip")
    return PlumbingGraph(tuple(-bi for bi in b))


def plumbing_matrix(g: PlumbingGraph) -> list[list[int]]:
    k = len(g.euler_numbers)
    return [[g.euler_numbers[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(k)] for i in range(k)]


def determinant(matrix: list[list[int]]) -> int:
    """Exact integer determinant; tridiagonal input uses the continuant recurrence."""
    k = len(matrix)
    if all(matrix[i][j] == 0 for i in range(k) for j in range(k) if abs(i - j) > 1):
        prev, cur = 1, 1
        for i in range(k):
            off = matrix[i][i - 1] * matrix[i - 1][i] if i else 0
            prev, cur = cur, matrix[i][i] * cur - off * prev
        return cur
    return int(Matrix(matrix).det(method="bareiss"))


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank + Z/t_1 + ... with t_1 | t_2 | ..."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HandleDiagram:
    """A 0-handle, some 1-handles and framed 2-handles.

    Each 2-handle is (strands, framing); ``strands`` is the algebraic number
    of times it runs over each 1-handle, an int when there is one 1-handle or
    a tuple with one entry per 1-handle.
    """

    one_handles: int
    two_handles: tuple[tuple[object, int], ...] = ()

    def __post_init__(self):
        if not isinstance(self.one_handles, int) or self.one_handles < 0:
            raise InvalidInputError("one_handles must be a non-negative integer")
        fixed = []
        for entry in self.two_handles:
            try:
                strands, framing = entry
            except (TypeError, ValueError):
                raise InvalidInputError(f"2-handle must be (strands, framing), got {entry!r}") from None
            if isinstance(strands, int):
                strands = (strands,)
            try:
                strands = tuple(strands)
            except TypeError:
                raise InvalidInputError(f"strand counts must be an int or a sequence, got {strands!r}") from None
            if len(strands) != self.one_handles and not (self.one_handles == 0 and strands in ((), (0,))):
                raise InvalidInputError(
                    f"2-handle lists {len(strands)} strand counts for {self.one_handles} one-handles"
                )
            if not all(isinstance(s, int) for s in strands) or not isinstance(framing, int):
                raise InvalidInputError("strand counts and framings must be integers")
            fixed.append((strands if self.one_handles else (), framing))
        object.__setattr__(self, "two_handles", tuple(fixed))

    def boundary_matrix(self) -> list[list[int]]:
        """d_2 : C_2 -> C_1, one column per 2-handle."""
        return [[h[0][i] for h in self.two_handles] for i in range(self.one_handles)]


@dataclass(frozen=True)
class HandleHomology:
    H1: AbelianGroup
    H2_rank: int
    chi: int

    def to_json(self) -> dict:
        return {"H1": str(self.H1), "H2": str(AbelianGroup(self.H2_rank)), "chi": self.chi}


def handle_homology(d: HandleDiagram) -> HandleHomology:
    """Cellular homology of the handlebody; d_1 = 0 since there is a single 0-handle."""
    n1, n2 = d.one_handles, len(d.two_handles)
    if n1 == 0 or n2 == 0:
        return HandleHomology(AbelianGroup(n1), n2, 1 - n1 + n2)
    factors = [int(f) for f in invariant_factors(Matrix(d.boundary_matrix()), domain=ZZ)]
    nonzero = [abs(f) for f in factors if f != 0]
    rank = len(nonzero)
    h1 = AbelianGroup(n1 - rank, tuple(sorted(f for f in nonzero if f > 1)))
    return HandleHomology(h1, n2 - rank, 1 - n1 + n2)


def bpq_diagram(params: QuotientParams) -> HandleDiagram:
    """One 1-handle and one 2-handle through it p times with framing tb - 1 = -pq - 1."""
    return HandleDiagram(1, ((params.p, -params.p * params.q - 1),))


def cover_diagram(params: QuotientParams) -> HandleDiagram:
    """The p-fold cover S_{p-1}: p 2-handles, each once through the 1-handle, framing -1 - q."""
    return HandleDiagram(1, tuple((1, -1 - params.q) for _ in range(params.p)))


def lens_boundary(params: QuotientParams) -> tuple[int, tuple[int, int]]:
    """(|H_1|, (p^2, pq - 1)) for the boundary lens space L(p^2, pq - 1)."""
    p, q = params.p, params.q
    order = p * p
    det = determinant(plumbing_matrix(hj_expansion(params)))
    if abs(det) != order:
        raise ArithmeticError(f"plumbing determinant {det} disagrees with p^2 = {order}")
    return order, (order, p * q - 1)
