"""Maslov index 2 holomorphic disks on matching tori.

Boundary classes are written k V + l L in the basis of H_1(T_n) given by the
vanishing cycle V and a section class L.  The disks through a generic point
are obtained by gluing one-critical-value pieces: the base piece (the
Clifford torus) carries one disk in L and one in L + V, and gluing two
pieces multiplies counts and adds V-coefficients.  The section class of a
glued torus is, by convention, the glue of the section classes of its
pieces; with this choice every glued disk again has L-coefficient 1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import InvalidInputError

L_BASIS_CONVENTION = "L_n is the glue of n+1 base section classes, left to right"
INT64_MAX = 2**63 - 1


@dataclass(frozen=True, order=True)
class TorusH1Class:
    """Integral class kV * V + lL * L in H_1 of a matching torus."""

    kV: int
    lL: int

    def __add__(self, other: "TorusH1Class") -> "TorusH1Class":
        return TorusH1Class(self.kV + other.kV, self.lL + other.lL)

    def __sub__(self, other: "TorusH1Class") -> "TorusH1Class":
        return TorusH1Class(self.kV - other.kV, self.lL - other.lL)

    def __rmul__(self, k: int) -> "TorusH1Class":
        return TorusH1Class(k * self.kV, k * self.lL)

    def mod2(self) -> "TorusH1Class":
        return TorusH1Class(self.kV % 2, self.lL % 2)

    def is_zero(self) -> bool:
        return self.kV == 0 and self.lL == 0

    def __str__(self) -> str:
        terms = []
        for coeff, name in ((self.kV, "V"), (self.lL, "L")):
            if coeff == 1:
                terms.append(name)
            elif coeff:
                terms.append(f"{coeff}{name}")
        return " + ".join(terms) if terms else "0"


V = TorusH1Class(1, 0)
L = TorusH1Class(0, 1)


@dataclass(frozen=True)
class DiskCensus:
    """Counts of Maslov 2 disks through a generic point, keyed by boundary class.

    ``n`` is the number of enclosed critical values minus one; an empty census
    has no entries.
    """

    n: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for cl, count in self.entries.items():
            if not isinstance(cl, TorusH1Class):
                raise InvalidInputError(f"census keys must be TorusH1Class, got {cl!r}")
            if count < 0:
                raise InvalidInputError("disk counts are non-negative")
            if count > INT64_MAX:
                raise OverflowError(f"disk count {count} exceeds 64-bit range")
            if count:
                clean[cl] = int(count)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiskCensus):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, tuple(self.entries.items())))

    def __bool__(self) -> bool:
        return bool(self.entries)

    def total_count(self) -> int:
        return sum(self.entries.values())

    def to_json(self) -> dict:
        return {str(cl): count for cl, count in self.entries.items()}


def base_census() -> DiskCensus:
    """One critical value enclosed: the Clifford torus in C^2."""
    return DiskCensus(0, {L: 1, V + L: 1})


EMPTY = DiskCensus(-1, {})


def glue(left: DiskCensus, right: DiskCensus) -> DiskCensus:
    """Fibre product of two censuses along the common vanishing cycle.

    V-coefficients add, the two section classes merge into the section class
    of the glued torus, and counts multiply.
    """
    if not left or not right:
        return EMPTY
    out: Counter = Counter()
    for a, ca in left.entries.items():
        for b, cb in right.entries.items():
            # L_a glued to L_b is the glued section class: its coefficient stays 1
            out[TorusH1Class(a.kV + b.kV, 1)] += ca * cb
    return DiskCensus(left.n + right.n + 1, dict(out))


def census(n: int) -> DiskCensus:
    """Maslov 2 disks on a matching torus enclosing n + 1 critical values."""
    if n < 0:
        raise InvalidInputError("n must be non-negative")
    c = base_census()
    for _ in range(n):
        c = glue(c, base_census())
    return c


def binomial_census(n: int) -> DiskCensus:
    """Closed form {kV + L: C(n+1, k)}, used as a test oracle."""
    return DiskCensus(n, {TorusH1Class(k, 1): comb(n + 1, k) for k in range(n + 2)})


def total_boundary(c: DiskCensus) -> TorusH1Class:
    """Sum of boundary classes over all disks, over the integers."""
    total = TorusH1Class(0, 0)
    for cl, count in c.entries.items():
        total = total + count * cl
    return total


def c_class(c: DiskCensus) -> TorusH1Class:
    """The class c(T) in H_1(T; Z/2)."""
    return total_boundary(c).mod2()


def maslov(cl: TorusH1Class) -> int:
    """Maslov index: sections have index 2, the thimble class has index 0."""
    return 2 * cl.lL


def symplectic_area(cl: TorusH1Class, tau: float) -> float:
    """Area from monotonicity, 2 omega(A) = tau mu(A)."""
    if not tau > 0:
        raise InvalidInputError("monotonicity constant must be positive")
    return float(tau) * maslov(cl) / 2


# Model sections of pi(x1, x2) = x1^2 + x2^2 over the disk of radius r.


@dataclass(frozen=True)
class ModelSection:
    """The section u_{a,sign} with a = exp(i angle) / 2."""

    angle: float
    sign: int
    r: float

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidInputError("sign must be +1 or -1")
        if not self.r > 0:
            raise InvalidInputError("radius must be positive")

    @property
    def a(self) -> complex:
        return 0.5 * np.exp(1j * self.angle)


def model_section_eval(s: ModelSection, w):
    """u_{a,+-}(w) = (r^-1/2 a w + r^1/2 conj(a), +-i (r^-1/2 a w - r^1/2 conj(a)))."""
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) > s.r * (1 + 1e-12)):
        raise InvalidInputError(f"|w| exceeds the disk radius {s.r}")
    a = s.a
    rs = np.sqrt(s.r)
    u = a * w / rs
    v = rs * np.conj(a)
    return np.stack([u + v, s.sign * 1j * (u - v)])


def model_projection(x1, x2):
    return x1**2 + x2**2


def light_cone(x1, x2):
    """Coordinates X = x1 + i x2, Y = x1 - i x2, in which x1^2 + x2^2 = XY."""
    return x1 + 1j * x2, x1 - 1j * x2


def on_model_torus(x1, x2, r: float, tol: float = 1e-12) -> bool:
    X, Y = light_cone(x1, x2)
    rs = np.sqrt(r)
    return bool(np.all(np.abs(np.abs(X) - rs) <= tol * max(1, rs)) and np.all(np.abs(np.abs(Y) - rs) <= tol * max(1, rs)))


def sections_through(pt, r: float) -> list[tuple[ModelSection, complex]]:
    """The two sections whose boundary passes through the torus point ``pt``.

    Returns pairs (section, w) with |w| = r and u(w) = pt.
    """
    x1, x2 = np.asarray(pt, dtype=complex)
    if not on_model_torus(x1, x2, r, tol=1e-9):
        raise InvalidInputError("point is not on the model torus |X| = |Y| = sqrt(r)")
    X, Y = light_cone(x1, x2)
    rs = np.sqrt(r)
    out = []
    # sign +1 holds X = 2 sqrt(r) conj(a) fixed; sign -1 holds Y fixed
    for sign, fixed, moving in ((1, X, Y), (-1, Y, X)):
        a = np.conj(fixed) / (2 * rs)
        w = moving * rs / (2 * a)
        out.append((ModelSection(float(np.angle(a)), sign, r), complex(w)))
    return out


def boundary_winding(s: ModelSection, samples: int = 512) -> tuple[int, int]:
    """Winding numbers of X and Y along the boundary loop of the section."""
    phi = 2 * np.pi * np.arange(samples + 1) / samples
    x1, x2 = model_section_eval(s, s.r * np.exp(1j * phi))
    X, Y = light_cone(x1, x2)

    def wind(path):
        return int(round(float(np.sum(np.angle(path[1:] / path[:-1]))) / (2 * np.pi)))

    if np.any(np.abs(X) < 1e-300) or np.any(np.abs(Y) < 1e-300):
        raise InvalidInputError("boundary passes through the origin")
    return wind(X), wind(Y)


def boundary_class(s: ModelSection) -> TorusH1Class:
    """Boundary class of a model section in the basis (V, L).

    In winding coordinates of (X, Y) the vanishing cycle XY = const is
    (1, -1); L is taken to be the class (0, 1) of the sections that hold X
    fixed, so (wx, wy) = wx V + (wx + wy) L.
    """
    wx, wy = boundary_winding(s)
    return TorusH1Class(wx, wx + wy)


def boundary_tangent(s: ModelSection, w: complex) -> np.ndarray:
    """Tangent to the boundary loop at w, in torus angle coordinates (arg X, arg Y)."""
    h = 1e-7
    x1a, x2a = model_section_eval(s, w * np.exp(-1j * h))
    x1b, x2b = model_section_eval(s, w * np.exp(1j * h))
    Xa, Ya = light_cone(x1a, x2a)
    Xb, Yb = light_cone(x1b, x2b)
    return np.array([np.angle(Xb / Xa), np.angle(Yb / Ya)]) / (2 * h)


def section_area(s: ModelSection, radial: int = 16, angular: int = 64) -> float:
    """Integral of the symplectic form of S_0 over the section disk.

    Under (x, y) = (X, Y) / sqrt(2) and z = 1 - w the model fibration becomes
    the n = 0 fibre z + 2xy = 1 with critical value 1, so the pulled-back form
    is |du/dw|^2 (from x1, x2) plus 1 (from z), integrated over |w| <= r.
    The derivative is taken by central differences of ``model_section_eval``.
    """
    from .quadrature import tensor_rule

    rho, wr = tensor_rule(0.0, s.r, 4, radial)
    phi = 2 * np.pi * np.arange(angular) / angular
    w = rho[:, None] * np.exp(1j * phi)[None, :]
    h = 1e-5 * s.r
    # Gauss nodes stay 1e-3 r inside the rim, clear of the stencil width
    du = (model_section_eval(s, w + h) - model_section_eval(s, w - h)) / (2 * h)
    # u is holomorphic, so its area Jacobian is |du/dw|^2
    density = np.sum(np.abs(du) ** 2, axis=0) + 1.0
    return float(np.sum(density * (rho * wr)[:, None]) * 2 * np.pi / angular)
