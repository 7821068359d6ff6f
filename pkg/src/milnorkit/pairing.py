"""Arcs in the p-punctured plane and the Z/p-equivariant intersection pairing.

Punctures sit at the p-th roots of unity; A_i is a small counterclockwise
circle around the i-th one and B_i = A_i + A_{i+r}, r = p/2.  A class in
H_1(Sigma, B_kappa) is stored as l_kappa + F(sum a_i A_i), where l_kappa is
the diameter from root kappa to root kappa + r.  Because sum A_i = 0 on the
sphere, two vectors that differ by a constant off {kappa, kappa + r} give
the same class; every quantity computed here is invariant under that shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

import numpy as np

from .errors import InvalidInputError, SingularInputError

PAIRING_SIGN_RULE = (
    "<l_mu, l_nu> = +1; <l_mu, F(A_i)> = d(i, mu+r) - d(i, mu); "
    "<F(A_i), l_nu> = d(i, nu) - d(i, nu+r); <F(A_i), F(A_j)> = 0"
)
JITTER = 1e-9
JITTER_SEED = 20240601
SWEEP_SAMPLES = 256
SWEEP_SEED = 7


@dataclass(frozen=True)
class PuncturedSurface:
    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if not (isinstance(p, int) and isinstance(q, int)):
            raise InvalidInputError("p and q must be integers")
        if p % 2 or p <= 2:
            raise InvalidInputError(f"the pairing needs p = 2r > 2, got p={p}")
        if not (0 < q < p and gcd(p, q) == 1):
            raise InvalidInputError(f"need 0 < q < p with gcd(p, q) = 1, got q={q}")

    @property
    def r(self) -> int:
        return self.p // 2

    def puncture(self, i: int) -> complex:
        return complex(np.exp(2j * np.pi * (i % self.p) / self.p))

    def punctures(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.p) / self.p)


@dataclass(frozen=True)
class RelClass:
    """l_kappa + F(sum a_i A_i) in H_1(Sigma, B_kappa), normalised so a_kappa = a_{kappa+r} = 0."""

    kappa: int
    a: tuple[int, ...]
    symmetric: bool = False

    def check(self, s: PuncturedSurface) -> "RelClass":
        if len(self.a) != s.p:
            raise InvalidInputError(f"coefficient vector has length {len(self.a)}, expected {s.p}")
        if not 0 <= self.kappa < s.p:
            raise InvalidInputError(f"kappa must lie in 0..{s.p - 1}")
        if self.a[self.kappa] or self.a[(self.kappa + s.r) % s.p]:
            raise InvalidInputError("class is not normalised: a_kappa and a_{kappa+r} must vanish")
        if self.symmetric and any(self.a[j] != -self.a[(j + s.r) % s.p] for j in range(s.p)):
            raise InvalidInputError("symmetric class needs a_j = -a_{j+r}")
        return self

    def to_json(self) -> dict:
        return {"kappa": self.kappa, "a": list(self.a)}


def normalize(s: PuncturedSurface, kappa: int, a) -> RelClass:
    """Drop the kernel of F: A_kappa and A_{kappa+r} bound in (Sigma, B_kappa)."""
    a = [int(x) for x in a]
    if len(a) != s.p:
        raise InvalidInputError(f"coefficient vector has length {len(a)}, expected {s.p}")
    kappa %= s.p
    a[kappa] = 0
    a[(kappa + s.r) % s.p] = 0
    return RelClass(kappa, tuple(a))


def equivalent(s: PuncturedSurface, c0: RelClass, c1: RelClass) -> bool:
    """Same class: equal kappa-pair and coefficient difference constant off the endpoints."""
    if c0.kappa % s.r != c1.kappa % s.r:
        return False
    sign = 1 if c0.kappa == c1.kappa else -1
    ends = {c0.kappa, (c0.kappa + s.r) % s.p}
    diffs = {c0.a[j] - sign * c1.a[j] for j in range(s.p) if j not in ends}
    if sign == 1:
        return len(diffs) <= 1
    # reversed orientation: -(l + b) = l' - b for l' the opposite diameter
    return len({c0.a[j] + c1.a[j] for j in range(s.p) if j not in ends}) <= 1


def rotate_class(s: PuncturedSurface, c: RelClass) -> RelClass:
    """Image under R, which sends A_i to A_{i+q}."""
    c.check(s)
    a = [0] * s.p
    for i, ai in enumerate(c.a):
        a[(i + s.q) % s.p] = ai
    out = normalize(s, c.kappa + s.q, a)
    return RelClass(out.kappa, out.a, c.symmetric)


def pair(s: PuncturedSurface, c: RelClass, c2: RelClass) -> int:
    """Bilinear extension of the elementary pairings in ``PAIRING_SIGN_RULE``."""
    c.check(s)
    c2.check(s)
    p, r = s.p, s.r
    mu, nu = c.kappa, c2.kappa
    if (mu - nu) % r == 0:
        raise InvalidInputError("pairing needs arcs ending on different boundary pairs")
    chord_chord = 1
    chord_loops = c2.a[(mu + r) % p] - c2.a[mu]
    loops_chord = c.a[nu] - c.a[(nu + r) % p]
    return chord_chord + chord_loops + loops_chord


def chord_sign(s: PuncturedSurface, mu: int, nu: int) -> int:
    """Sign of the crossing of diameters l_mu and l_nu at the origin."""
    return 1 if (nu - mu) % s.p < s.r else -1


def geometric_pair(s: PuncturedSurface, c: RelClass, c2: RelClass) -> int:
    """Signed intersection number of representatives.

    Differs from ``pair`` only in the diameter term, whose true sign is
    ``chord_sign``; the two agree in parity and whenever nu - mu mod p < r.
    """
    return pair(s, c, c2) - 1 + chord_sign(s, c.kappa, c2.kappa)


def paper_pairing(s: PuncturedSurface, kappa: int, a) -> int:
    """<[c], R[c]> = 1 + 2 a_{kappa+q} - 2 a_{kappa-q} for a symmetric normalised class."""
    c = RelClass(kappa % s.p if 0 <= kappa < s.p else kappa, tuple(int(x) for x in a), symmetric=True)
    c.check(s)
    return 1 + 2 * c.a[(kappa + s.q) % s.p] - 2 * c.a[(kappa - s.q) % s.p]


def symmetric_classes(s: PuncturedSurface, kappa: int, values=range(-2, 3)):
    """Every normalised symmetric class at kappa with coefficients drawn from ``values``."""
    from itertools import product

    free = [j for j in range(s.p) if j < s.r and j != kappa % s.r]
    for combo in product(values, repeat=len(free)):
        a = [0] * s.p
        for j, v in zip(free, combo):
            a[j] = v
            a[j + s.r] = -v
        yield RelClass(kappa, tuple(a), symmetric=True)


# Polyline arcs


def _orient(a, b, c):
    return (b.real - a.real) * (c.imag - a.imag) - (b.imag - a.imag) * (c.real - a.real)


def _segment_hits(c1: np.ndarray, c2: np.ndarray):
    """Signs of transverse crossings between polylines, or None on a degenerate contact."""
    a0, a1 = c1[:-1, None], c1[1:, None]
    b0, b1 = c2[None, :-1], c2[None, 1:]
    o1, o2 = _orient(a0, a1, b0), _orient(a0, a1, b1)
    o3, o4 = _orient(b0, b1, a0), _orient(b0, b1, a1)
    touch = (o1 * o2 <= 0) & (o3 * o4 <= 0)
    if np.any(touch & ((o1 == 0) | (o2 == 0) | (o3 == 0) | (o4 == 0))):
        return None
    hit = (o1 * o2 < 0) & (o3 * o4 < 0)
    da, db = (a1 - a0), (b1 - b0)
    cross = da.real * db.imag - da.imag * db.real
    return np.sign(cross[hit]).astype(int)


def _hits_with_jitter(c1, c2):
    c1 = np.asarray(c1, dtype=complex)
    c2 = np.asarray(c2, dtype=complex)
    if c1.ndim != 1 or c2.ndim != 1 or len(c1) < 2 or len(c2) < 2:
        raise InvalidInputError("arcs need at least two vertices")
    hits = _segment_hits(c1, c2)
    if hits is None:
        rng = np.random.default_rng(JITTER_SEED)
        c2 = c2 + JITTER * (rng.standard_normal(len(c2)) + 1j * rng.standard_normal(len(c2)))
        hits = _segment_hits(c1, c2)
        if hits is None:
            raise SingularInputError("arcs overlap degenerately even after jitter")
    return hits


def crossings(c1, c2) -> int:
    """Number of transverse intersections between two polyline arcs."""
    return int(len(_hits_with_jitter(c1, c2)))


def signed_crossings(c1, c2) -> int:
    """Intersections counted with the sign of (c1', c2')."""
    return int(np.sum(_hits_with_jitter(c1, c2)))


def chord_arc(s: PuncturedSurface, kappa: int, samples: int = 65) -> np.ndarray:
    """The diameter l_kappa from root kappa to root kappa + r."""
    z0 = s.puncture(kappa)
    t = np.linspace(0.0, 1.0, samples)
    return z0 * (1 - 2 * t)


def representative_arc(s: PuncturedSurface, c: RelClass, samples_per_turn: int | None = None) -> np.ndarray:
    """An embedded arc in the class c.

    The arc is a counterclockwise spiral rho(phi) = 1 + eps (g(phi) - phi/2pi + c0)
    in the angle phi measured from root kappa.  Consecutive turns stay eps apart,
    so the arc is embedded, and it passes outside puncture j on exactly
    shift - a_j turns, each a counterclockwise crossing of the reference ray.
    The constant shift keeps the turn counts non-negative and does not change
    the class.
    """
    c.check(s)
    p, r, k = s.p, s.r, c.kappa
    ends = {k, (k + r) % p}
    others = [j for j in range(p) if j not in ends]
    shift = max(0, max(c.a[j] for j in others))
    b = {j: shift - c.a[j] for j in others}
    phi_of = {j: 2 * np.pi * ((j - k) % p) / p for j in others}
    turns = 0
    for j in others:
        need = b[j] - 1 if phi_of[j] < np.pi else b[j]
        turns = max(turns, need)
    c0 = 1.0 / (2 * p)
    eps = 0.5 / (turns + 2 + max(b.values(), default=0))
    knots = sorted([(0.0, -c0), (np.pi, turns + 0.5 - c0)] + [(phi_of[j], float(b[j])) for j in others])
    kx = np.array([x for x, _ in knots])
    ky = np.array([y for _, y in knots])
    total = np.pi + 2 * np.pi * turns
    if samples_per_turn is None:
        samples_per_turn = 16 * p + 64
    n = int(samples_per_turn * (turns + 0.5)) + 2
    phi = np.union1d(np.linspace(0.0, total, n), np.concatenate([kx + 2 * np.pi * t for t in range(turns + 1)]))
    phi = phi[phi <= total]
    g = np.interp(np.mod(phi, 2 * np.pi), kx, ky, period=2 * np.pi)
    rho = 1 + eps * (g - phi / (2 * np.pi) + c0)
    arc = rho * np.exp(1j * (phi + 2 * np.pi * k / p))
    arc[0], arc[-1] = s.puncture(k), s.puncture(k + r)
    return arc


def rotate_arc(s: PuncturedSurface, arc) -> np.ndarray:
    return np.asarray(arc, dtype=complex) * np.exp(2j * np.pi * s.q / s.p)


def arc_class(s: PuncturedSurface, arc) -> RelClass:
    """Class of an arc between opposite roots, read off from outward radial rays.

    a_j is the signed number of crossings with the ray from root j to
    infinity, clockwise crossings positive.  This orientation of A_j is the
    one for which ``pair`` equals the signed intersection count of arcs.
    """
    arc = np.asarray(arc, dtype=complex)
    start, end = arc[0], arc[-1]
    pts = s.punctures()
    k0 = int(np.argmin(np.abs(pts - start)))
    k1 = int(np.argmin(np.abs(pts - end)))
    tol = 1e-9
    if abs(pts[k0] - start) > tol or abs(pts[k1] - end) > tol or (k1 - k0) % s.p != s.r:
        raise InvalidInputError("arc must run from a root of unity to the opposite root")
    far = 4.0 * max(2.0, float(np.max(np.abs(arc))))
    a = [0] * s.p
    for j in range(s.p):
        if j in (k0, k1):
            continue
        ray = np.array([pts[j], pts[j] * far])
        # (arc, ray) crossing sign is + for clockwise travel
        a[j] = signed_crossings(arc, ray)
    return normalize(s, k0, a)


def hf_sphere_rank_bounds(s: PuncturedSurface, c: RelClass, c2: RelClass, arc=None, arc2=None) -> tuple[int, int]:
    """(2 |<c, c2>|, 2 * crossings) bracketing rank HF*(V_c, V_c2) = 2 iota(c, c2).

    The algebraic count is the signed intersection number ``geometric_pair``.
    """
    lower = 2 * abs(geometric_pair(s, c, c2))
    if arc is None or arc2 is None:
        raise InvalidInputError("representative arcs are needed for the upper bound")
    for cl, ar in ((c, arc), (c2, arc2)):
        if not equivalent(s, cl, arc_class(s, ar)):
            raise InvalidInputError("representative arc is not in the stated class")
    upper = 2 * crossings(arc, arc2)
    if lower > upper:
        raise ArithmeticError(f"algebraic bound {lower} exceeds geometric count {upper}")
    return lower, upper


# Verdict


class Verdict(str, Enum):
    NONE_EXIST = "NoneExist"
    RP2_EXCEPTION = "RP2Exception"


@dataclass(frozen=True)
class LagrangianVerdict:
    verdict: Verdict
    reason: str
    checked: int = 0

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "reason": self.reason, "classes_checked": self.checked}


def oddness_sweep(p: int, q: int, samples: int = SWEEP_SAMPLES, seed: int = SWEEP_SEED, bound: int = 3) -> int:
    """Random symmetric classes at every kappa: 1 + 2a_{k+q} - 2a_{k-q} must be odd and match ``pair``.

    Returns the number of classes checked; raises ArithmeticError on a counterexample.
    """
    s = PuncturedSurface(p, q)
    rng = np.random.default_rng(seed)
    r = s.r
    half = rng.integers(-bound, bound + 1, size=(samples, r))
    A = np.concatenate([half, -half], axis=1)
    idx = np.arange(p)
    for kappa in range(p):
        Ak = A.copy()
        Ak[:, [kappa, (kappa + r) % p]] = 0
        closed = 1 + 2 * Ak[:, (kappa + q) % p] - 2 * Ak[:, (kappa - q) % p]
        # pair(c, Rc) from the elementary rules, with Rc's vector a'_{i+q} = a_i
        rot = Ak[:, (idx - q) % p]
        rot[:, [(kappa + q) % p, (kappa + q + r) % p]] = 0
        nu = (kappa + q) % p
        bilinear = 1 + (rot[:, (kappa + r) % p] - rot[:, kappa]) + (Ak[:, nu] - Ak[:, (nu + r) % p])
        if np.any(closed % 2 != 1) or np.any(closed != bilinear):
            raise ArithmeticError(f"oddness fails for p={p}, q={q}, kappa={kappa}")
    return samples * p


def exact_lagrangian_verdict(p: int, q: int) -> LagrangianVerdict:
    from .quotient import QuotientParams

    QuotientParams(p, q)
    if p == 2:
        return LagrangianVerdict(Verdict.RP2_EXCEPTION, "B_{2,1} is T*RP^2; its zero section is exact")
    if p % 2:
        return LagrangianVerdict(Verdict.NONE_EXIST, "odd covering")
    return LagrangianVerdict(Verdict.NONE_EXIST, "pairing oddness", oddness_sweep(p, q))
