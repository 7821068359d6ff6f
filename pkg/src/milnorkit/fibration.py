"""Base geometry of the Lefschetz fibration z : S_n -> C.

S_n = {z^(n+1) + 2xy = 1} projects to the z-plane with critical values at
the (n+1)-th roots of unity.  The symplectic area of a matching torus disk
is the area, for the form sigma = (1 + J_f) dA, of the region enclosed by
the base curve, where J_f is the Jacobian of

    f(z) = (1 - z^(n+1)) / sqrt(2 |1 - z^(n+1)|).

Writing P = 1 - z^(n+1), the map f is P followed by w -> w / sqrt(2|w|),
whose Jacobian is 1 / (4|w|), so J_f = (n+1)^2 |z|^(2n) / (4 |P|).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .curves import DEFAULT_VERTICES, PlanarCurve, circle
from .errors import BracketError, InvalidInputError, NumericalError, SingularInputError
from .quadrature import gauss_legendre, integrate_polyline, tensor_rule

EPS_CRIT = 1e-3
TOL_TAU = 1e-6


@dataclass(frozen=True)
class FibreParams:
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise InvalidInputError(f"n must be a non-negative integer, got {self.n!r}")

    @property
    def degree(self) -> int:
        return self.n + 1


@dataclass(frozen=True)
class MonotonicityConstant:
    tau: float
    area_term: float
    fibre_term: float

    def __float__(self) -> float:
        return self.tau


class IsotopyVerdict(str, enum.Enum):
    ISOTOPIC = "Isotopic"
    NOT_ISOTOPIC = "NotIsotopic"
    UNKNOWN = "Unknown"


def critical_values(params: FibreParams) -> list[complex]:
    k = np.arange(params.degree)
    roots = np.exp(2j * np.pi * k / params.degree)
    # exact values on the axes keep reports tidy
    roots = np.where(np.abs(roots.real) < 1e-15, 1j * roots.imag, roots)
    roots = np.where(np.abs(roots.imag) < 1e-15, roots.real + 0j, roots)
    return [complex(c) for c in roots]


def fibre_map(z, n: int):
    """The map f sending a base point to the rescaled value of 1 - z^(n+1)."""
    p = 1.0 - np.asarray(z, dtype=complex) ** (n + 1)
    return p / np.sqrt(2.0 * np.abs(p))


def fibre_jacobian(z, n: int):
    """Closed form Jacobian determinant of ``fibre_map``."""
    z = np.asarray(z, dtype=complex)
    p = np.abs(1.0 - z ** (n + 1))
    return (n + 1) ** 2 * np.abs(z) ** (2 * n) / (4.0 * p)


def fibre_jacobian_fd(z: complex, n: int, h: float = 1e-6) -> float:
    """Central-difference Jacobian determinant of ``fibre_map``, for validation."""
    fx = (fibre_map(z + h, n) - fibre_map(z - h, n)) / (2 * h)
    fy = (fibre_map(z + 1j * h, n) - fibre_map(z - 1j * h, n)) / (2 * h)
    return float(fx.real * fy.imag - fx.imag * fy.real)


def sigma_density(z: complex, params: FibreParams, eps: float = EPS_CRIT) -> float:
    """Density of sigma with respect to Euclidean area at ``z``."""
    if abs(1.0 - z ** params.degree) < eps:
        raise SingularInputError(f"{z} is within {eps:g} of a critical value")
    return 1.0 + float(fibre_jacobian(z, params.n))


def check_admissible(curve: PlanarCurve, params: FibreParams, eps: float = EPS_CRIT) -> None:
    for c in critical_values(params):
        d = curve.distance_to(c)
        if d < eps:
            raise SingularInputError(
                f"curve passes within {d:.3g} of critical value {c:.6g} (minimum {eps:g})"
            )
    if not curve.is_simple():
        raise InvalidInputError("curve is not simple")


def _fibre_integrand(n: int):
    def integrand(z, dz):
        p = 1.0 - z ** (n + 1)
        dp = -(n + 1) * z**n * dz
        return 0.25 * (np.conj(p) * dp).imag / np.abs(p)

    return integrand


def tau(
    curve: PlanarCurve,
    params: FibreParams,
    tol: float = TOL_TAU,
    eps: float = EPS_CRIT,
    check: bool = True,
) -> MonotonicityConstant:
    """Monotonicity constant of the matching torus over ``curve``.

    Sum of the Euclidean area enclosed by the curve and the line integral of
    (1/2) r^2 dtheta along its image under ``fibre_map``, both evaluated by
    adaptive Gauss-Legendre quadrature on the polyline edges.
    """
    if check:
        check_admissible(curve, params, eps)
    pts = curve.points
    area = integrate_polyline(lambda z, dz: 0.5 * (np.conj(z) * dz).imag, pts, tol / 2)
    fibre = integrate_polyline(_fibre_integrand(params.n), pts, tol / 2)
    return MonotonicityConstant(area + fibre, area, fibre)


def round_limit(params: FibreParams) -> float:
    """Limit of tau over round circles as the radius decreases to 1."""
    return float(np.pi + params.degree)


def radius_for_tau(
    params: FibreParams,
    tau_target: float,
    tol: float = TOL_TAU,
    m: int = DEFAULT_VERTICES,
    r_min: float | None = None,
) -> float:
    """Radius of the centred round curve whose monotonicity constant is ``tau_target``.

    Bisection on [r_min, r_hi], where r_hi is found by doubling.  Raises
    BracketError if the target lies below tau(r_min), which happens when it
    is closer to the round limit than the polyline resolution can resolve.
    """
    if not tau_target > round_limit(params):
        raise InvalidInputError(
            f"tau_target={tau_target} must exceed pi + n + 1 = {round_limit(params):.12g}"
        )
    if r_min is None:
        r_min = 1.0 + 2 * EPS_CRIT
    quad_tol = tol / 10

    def t(r: float) -> float:
        return tau(circle(r, m=m), params, quad_tol, check=False).tau

    probes = [(r_min, t(r_min))]
    if probes[0][1] >= tau_target:
        raise BracketError(
            f"tau_target={tau_target} is below tau at r_min={r_min} ({probes[0][1]:.9g})"
        )
    lo = r_min
    hi = 2.0 * r_min
    for _ in range(64):
        probes.append((hi, t(hi)))
        if probes[-1][1] > tau_target:
            break
        lo, hi = hi, 2 * hi
    else:
        raise BracketError(f"no radius reaches tau_target={tau_target}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val = t(mid)
        probes.append((mid, val))
        if abs(val - tau_target) <= tol or hi - lo <= 1e-14 * hi:
            break
        if val < tau_target:
            lo = mid
        else:
            hi = mid
    probes.sort()
    taus = np.array([v for _, v in probes])
    if np.any(np.diff(taus) <= 0):
        raise NumericalError("tau(circle_r) is not increasing on the probed bracket")
    return mid


def enclosed_criticals(curve: PlanarCurve, params: FibreParams) -> frozenset[int]:
    """Indices k of the critical values exp(2 pi i k / (n+1)) enclosed by the curve."""
    inside = set()
    for k, c in enumerate(critical_values(params)):
        w = curve.winding_number(c)
        if w not in (0, 1):
            raise SingularInputError(f"winding number {w} about critical value {k}: curve not simple")
        if w == 1:
            inside.add(k)
    return frozenset(inside)


def same_hamiltonian_class(
    c0: PlanarCurve, c1: PlanarCurve, params: FibreParams, tol: float = TOL_TAU
) -> IsotopyVerdict:
    """Compare the matching tori over two curves up to Hamiltonian isotopy.

    Equal enclosed sets and equal tau suffice for an isotopy; unequal tau rules
    one out, since tau is the area of a disk class carried along by any
    Hamiltonian isotopy.  Equal tau with different enclosed sets is undecided.
    """
    t0 = tau(c0, params, tol / 100).tau
    t1 = tau(c1, params, tol / 100).tau
    if abs(t0 - t1) > tol:
        return IsotopyVerdict.NOT_ISOTOPIC
    if enclosed_criticals(c0, params) == enclosed_criticals(c1, params):
        return IsotopyVerdict.ISOTOPIC
    return IsotopyVerdict.UNKNOWN


def _smoothstep(x):
    # C-infinity step: 0 for x <= 0, 1 for x >= 1
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(x > 0, np.exp(-1.0 / np.where(x > 0, x, 1.0)), 0.0)
        b = np.where(x < 1, np.exp(-1.0 / np.where(x < 1, 1.0 - x, 1.0)), 0.0)
    return a / (a + b)


def _bump(rho, delta):
    """1 on [0, delta/2], 0 beyond delta, smooth in between."""
    return 1.0 - _smoothstep((rho - 0.5 * delta) / (0.5 * delta))


def sigma_area(
    curve: PlanarCurve,
    params: FibreParams,
    center: complex | None = None,
    angular_panels: int = 4,
    radial_panels: int = 24,
    order: int = 10,
) -> float:
    """Area of the region enclosed by a star-shaped curve with respect to sigma.

    Two-dimensional quadrature, independent of the line integrals in ``tau``.
    Each enclosed critical value gets a smooth cut-off disk on which the
    density is integrated in polar coordinates centred at that critical value,
    where the 1/|z - c| blow-up is cancelled by the area element.  The rest
    is integrated in polar coordinates about ``center`` edge by edge.
    """
    z = curve.points
    if center is None:
        center = complex(np.mean(z))
    rel = z - center
    ang = np.unwrap(np.angle(rel))
    if not (np.all(np.diff(ang) > 0) and abs(ang[-1] + np.angle(rel[0] / rel[-1]) - ang[0] - 2 * np.pi) < 1e-9):
        raise InvalidInputError("sigma_area needs a curve that is star-shaped about its center")

    n = params.n
    crits = np.array(critical_values(params))
    inside = [c for k, c in enumerate(crits) if curve.winding_number(c) == 1]
    spacing = np.min(np.abs(crits[:, None] - crits[None, :]) + np.eye(crits.size) * 9) if crits.size > 1 else 9.0
    bumps = []
    for c in inside:
        delta = min(0.9 * curve.distance_to(c), 0.45 * spacing, 0.5)
        bumps.append((c, delta))

    def smooth_density(w):
        cut = np.ones(w.shape)
        for c, delta in bumps:
            cut = cut - _bump(np.abs(w - c), delta)
        jac = np.zeros(w.shape)
        live = cut > 0
        jac[live] = fibre_jacobian(w[live], n) * cut[live]
        return 1.0 + jac

    # polar coordinates about the center, one angular sector per edge
    xg, wg = gauss_legendre(order)
    rho_nodes, rho_weights = tensor_rule(0.0, 1.0, radial_panels, order)
    a = rel
    b = np.roll(rel, -1)
    phi0 = np.angle(a)
    dphi = np.angle(b / a)
    total = 0.0
    for p in range(angular_panels):
        s = (p + xg) / angular_panels  # position inside the sector, in [0, 1]
        phi = phi0[:, None] + dphi[:, None] * s[None, :]
        wphi = np.abs(dphi)[:, None] * (wg / angular_panels)[None, :]
        e = np.exp(1j * phi)
        # ray center + t e meets the edge a + u (b - a): solve for t
        d = (b - a)[:, None]
        t_hit = (np.conj(d) * a[:, None]).imag / (np.conj(d) * e).imag
        rho = t_hit[..., None] * rho_nodes
        pts = center + rho * e[..., None]
        vals = smooth_density(pts.ravel()).reshape(pts.shape)
        inner = (vals * rho * rho_weights).sum(axis=-1) * t_hit
        total += float(np.sum(inner * wphi))

    # cut-off disks, polar about each enclosed critical value
    n_psi = 256
    psi = 2 * np.pi * np.arange(n_psi) / n_psi
    for c, delta in bumps:
        r_nodes, r_weights = tensor_rule(0.0, delta, 8, order)
        rr, pp = np.meshgrid(r_nodes, psi, indexing="ij")
        w = c + rr * np.exp(1j * pp)
        vals = fibre_jacobian(w, n) * _bump(rr, delta) * rr
        total += float(np.sum(vals * r_weights[:, None]) * (2 * np.pi / n_psi))
    return total
