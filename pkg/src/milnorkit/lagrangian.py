"""Round matching tori as special Lagrangians, and the n = 1 cotangent model."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .fibration import FibreParams

TOL_SLAG = 1e-8
ON_TORUS_TOL = 1e-9
GOLDEN = (np.sqrt(5.0) + 1.0) / 2.0


def round_torus_point(params: FibreParams, r: float, phi: float, theta: float) -> np.ndarray:
    """Point (x, y, z) of the matching torus over |z| = r.

    ``phi`` is the base angle, ``theta`` the angle along the vanishing cycle
    |x| = |y| in the fibre.
    """
    z = r * np.exp(1j * phi)
    p = 1.0 - z**params.degree
    rad = np.sqrt(abs(p) / 2.0)
    half = 0.5 * np.angle(p)
    x = rad * np.exp(1j * (half + theta))
    y = rad * np.exp(1j * (half - theta))
    return np.array([x, y, z])


def _check_on_torus(params: FibreParams, r: float, point) -> np.ndarray:
    x, y, z = np.asarray(point, dtype=complex)
    scale = max(1.0, abs(z) ** params.degree)
    errs = {
        "fibre equation": abs(z**params.degree + 2 * x * y - 1) / scale,
        "|z| = r": abs(abs(z) - r),
        "|x| = |y|": abs(abs(x) - abs(y)),
    }
    bad = {k: v for k, v in errs.items() if v > ON_TORUS_TOL * max(1.0, r)}
    if bad:
        detail = ", ".join(f"{k} off by {v:.2e}" for k, v in bad.items())
        raise InvalidInputError(f"sample is not on the round matching torus: {detail}")
    return np.array([x, y, z])


def _real_tangent_basis(point, degree):
    """Real basis (as complex 3-vectors) of T S_n at the point."""
    x, y, z = point
    grad = np.array([2 * y, 2 * x, degree * z ** (degree - 1)])
    # complex kernel of v -> grad . v
    _, _, vh = np.linalg.svd(grad[None, :])
    k1, k2 = vh[1].conj(), vh[2].conj()
    return [k1, 1j * k1, k2, 1j * k2]


def _omega(u, v):
    return float(np.sum(np.conj(u) * v).imag)


def volume_form_pairing(params: FibreParams, r: float, sample) -> complex:
    """Omega(xi, X_H) at a point of the round matching torus.

    Omega = dx ^ dy / (2xy - 1) restricted to S_n, xi = (ix, -iy, 0) spans
    the vanishing-cycle direction and X_H is the Hamiltonian vector field of
    H = |2xy - 1|^2, solved for in a real basis of the tangent space.
    """
    if not r > 1:
        raise InvalidInputError("round matching tori need r > 1")
    pt = _check_on_torus(params, r, sample)
    x, y, z = pt
    basis = _real_tangent_basis(pt, params.degree)
    gram = np.array([[_omega(a, b) for b in basis] for a in basis])
    q = 2 * x * y - 1
    dh = np.array([2 * (np.conj(q) * (2 * y * v[0] + 2 * x * v[1])).real for v in basis])
    # omega(X_H, .) = dH  <=>  gram^T c = dH for X_H = sum c_i basis_i
    coeffs = np.linalg.solve(gram.T, dh)
    xh = sum(c * v for c, v in zip(coeffs, basis))
    xi = np.array([1j * x, -1j * y, 0.0])
    return complex((xi[0] * xh[1] - xi[1] * xh[0]) / q)


def special_lagrangian_residual(params: FibreParams, r: float, sample) -> float:
    """|Im Omega(xi, X_H)|; zero exactly when the tangent plane is special Lagrangian."""
    return abs(volume_form_pairing(params, r, sample).imag)


@dataclass(frozen=True)
class CotangentPoint:
    """A covector ``u`` at ``v`` on the unit sphere, as a point of T*S^2."""

    v: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        u = np.asarray(self.u, dtype=float)
        if abs(np.linalg.norm(v) - 1) > 1e-9 or abs(v @ u) > 1e-9 * max(1.0, np.linalg.norm(u)):
            raise InvalidInputError("need |v| = 1 and <v, u> = 0")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "u", u)


def milnor_to_quadric(point) -> np.ndarray:
    """(x, y, z) on z^2 + 2xy = 1  ->  (z0, z1, z2) on z0^2 + z1^2 + z2^2 = 1."""
    x, y, z = np.asarray(point, dtype=complex)
    return np.array([z, (x + y) / np.sqrt(2), (x - y) / (1j * np.sqrt(2))])


def quadric_to_milnor(q) -> np.ndarray:
    z0, z1, z2 = np.asarray(q, dtype=complex)
    return np.array([(z1 + 1j * z2) / np.sqrt(2), (z1 - 1j * z2) / np.sqrt(2), z0])


def milnor_to_cotangent(point, tol: float = 1e-9) -> CotangentPoint:
    """Exact symplectomorphism S_1 -> T*S^2, (s, t) -> (s/|s|, t|s|)."""
    x, y, z = np.asarray(point, dtype=complex)
    if abs(z**2 + 2 * x * y - 1) > tol * max(1.0, abs(z) ** 2):
        raise InvalidInputError("point is not on S_1")
    q = milnor_to_quadric(point)
    s, t = q.real, q.imag
    ns = np.linalg.norm(s)
    return CotangentPoint(s / ns, t * ns)


def cotangent_to_milnor(cp: CotangentPoint) -> np.ndarray:
    """Inverse of ``milnor_to_cotangent``: |s|^2 solves |s|^2 - |u|^2/|s|^2 = 1."""
    nu2 = float(cp.u @ cp.u)
    ns = np.sqrt((1.0 + np.sqrt(1.0 + 4.0 * nu2)) / 2.0)
    s = ns * cp.v
    t = cp.u / ns
    return quadric_to_milnor(s + 1j * t)


def polterovich_base_point(cp: CotangentPoint) -> complex:
    """Base coordinate z of a point of T*S^2 under the identification with S_1."""
    return complex(cotangent_to_milnor(cp)[2])
