"""Finite-difference pluripotential diagnostics.

Levi forms along complex lines via 5-point stencils, full Hermitian Levi
matrices by polarization, plurisubharmonicity and Monge-Ampere degeneracy
checks on sampled safe-region points, and the smooth-case identities tying
the tube potential's Levi matrix to gauge Hessians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bodies import ConvexBody, Ellipsoid, Polytope, _vector
from .errors import OutsideDomainError
from .models import EllipticTube, Model, StripTube, as_point
from .reports import CheckReport, point_to_list
from .sampling import substream

Field = Callable[[np.ndarray], float]


def levi_line(field: Field, z, direction, h: float) -> float:
    """Levi form of the field at z along one complex line.

    Quarter of the 5-point Laplacian of t -> field(z + t * direction) over
    the complex t-plane; exact on quadratics, O(h^2) where the field is C^4.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    d = np.atleast_1d(np.asarray(direction, dtype=complex))
    if d.shape != z.shape:
        raise ValueError("direction/point dimension mismatch")
    total = (field(z + h * d) + field(z - h * d)
             + field(z + 1j * h * d) + field(z - 1j * h * d)
             - 4.0 * field(z))
    return 0.25 * total / (h * h)


@dataclass
class LeviReport:
    """Hermitian Levi matrix with eigen-diagnostics."""
    matrix: np.ndarray
    min_eig: float
    max_eig: float
    det_abs: float
    step: float
    point: np.ndarray


def levi_matrix(field: Field, z, h: float) -> LeviReport:
    """Assemble the full Levi matrix by complex polarization of levi_line.

    Diagonal entries come from coordinate lines directly; off-diagonal
    entries combine the four polarization lines e_j +/- e_k, e_j +/- i e_k.
    The result is Hermitian-symmetrized before eigen-analysis.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    n = z.size
    eye = np.eye(n, dtype=complex)
    A = np.zeros((n, n), dtype=complex)
    for j in range(n):
        A[j, j] = levi_line(field, z, eye[j], h)
        for k in range(j + 1, n):
            spp = levi_line(field, z, eye[j] + eye[k], h)
            spm = levi_line(field, z, eye[j] - eye[k], h)
            spi = levi_line(field, z, eye[j] + 1j * eye[k], h)
            smi = levi_line(field, z, eye[j] - 1j * eye[k], h)
            A[j, k] = 0.25 * ((spp - spm) + 1j * (spi - smi))
            A[k, j] = np.conj(A[j, k])
    A = 0.5 * (A + A.conj().T)
    eigs = np.linalg.eigvalsh(A)
    return LeviReport(matrix=A, min_eig=float(eigs[0]), max_eig=float(eigs[-1]),
                      det_abs=abs(float(np.prod(eigs))), step=h, point=z)


def _sampled_reports(model: Model, nsamples: int, seed: int, h: float):
    if nsamples < 1:
        raise ValueError("nsamples must be positive")
    for k in range(nsamples):
        rng = substream(seed, k)
        z = model.sample_fd_safe(rng, h)
        yield levi_matrix(model.potential, z, h)


def check_plurisubharmonic(model: Model, nsamples: int, seed: int,
                           h: float = 1e-3, tol: float = 1e-6) -> CheckReport:
    """All sampled Levi matrices satisfy min_eig >= -tol * max(1, max_eig)."""
    worst = math.inf
    worst_point = None
    for rep in _sampled_reports(model, nsamples, seed, h):
        value = rep.min_eig / max(1.0, rep.max_eig)
        if value < worst:
            worst, worst_point = value, rep.point
    return CheckReport(check="psh", model=model.name, samples=nsamples, h=h,
                       tol=tol, worst_point=point_to_list(worst_point),
                       worst_value=worst, passed=bool(worst >= -tol))


def check_monge_ampere(model: Model, nsamples: int, seed: int,
                       h: float = 1e-3, rel_tol: float = 1e-4,
                       abs_floor: float = 1e-4) -> CheckReport:
    """One Levi eigenvalue vanishes at every sample (degenerate determinant).

    A sample passes if min_eig <= rel_tol * max_eig, or if min_eig is below
    abs_floor outright (covers dimension 1, where degeneracy means the
    whole form vanishes).
    """
    worst = -math.inf
    worst_point = None
    passed = True
    for rep in _sampled_reports(model, nsamples, seed, h):
        value = rep.min_eig / max(rep.max_eig, abs_floor)
        if value > worst:
            worst, worst_point = value, rep.point
        if not (rep.min_eig <= rel_tol * rep.max_eig
                or abs(rep.min_eig) <= abs_floor):
            passed = False
    return CheckReport(check="ma", model=model.name, samples=nsamples, h=h,
                       tol=rel_tol, worst_point=point_to_list(worst_point),
                       worst_value=worst, passed=passed)


def _require_c2_body(body: ConvexBody) -> None:
    if isinstance(body, Polytope):
        raise ValueError("polytope bodies are not C2; check requires a "
                         "smooth boundary")


def tube_levi_residual(body: ConvexBody, z, h: float) -> float:
    """Max-norm gap between the FD Levi matrix of the tube potential and
    its closed form (gauge Hessians at (x, y) and (x, -y), divided by 8).

    Shrinks O(h^2) on C^2 bodies. The potential averages the arctangents
    of the two gauges with weight 1/2, and each arctangent contributes a
    quarter of a Hessian, hence the 1/8.
    """
    _require_c2_body(body)
    tube = EllipticTube(body)
    z = as_point(z, body.dim)
    if not np.any(z.imag):
        raise OutsideDomainError("gauge Hessian undefined at center points")
    if not tube.member(z):
        raise OutsideDomainError("point is not in the elliptic tube")
    x, y = z.real, z.imag
    target = 0.125 * (body.gauge_hessian(x, y) + body.gauge_hessian(x, -y))
    rep = levi_matrix(tube.potential, z, h)
    return float(np.max(np.abs(rep.matrix - target)))


def _fd_gauge_derivatives(body: ConvexBody, x: np.ndarray, y: np.ndarray,
                          h: float):
    """Central FD first and second partials of the centered gauge."""
    n = body.dim
    eye = np.eye(n)
    g = body.gauge
    px = np.empty(n)
    py = np.empty(n)
    for i in range(n):
        px[i] = (g(x + h * eye[i], y) - g(x - h * eye[i], y)) / (2 * h)
        py[i] = (g(x, y + h * eye[i]) - g(x, y - h * eye[i])) / (2 * h)
    pyy = np.empty((n, n))
    pxy = np.empty((n, n))
    pxx = np.empty((n, n))
    p0 = g(x, y)
    for i in range(n):
        for j in range(n):
            if i == j:
                pyy[i, i] = (g(x, y + h * eye[i]) - 2 * p0
                             + g(x, y - h * eye[i])) / (h * h)
                pxx[i, i] = (g(x + h * eye[i], y) - 2 * p0
                             + g(x - h * eye[i], y)) / (h * h)
            else:
                pyy[i, j] = (g(x, y + h * (eye[i] + eye[j]))
                             - g(x, y + h * (eye[i] - eye[j]))
                             - g(x, y - h * (eye[i] - eye[j]))
                             + g(x, y - h * (eye[i] + eye[j]))) / (4 * h * h)
                pxx[i, j] = (g(x + h * (eye[i] + eye[j]), y)
                             - g(x + h * (eye[i] - eye[j]), y)
                             - g(x - h * (eye[i] - eye[j]), y)
                             + g(x - h * (eye[i] + eye[j]), y)) / (4 * h * h)
            pxy[i, j] = (g(x + h * eye[i], y + h * eye[j])
                         - g(x + h * eye[i], y - h * eye[j])
                         - g(x - h * eye[i], y + h * eye[j])
                         + g(x - h * eye[i], y - h * eye[j])) / (4 * h * h)
    return p0, px, py, pxx, pxy, pyy


def gauge_identity_residuals(body: ConvexBody, x, y,
                             h: float) -> tuple[float, float, float]:
    """Max-norm residuals of the three first/second-derivative identities
    tying x-derivatives of the centered gauge to its y-derivatives:

        p_x = p p_y
        p_xy = p p_yy + p_y p_y^T
        p_xx = p^2 p_yy + 2 p p_y p_y^T

    All derivatives by central finite differences; each residual is O(h^2)
    on C^2 bodies.
    """
    _require_c2_body(body)
    x = _vector(x, body.dim)
    y = _vector(y, body.dim)
    if not np.any(y):
        raise OutsideDomainError("identities hold off the center only")
    p0, px, py, pxx, pxy, pyy = _fd_gauge_derivatives(body, x, y, h)
    outer = np.outer(py, py)
    r1 = float(np.max(np.abs(px - p0 * py)))
    r2 = float(np.max(np.abs(pxy - (p0 * pyy + outer))))
    r3 = float(np.max(np.abs(pxx - (p0 ** 2 * pyy + 2.0 * p0 * outer))))
    return r1, r2, r3


def metric_levi_pair(model: StripTube, x, v,
                     h: float = 1e-4) -> tuple[float, float]:
    """(sqrt of twice the Levi form of the squared potential, closed-form
    metric) at a center point; the pair agrees to O(h^2) when the squared
    gauge is C^2 (ellipsoidal gauges).
    """
    if not isinstance(model, StripTube):
        raise TypeError("squared-potential check is defined for strip tubes")
    if not isinstance(model.gauge.body, Ellipsoid):
        raise ValueError("squared gauge must be C2 (ellipsoidal body)")
    x = _vector(x, model.dim)
    v = _vector(v, model.dim)
    if not np.any(v):
        return 0.0, 0.0

    def g(t: float) -> float:
        return model.potential(x + 1j * t * v) ** 2

    second = (g(h) - 2.0 * g(0.0) + g(-h)) / (h * h)
    return math.sqrt(max(0.5 * second, 0.0)), model.metric(x, v)
