"""Bounded open convex bodies in R^n and their centered Minkowski gauges.

A body supplies membership, the gauge p(x, y) = inf{t > 0 : x + y/t in body}
centered at an interior point x, the y-Hessian of the gauge where the
boundary is C^2, and support values used to certify holomorphic pullbacks.
Polytopes and ellipsoids use closed forms; smooth bodies fall back to a
bracketed bisection on membership.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from scipy.optimize import linprog, minimize

from .errors import ConvergenceError, OutsideDomainError, SpecError

_MAX_BRACKET = 200
_MAX_BISECT = 200


def _vector(x, dim: int | None = None) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("expected a 1-D real vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    if dim is not None and v.size != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {v.size}")
    return v


class ConvexBody:
    """Base class; concrete bodies implement membership and geometry hooks."""

    dim: int

    def contains(self, x) -> bool:
        raise NotImplementedError

    def support(self, a) -> float:
        """sup of a . w over the body (finite by boundedness)."""
        raise NotImplementedError

    def interior_point(self) -> np.ndarray:
        raise NotImplementedError

    def inradius(self) -> float:
        """Radius of some ball around interior_point() contained in the body."""
        raise NotImplementedError

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def gauge(self, x, y) -> float:
        """Minkowski functional of the body centered at interior x, at y."""
        x = _vector(x, self.dim)
        y = _vector(y, self.dim)
        return self._gauge(x, y)

    def _gauge(self, x: np.ndarray, y: np.ndarray) -> float:
        # validated-input fast path shared by the tube models
        if not self.contains(x):
            raise OutsideDomainError("gauge center x is not inside the body")
        if not np.any(y):
            return 0.0
        return self._gauge_bisect(x, y)

    def gauge_hessian(self, x, y) -> np.ndarray:
        raise NotImplementedError

    # Bisection on t -> membership of x + y/t.  Boundedness guarantees the
    # outer bracket endpoint; openness guarantees the inner one.
    def _gauge_bisect(self, x: np.ndarray, y: np.ndarray,
                      rel_tol: float = 1e-14, growth: float = 2.0) -> float:
        t_hi = 1.0
        if self.contains(x + y):
            t_lo = 1.0
            for _ in range(_MAX_BRACKET):
                t_lo /= growth
                if not self.contains(x + y / t_lo):
                    break
            else:
                raise ConvergenceError("no lower bracket for gauge bisection")
        else:
            for _ in range(_MAX_BRACKET):
                t_hi *= growth
                if self.contains(x + y / t_hi):
                    break
            else:
                raise ConvergenceError("no upper bracket for gauge bisection")
            t_lo = t_hi / growth
        for _ in range(_MAX_BISECT):
            if t_hi - t_lo <= rel_tol * t_hi:
                break
            mid = 0.5 * (t_lo + t_hi)
            if self.contains(x + y / mid):
                t_hi = mid
            else:
                t_lo = mid
        return 0.5 * (t_lo + t_hi)


class Polytope(ConvexBody):
    """Open polytope {w : A w < b}, bounded (normals positively span R^n)."""

    def __init__(self, A, b):
        self.A = np.atleast_2d(np.asarray(A, dtype=float))
        self.b = np.asarray(b, dtype=float).ravel()
        if self.A.shape[0] != self.b.size:
            raise SpecError("halfspace count mismatch between A and b")
        if not (np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.b))):
            raise SpecError("non-finite halfspace data")
        self.dim = self.A.shape[1]
        self._bbox = self._compute_bbox()
        self._cheb_center, self._cheb_radius = self._chebyshev()
        if self._cheb_radius <= 0.0:
            raise SpecError("polytope has empty interior")

    def _lp(self, c) -> float:
        res = linprog(c, A_ub=self.A, b_ub=self.b,
                      bounds=[(None, None)] * self.dim, method="highs")
        if res.status == 3:
            raise SpecError("polytope is unbounded")
        if not res.success:
            raise SpecError(f"polytope LP failed: {res.message}")
        return float(res.fun)

    def _compute_bbox(self):
        lo = np.empty(self.dim)
        hi = np.empty(self.dim)
        for i in range(self.dim):
            e = np.zeros(self.dim)
            e[i] = 1.0
            lo[i] = self._lp(e)
            hi[i] = -self._lp(-e)
        return lo, hi

    def _chebyshev(self):
        norms = np.linalg.norm(self.A, axis=1)
        A_ext = np.hstack([self.A, norms[:, None]])
        c = np.zeros(self.dim + 1)
        c[-1] = -1.0
        res = linprog(c, A_ub=A_ext, b_ub=self.b,
                      bounds=[(None, None)] * self.dim + [(0, None)],
                      method="highs")
        if not res.success:
            raise SpecError("polytope Chebyshev center LP failed")
        return res.x[:-1].copy(), float(res.x[-1])

    def contains(self, x) -> bool:
        x = _vector(x, self.dim)
        return bool(np.all(self.A @ x < self.b))

    def support(self, a) -> float:
        return -self._lp(-_vector(a, self.dim))

    def interior_point(self) -> np.ndarray:
        return self._cheb_center.copy()

    def inradius(self) -> float:
        return self._cheb_radius

    def bounding_box(self):
        return self._bbox[0].copy(), self._bbox[1].copy()

    def gauge(self, x, y) -> float:
        x = _vector(x, self.dim)
        y = _vector(y, self.dim)
        return self._gauge(x, y)

    def _gauge(self, x: np.ndarray, y: np.ndarray) -> float:
        den = self.b - self.A @ x
        if np.any(den <= 0.0):
            raise OutsideDomainError("gauge center x is not inside the polytope")
        if not np.any(y):
            return 0.0
        # halfspaces with a.y <= 0 never constrain t; the empty max is 0
        ratios = (self.A @ y) / den
        return float(max(0.0, np.max(ratios)))

    def gauge_hessian(self, x, y) -> np.ndarray:
        raise ValueError("polytope gauge is not C2; no Hessian")


class Ellipsoid(ConvexBody):
    """Open ellipsoid {w : w^T Q w < 1} with Q symmetric positive definite."""

    def __init__(self, Q):
        Q = np.atleast_2d(np.asarray(Q, dtype=float))
        if Q.shape[0] != Q.shape[1]:
            raise SpecError("Q must be square")
        if not np.all(np.isfinite(Q)):
            raise SpecError("non-finite Q")
        if np.max(np.abs(Q - Q.T)) > 1e-12 * max(1.0, np.max(np.abs(Q))):
            raise SpecError("Q must be symmetric")
        self.Q = 0.5 * (Q + Q.T)
        try:
            np.linalg.cholesky(self.Q)
        except np.linalg.LinAlgError:
            raise SpecError("Q must be positive definite") from None
        self.dim = Q.shape[0]
        self._Qinv = np.linalg.inv(self.Q)
        self._eigmax = float(np.linalg.eigvalsh(self.Q)[-1])

    def contains(self, x) -> bool:
        x = _vector(x, self.dim)
        return bool(x @ self.Q @ x < 1.0)

    def support(self, a) -> float:
        a = _vector(a, self.dim)
        return float(np.sqrt(a @ self._Qinv @ a))

    def interior_point(self) -> np.ndarray:
        return np.zeros(self.dim)

    def inradius(self) -> float:
        return 1.0 / np.sqrt(self._eigmax)

    def bounding_box(self):
        half = np.sqrt(np.diag(self._Qinv))
        return -half, half.copy()

    def gauge(self, x, y) -> float:
        x = _vector(x, self.dim)
        y = _vector(y, self.dim)
        return self._gauge(x, y)

    def _gauge(self, x: np.ndarray, y: np.ndarray) -> float:
        Qx = self.Q @ x
        d = 1.0 - x @ Qx
        if d < 1e-12:
            raise OutsideDomainError("x too close to the ellipsoid boundary")
        if not np.any(y):
            return 0.0
        b = Qx @ y
        c = y @ self.Q @ y
        return float((b + np.sqrt(b * b + c * d)) / d)

    def gauge_hessian(self, x, y) -> np.ndarray:
        x = _vector(x, self.dim)
        y = _vector(y, self.dim)
        if not np.any(y):
            raise ValueError("gauge Hessian undefined at y = 0")
        d = 1.0 - x @ self.Q @ x
        if d < 1e-12:
            raise OutsideDomainError("x too close to the ellipsoid boundary")
        b = x @ self.Q @ y
        c = y @ self.Q @ y
        r = np.sqrt(b * b + c * d)
        Qx = self.Q @ x
        Qy = self.Q @ y
        v = b * Qx + d * Qy
        return (np.outer(Qx, Qx) / r + d * self.Q / r - np.outer(v, v) / r ** 3) / d


class SmoothBody(ConvexBody):
    """Body {w : f(w) < 0} given by an oracle w -> (value, gradient, Hessian).

    The caller declares a bounding radius; convexity is spot-checked by
    sampling the oracle Hessian.
    """

    def __init__(self, oracle: Callable[[np.ndarray], tuple], dim: int,
                 bounding_radius: float, bracket_growth: float = 2.0,
                 rel_tol: float = 1e-15, check_convexity: bool = True):
        if bounding_radius <= 0 or not np.isfinite(bounding_radius):
            raise SpecError("bounding radius must be positive and finite")
        if bracket_growth <= 1.0:
            raise SpecError("bracket growth factor must exceed 1")
        self.oracle = oracle
        self.dim = int(dim)
        self.bounding_radius = float(bounding_radius)
        self.bracket_growth = float(bracket_growth)
        self.rel_tol = float(rel_tol)
        if not self.contains(np.zeros(self.dim)):
            raise SpecError("smooth body oracle must contain the origin")
        if check_convexity:
            self._spot_check_convexity()

    def _spot_check_convexity(self):
        rng = np.random.Generator(np.random.Philox(key=np.uint64(0)))
        for _ in range(32):
            w = rng.uniform(-1.0, 1.0, self.dim) * self.bounding_radius
            _, _, hess = self.oracle(w)
            if np.min(np.linalg.eigvalsh(np.asarray(hess, dtype=float))) < -1e-10:
                raise SpecError("smooth body oracle is not convex")

    def contains(self, x) -> bool:
        x = _vector(x, self.dim)
        if np.linalg.norm(x) > self.bounding_radius:
            return False
        value, _, _ = self.oracle(x)
        return bool(value < 0.0)

    def support(self, a) -> float:
        """Multistart ascent of a . w over the boundary, with a safety margin."""
        a = _vector(a, self.dim)
        norm_a = np.linalg.norm(a)
        if norm_a == 0.0:
            return 0.0
        origin = np.zeros(self.dim)

        def neg_ratio(d):
            n = np.linalg.norm(d)
            if n < 1e-9:
                return 0.0
            d = d / n
            return -(a @ d) / self.gauge(origin, d)

        starts = [a / norm_a]
        eye = np.eye(self.dim)
        starts.extend(eye)
        starts.extend(-eye)
        rng = np.random.Generator(np.random.Philox(key=np.uint64(1)))
        for _ in range(4):
            v = rng.normal(size=self.dim)
            starts.append(v / np.linalg.norm(v))
        best = -np.inf
        for s in starts:
            res = minimize(neg_ratio, s, method="Nelder-Mead",
                           options={"xatol": 1e-10, "fatol": 1e-12,
                                    "maxiter": 400})
            best = max(best, -float(res.fun))
        return best + 1e-9

    def interior_point(self) -> np.ndarray:
        return np.zeros(self.dim)

    def inradius(self) -> float:
        rng = np.random.Generator(np.random.Philox(key=np.uint64(2)))
        origin = np.zeros(self.dim)
        dirs = list(np.eye(self.dim)) + list(-np.eye(self.dim))
        for _ in range(64):
            v = rng.normal(size=self.dim)
            dirs.append(v / np.linalg.norm(v))
        r = min(1.0 / self.gauge(origin, d) for d in dirs)
        return 0.9 * r

    def bounding_box(self):
        half = np.full(self.dim, self.bounding_radius)
        return -half, half.copy()

    def _gauge_bisect(self, x, y, rel_tol=None, growth=None):
        return super()._gauge_bisect(
            x, y, self.rel_tol if rel_tol is None else rel_tol,
            self.bracket_growth if growth is None else growth)

    def gauge_hessian(self, x, y) -> np.ndarray:
        x = _vector(x, self.dim)
        y = _vector(y, self.dim)
        if not np.any(y):
            raise ValueError("gauge Hessian undefined at y = 0")
        h = 1e-4 * np.linalg.norm(y)
        n = self.dim
        H = np.empty((n, n))
        eye = np.eye(n)
        for i in range(n):
            for j in range(i, n):
                if i == j:
                    pp = self.gauge(x, y + h * eye[i])
                    pm = self.gauge(x, y - h * eye[i])
                    p0 = self.gauge(x, y)
                    H[i, i] = (pp - 2.0 * p0 + pm) / (h * h)
                else:
                    pp = self.gauge(x, y + h * (eye[i] + eye[j]))
                    pm = self.gauge(x, y + h * (eye[i] - eye[j]))
                    mp = self.gauge(x, y - h * (eye[i] - eye[j]))
                    mm = self.gauge(x, y - h * (eye[i] + eye[j]))
                    H[i, j] = H[j, i] = (pp - pm - mp + mm) / (4.0 * h * h)
        return H


class Superellipse(SmoothBody):
    """Axis-aligned superellipse {sum (w_i / r_i)^m < 1}, m even, m >= 2."""

    def __init__(self, radii: Sequence[float], power: int = 4, **kwargs):
        radii = np.asarray(radii, dtype=float)
        if radii.ndim != 1 or np.any(radii <= 0):
            raise SpecError("superellipse radii must be positive")
        power = int(power)
        if power < 2 or power % 2 != 0:
            raise SpecError("superellipse power must be an even integer >= 2")
        self.radii = radii
        self.power = power

        def oracle(w):
            s = w / radii
            value = float(np.sum(s ** power) - 1.0)
            grad = power * s ** (power - 1) / radii
            hess = np.diag(power * (power - 1) * s ** (power - 2) / radii ** 2)
            return value, grad, hess

        # |w_i| < r_i for members, so the box diagonal bounds the body
        super().__init__(oracle, radii.size,
                         bounding_radius=float(np.linalg.norm(radii)) * 1.0001,
                         check_convexity=False, **kwargs)

    def support(self, a) -> float:
        # Hoelder duality: the dual of the weighted m-norm ball
        a = _vector(a, self.dim)
        m = self.power
        q = m / (m - 1)
        return float(np.sum(np.abs(a * self.radii) ** q) ** (1.0 / q))

    def inradius(self) -> float:
        return float(np.min(self.radii))


class Gauge:
    """Origin-centered Minkowski functional of a body containing 0.

    Positively homogeneous and convex, but not assumed symmetric:
    gauge(-y) may differ from gauge(y).
    """

    def __init__(self, body: ConvexBody):
        self.body = body
        self._origin = np.zeros(body.dim)
        if not body.contains(self._origin):
            raise SpecError("gauge requires a body containing the origin")

    @property
    def dim(self) -> int:
        return self.body.dim

    def __call__(self, y) -> float:
        return self.body.gauge(self._origin, y)

    def hessian(self, y) -> np.ndarray:
        return self.body.gauge_hessian(self._origin, y)


def body_from_spec(spec: dict) -> ConvexBody:
    """Build a body from its JSON specification object."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise SpecError("body spec must be an object with a 'type' field")
    kind = spec["type"]
    try:
        if kind == "polytope":
            halfspaces = spec["halfspaces"]
            A = [hs["a"] for hs in halfspaces]
            b = [hs["b"] for hs in halfspaces]
            return Polytope(A, b)
        if kind == "ellipsoid":
            return Ellipsoid(spec["Q"])
        if kind == "smooth":
            if spec.get("kind") != "superellipse":
                raise SpecError(f"unknown smooth body kind: {spec.get('kind')!r}")
            params = spec.get("params", {})
            return Superellipse(params["radii"], params.get("power", 4))
    except (KeyError, TypeError, IndexError) as exc:
        raise SpecError(f"malformed body spec: {exc}") from exc
    raise SpecError(f"unknown body type: {kind!r}")


def interval(lo: float, hi: float) -> Polytope:
    """The 1-D body (lo, hi) as a polytope."""
    if not lo < hi:
        raise SpecError("interval requires lo < hi")
    return Polytope([[1.0], [-1.0]], [hi, -lo])
