"""Derivative-free local search: Powell's method and model trust regions.

These solvers are sequential by nature; they are driven through a probe
generator so they fit the ask/tell contract.  Surplus parallel asks (more
outstanding asks than the generator has pending probes) are served as
Gaussian probes around the best known point, and their tells only feed the
archive.

The trust-region variants fill the classic derivative-free slots: a linear
model stepping to the trust boundary along steepest model descent, and a
quadratic model stepping to the model minimizer clipped to the trust
region.  Both shrink the radius on failure; in noisy mode every model point
is resampled three times and the mean is used.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ..core import Candidate, Optimizer, RunContext
from ..errors import ConfigurationError
from .metamodel import fit_quadratic, quadratic_feature_count

logger = logging.getLogger(__name__)

RHO_FLOOR = 1e-12
_GOLDEN = 0.5 * (math.sqrt(5.0) - 1.0)


def linear_descent_step(points, losses, origin, rho: float) -> np.ndarray | None:
    """Step from ``origin`` to the trust boundary along the fitted -gradient."""
    pts = np.asarray(points, dtype=float)
    losses = np.asarray(losses, dtype=float)
    n, d = pts.shape
    if n < d + 1:
        return None
    design = np.hstack([np.ones((n, 1)), pts])
    coeffs, _res, rank, _sv = np.linalg.lstsq(design, losses, rcond=None)
    if rank < d + 1:
        return None
    grad = coeffs[1:]
    norm = float(np.linalg.norm(grad))
    if not np.isfinite(norm) or norm < 1e-300:
        return None
    return np.asarray(origin, dtype=float) - rho * grad / norm


def quadratic_model_step(points, losses, origin, rho: float) -> np.ndarray | None:
    """Model-minimizer step clipped to the trust ball around ``origin``.

    Falls back to a model-gradient step when the quadratic part is not
    positive-definite; returns None on a singular fit.
    """
    origin = np.asarray(origin, dtype=float)
    fit = fit_quadratic(points, losses)
    if fit is None:
        return None
    quad, b, _c, mean, scale = fit
    u0 = (origin - mean) / scale
    eigvals = np.linalg.eigvalsh(quad)
    if eigvals[0] > 1e-12 * max(1.0, abs(eigvals[-1])):
        u_star = np.linalg.solve(quad, -0.5 * b)
        x_star = mean + scale * u_star
        offset = x_star - origin
        dist = float(np.linalg.norm(offset))
        if dist > rho:
            x_star = origin + offset * (rho / dist)
        return x_star
    grad = b + 2.0 * quad @ u0  # model gradient at the origin (centered coords)
    norm = float(np.linalg.norm(grad))
    if not np.isfinite(norm) or norm < 1e-300:
        return None
    return origin - rho * (grad / norm)


class _ProbeDrivenSolver(Optimizer):
    """Ask/tell adapter around a sequential probe generator."""

    def __init__(self, context: RunContext, seed: int = 0, init_point=None):
        super().__init__(context, seed=seed, init_point=init_point)
        self._view = self.domain.scalar_view
        self._z0 = (
            self._view.encode(self.init_point)
            if self.init_point is not None
            else np.zeros(self._view.dim)
        )
        self._best_z = self._z0.copy()
        self._gen = None
        self._awaiting: int | None = None
        self._last_loss: float | None = None
        self._exhausted = False
        self._fallback_scale = 1.0

    def _probes(self):
        raise NotImplementedError

    def _ask(self) -> Candidate:
        if self._gen is None:
            self._gen = self._probes()
        if not self._exhausted and self._awaiting is None:
            try:
                z = self._gen.send(self._last_loss)
            except StopIteration:
                self._exhausted = True
            else:
                cand = self._new_candidate(self._view.decode(z))
                self._awaiting = cand.id
                return cand
        z = self._best_z + self._fallback_scale * self.rng.standard_normal(self._view.dim)
        return self._new_candidate(self._view.decode(z))

    def _tell(self, candidate: Candidate, loss: float) -> None:
        if loss <= self.incumbent_loss:
            self._best_z = self._view.encode(candidate.point)
        if candidate.id == self._awaiting:
            self._awaiting = None
            self._last_loss = loss

    # shared by subclasses: mean over three resamples in noisy mode
    def _measure(self, z):
        if not self.noisy:
            return (yield z)
        total = 0.0
        for _ in range(3):
            total += yield z
        return total / 3.0


class Powell(_ProbeDrivenSolver):
    """Powell's conjugate-direction method with parabolic line searches.

    Each sweep line-searches every direction in turn, then applies the
    classic direction-replacement test on the extrapolated point, replacing
    the direction of largest decrease so the set stays full-rank.
    """

    def __init__(self, context: RunContext, seed: int = 0, init_point=None):
        super().__init__(context, seed=seed, init_point=init_point)
        self.directions = np.eye(self._view.dim)

    def _probes(self):
        d = self._view.dim
        x = self._z0.copy()
        fx = yield from self._measure(x)
        scale = 1.0
        while True:
            x_start = x.copy()
            f_start = fx
            drops = np.zeros(d)
            for i in range(d):
                x, fx, drops[i] = yield from self._line_search(x, fx, self.directions[i], scale)
            ibig = int(np.argmax(drops))
            delta = drops[ibig]
            f_extra = yield from self._measure(2.0 * x - x_start)
            if f_extra < f_start:
                t = (
                    2.0 * (f_start - 2.0 * fx + f_extra) * (f_start - fx - delta) ** 2
                    - delta * (f_start - f_extra) ** 2
                )
                if t < 0.0:
                    new_dir = x - x_start
                    norm = float(np.linalg.norm(new_dir))
                    if norm > 0.0:
                        new_dir = new_dir / norm
                        x, fx, _ = yield from self._line_search(x, fx, new_dir, scale)
                        self.directions[ibig] = new_dir
            moved = float(np.linalg.norm(x - x_start))
            scale = min(max(moved, 1e-12), 1e3)
            self._fallback_scale = scale

    def _line_search(self, x, fx, direction, scale):
        bracket = yield from self._bracket(x, fx, direction, scale)
        a, b, c, fa, fb, fc = bracket
        b, fb = yield from self._refine(x, direction, a, b, c, fa, fb, fc)
        if fb >= fx:
            return x, fx, 0.0
        return x + b * direction, fb, fx - fb

    def _bracket(self, x, fx, u, scale):
        h = scale
        f_plus = yield from self._measure(x + h * u)
        if f_plus >= fx:
            f_minus = yield from self._measure(x - h * u)
            if f_minus >= fx:
                return -h, 0.0, h, f_minus, fx, f_plus
            sign, f1 = -1.0, f_minus
        else:
            sign, f1 = 1.0, f_plus
        a0, f0 = 0.0, fx
        a1 = sign * h
        step = sign * h
        for _ in range(60):
            step *= 2.0
            a2 = a1 + step
            f2 = yield from self._measure(x + a2 * u)
            if f2 >= f1:
                lo, mid, hi = (a0, a1, a2) if sign > 0 else (a2, a1, a0)
                flo, fmid, fhi = (f0, f1, f2) if sign > 0 else (f2, f1, f0)
                return lo, mid, hi, flo, fmid, fhi
            a0, f0, a1, f1 = a1, f1, a2, f2
        # runaway descent: treat the latest three points as the bracket
        lo, mid, hi = (a0, a1, a1 + step) if sign > 0 else (a1 + step, a1, a0)
        return lo, mid, hi, f0, f1, f2

    def _refine(self, x, u, a, b, c, fa, fb, fc, max_iter=18):
        for _ in range(max_iter):
            tol = 1e-11 * (abs(b) + 1e-3) + 1e-14
            if (c - a) < tol:
                break
            trial = _parabolic_vertex(a, b, c, fa, fb, fc)
            if trial is None or not (a < trial < c) or abs(trial - b) < 0.1 * tol:
                # golden-section step into the larger side
                trial = b + (1.0 - _GOLDEN) * ((c - b) if (c - b) > (b - a) else (a - b))
            ft = yield from self._measure(x + trial * u)
            if ft < fb:
                if trial < b:
                    c, fc = b, fb
                else:
                    a, fa = b, fb
                b, fb = trial, ft
            else:
                if trial < b:
                    a, fa = trial, ft
                else:
                    c, fc = trial, ft
        return b, fb


def _parabolic_vertex(a, b, c, fa, fb, fc) -> float | None:
    r = (b - a) * (fb - fc)
    q = (b - c) * (fb - fa)
    denom = 2.0 * (r - q)
    if denom == 0.0 or not math.isfinite(denom):
        return None
    vertex = b - ((b - a) * r - (b - c) * q) / denom
    return vertex if math.isfinite(vertex) else None


class TrustRegion(_ProbeDrivenSolver):
    """Linear or quadratic model trust region ("cobyla" / "sqp" slots)."""

    def __init__(
        self,
        context: RunContext,
        seed: int = 0,
        init_point=None,
        quadratic: bool = False,
        initial_radius: float = 1.0,
    ):
        super().__init__(context, seed=seed, init_point=init_point)
        if initial_radius <= 0:
            raise ConfigurationError("trust radius must be positive")
        self.quadratic = quadratic
        self.rho = initial_radius

    def _model_points(self) -> int:
        d = self._view.dim
        return quadratic_feature_count(d) if self.quadratic else d + 1

    def _probes(self):
        d = self._view.dim
        x = self._z0.copy()
        fx = yield from self._measure(x)
        best_x, best_f = x.copy(), fx
        points: list[np.ndarray] = [x.copy()]
        values: list[float] = [fx]
        axis = 0
        while True:
            need = self._model_points()
            while len(points) < need:
                if axis < d:
                    z = best_x + self.rho * _unit(d, axis)
                    axis += 1
                else:
                    z = best_x + self.rho * self._random_direction(d)
                f = yield from self._measure(z)
                points.append(np.asarray(z))
                values.append(f)
                if f < best_f:
                    best_x, best_f = np.asarray(z), f
            recent_p = np.asarray(points[-need:])
            recent_v = np.asarray(values[-need:])
            if self.quadratic:
                proposal = quadratic_model_step(recent_p, recent_v, best_x, self.rho)
            else:
                proposal = linear_descent_step(recent_p, recent_v, best_x, self.rho)
            if proposal is None:
                logger.debug("degenerate model fit; random probe at radius %.3g", self.rho)
                proposal = best_x + self.rho * self._random_direction(d)
            f = yield from self._measure(proposal)
            points.append(np.asarray(proposal, dtype=float))
            values.append(f)
            if f < best_f:
                best_x, best_f = points[-1], f
            else:
                self.rho *= 0.5
                if self.rho < RHO_FLOOR:
                    logger.debug("trust radius clamped at %.1e", RHO_FLOOR)
                    self.rho = RHO_FLOOR
            self._fallback_scale = self.rho

    def _random_direction(self, d: int) -> np.ndarray:
        g = self.rng.standard_normal(d)
        norm = float(np.linalg.norm(g))
        return g / norm if norm > 0 else _unit(d, 0)


def _unit(d: int, axis: int) -> np.ndarray:
    e = np.zeros(d)
    e[axis] = 1.0
    return e
