"""Search for subspaces V with f(V) = 0 for equal shadows, sections or inertia spectra.

Each start runs a compass search in tangent coordinates of the Grassmannian
(``V = span(F + F_perp X)``, retracted by re-orthonormalization), then polishes
with Gauss-Newton steps on a finite-difference Jacobian.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .geometry import (
    FUNCTIONALS,
    ConvexBody,
    GrassmannFrame,
    complement_frame,
    functional_vector,
    gram_schmidt,
    halfspace_form,
    inertia_char_coeffs,
    inertia_vector,
    section_functionals,
    section_vector,
    shadow_functionals,
)
from .index import two_adic

log = logging.getLogger(__name__)

Objective = Callable[[GrassmannFrame], np.ndarray]


class GuaranteeWarning(UserWarning):
    """The existence result does not cover this configuration."""


@dataclass(frozen=True)
class SolverConfig:
    starts: int = 64
    tol: float = 1e-8
    max_iters: int = 5000
    seed: int = 20240611
    initial_step: float = 0.5
    shrink: float = 0.5
    min_step: float = 1e-7
    handoff_step: float = 1e-3

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")


@dataclass
class SolverResult:
    frame: GrassmannFrame
    residual: float
    evaluations: int
    converged: bool
    starts_used: int
    names: list[str] = field(default_factory=list)
    values_V: dict = field(default_factory=dict)
    values_Vperp: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "frame": self.frame.columns.T.tolist(),
            "residual": self.residual,
            "values_V": self.values_V,
            "values_Vperp": self.values_Vperp,
            "converged": self.converged,
            "starts_used": self.starts_used,
        }


def random_frame(dim: int, n: int, rng: np.random.Generator) -> GrassmannFrame:
    """Gram-Schmidt of a Gaussian matrix: uniform on the Grassmannian."""
    if not 1 <= n <= dim:
        raise ValueError("need 1 <= n <= dim")
    return GrassmannFrame(gram_schmidt(rng.standard_normal((dim, n))))


# -- local search -------------------------------------------------------------


def _retract(f: np.ndarray, perp: np.ndarray, x: np.ndarray) -> GrassmannFrame:
    return GrassmannFrame(gram_schmidt(f + perp @ x.reshape(perp.shape[1], f.shape[1])))


@dataclass
class _Run:
    frame: GrassmannFrame
    values: np.ndarray
    evaluations: int

    @property
    def residual(self) -> float:
        return float(np.linalg.norm(self.values))


def _local_search(obj: Objective, start: GrassmannFrame, cfg: SolverConfig) -> _Run:
    best = _Run(start, obj(start), 1)
    n, dim = start.n, start.dim
    p = n * (dim - n)
    step = cfg.initial_step
    iters = 0
    # compass search: accept the first coordinate move that lowers |f|
    while iters < cfg.max_iters and best.residual >= cfg.tol and step > cfg.min_step:
        iters += 1
        f = best.frame.columns
        perp = complement_frame(best.frame).columns
        improved = False
        for i in range(p):
            for sign in (1.0, -1.0):
                x = np.zeros(p)
                x[i] = sign * step
                cand = _retract(f, perp, x)
                vals = obj(cand)
                best.evaluations += 1
                if np.linalg.norm(vals) < best.residual:
                    best.frame, best.values = cand, vals
                    improved = True
                    break
            if improved:
                break
        if not improved:
            step *= cfg.shrink
        if step < cfg.handoff_step:
            break
    # Gauss-Newton polish with a central-difference Jacobian
    h = 1e-7
    slow = 0
    while iters < cfg.max_iters and best.residual >= cfg.tol and slow < 5:
        before = best.residual
        iters += 1
        f = best.frame.columns
        perp = complement_frame(best.frame).columns
        jac = np.empty((len(best.values), p))
        for i in range(p):
            e = np.zeros(p)
            e[i] = h
            jac[:, i] = (obj(_retract(f, perp, e)) - obj(_retract(f, perp, -e))) / (2 * h)
        best.evaluations += 2 * p
        delta = np.linalg.lstsq(jac, -best.values, rcond=None)[0]
        scale, moved = 1.0, False
        while scale > 1e-4:
            cand = _retract(f, perp, scale * delta)
            vals = obj(cand)
            best.evaluations += 1
            if np.linalg.norm(vals) < best.residual:
                best.frame, best.values = cand, vals
                moved = True
                break
            scale /= 2
        if not moved:
            break
        # creeping progress means a kink or a non-root minimum, not a basin
        slow = slow + 1 if best.residual > 0.5 * before else 0
    return best


def _multistart(obj: Objective, dim: int, n: int, cfg: SolverConfig) -> tuple[_Run, int, int]:
    """Starts run in index order; each owns the stream seeded by (seed, index).

    Stops at the first converged start, otherwise keeps the lowest residual
    (earliest index on ties).
    """
    best: _Run | None = None
    evaluations = 0
    for i in range(cfg.starts):
        rng = np.random.default_rng([cfg.seed, i])
        try:
            run = _local_search(obj, random_frame(dim, n, rng), cfg)
        except ValueError as err:
            # a degenerate evaluation kills only this start
            log.debug("start %d failed: %s", i, err)
            continue
        evaluations += run.evaluations
        log.debug("start %d residual %.3e", i, run.residual)
        if best is None or run.residual < best.residual:
            best = run
        if best.residual < cfg.tol:
            return best, i + 1, evaluations
    if best is None:
        raise RuntimeError("every start failed to evaluate")
    return best, cfg.starts, evaluations


def _result(
    run: _Run,
    used: int,
    evaluations: int,
    cfg: SolverConfig,
    names: Sequence[str],
    recompute: Callable[[GrassmannFrame], tuple[np.ndarray, np.ndarray]],
) -> SolverResult:
    # re-evaluate from scratch rather than trusting the search's cached values
    here, there = recompute(run.frame)
    residual = float(np.linalg.norm(here - there))
    return SolverResult(
        frame=run.frame,
        residual=residual,
        evaluations=evaluations,
        converged=residual < cfg.tol,
        starts_used=used,
        names=list(names),
        values_V=dict(zip(names, map(float, here))),
        values_Vperp=dict(zip(names, map(float, there))),
    )


def _check_selection(selection: Sequence[str], n: int) -> list[str]:
    sel = list(selection)
    a, _ = two_adic(n)
    limit = 2 ** (a + 1) - 1
    if len(sel) > limit:
        warnings.warn(
            f"{len(sel)} functionals exceed the {limit} covered by the existence result; trying anyway",
            GuaranteeWarning,
            stacklevel=3,
        )
    return sel


def _pick(values: tuple, selection: Sequence[str]) -> np.ndarray:
    d = dict(zip(FUNCTIONALS, values))
    return np.array([d[s] for s in selection])


def solve_equal_shadows(c: ConvexBody, selection: Sequence[str] = FUNCTIONALS, cfg: SolverConfig | None = None) -> SolverResult:
    """A 2-plane V whose shadow and complementary shadow share the selected functionals."""
    cfg = cfg or SolverConfig()
    if c.dimension != 4:
        raise ValueError("shadow solver works in R^4 only")
    sel = _check_selection(selection, c.dimension // 2)
    functional_vector(c, GrassmannFrame.standard(4, 2), sel)  # validates names

    def obj(f):
        return functional_vector(c, f, sel)

    def recompute(f):
        return (
            _pick(shadow_functionals(c, f), sel),
            _pick(shadow_functionals(c, complement_frame(f)), sel),
        )

    run, used, evals = _multistart(obj, 4, 2, cfg)
    return _result(run, used, evals, cfg, sel, recompute)


def solve_sections(c: ConvexBody, selection: Sequence[str] = FUNCTIONALS, cfg: SolverConfig | None = None) -> SolverResult:
    """A 2-plane V whose central section and complementary section share the selected functionals."""
    cfg = cfg or SolverConfig()
    if c.dimension != 4:
        raise ValueError("section solver works in R^4 only")
    h = halfspace_form(c)
    sel = _check_selection(selection, 2)
    section_vector(h, GrassmannFrame.standard(4, 2), sel)

    def obj(f):
        return section_vector(h, f, sel)

    def recompute(f):
        fresh = halfspace_form(c)
        return (
            _pick(section_functionals(fresh, f), sel),
            _pick(section_functionals(fresh, complement_frame(f)), sel),
        )

    run, used, evals = _multistart(obj, 4, 2, cfg)
    return _result(run, used, evals, cfg, sel, recompute)


def solve_inertia_split(points, cfg: SolverConfig | None = None) -> SolverResult:
    """A 2-plane V with ``I_P`` and ``I_Q`` sharing their top characteristic coefficients."""
    cfg = cfg or SolverConfig()
    x = np.asarray(points, dtype=float)
    if x.ndim != 2 or x.shape[0] == 0 or not np.isfinite(x).all():
        raise ValueError("points must be a nonempty finite (m, dim) array")
    dim = x.shape[1]
    if dim != 4:
        raise ValueError("inertia solver works in R^4 only")
    n = dim // 2
    if n & (n - 1):
        warnings.warn("n is not a power of two", GuaranteeWarning, stacklevel=2)
    names = [f"a{j}" for j in range(2 * n - 1, n - 1, -1)]

    def obj(f):
        return inertia_vector(x, f)

    def recompute(f):
        return inertia_char_coeffs(x, f), inertia_char_coeffs(x, complement_frame(f))

    run, used, evals = _multistart(obj, dim, n, cfg)
    return _result(run, used, evals, cfg, names, recompute)
