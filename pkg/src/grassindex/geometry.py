"""Convex bodies, subspace frames, planar shadows and inertia coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial import ConvexHull

FUNCTIONALS = ("area", "perimeter", "circumradius")


# -- bodies and frames ------------------------------------------------------


@dataclass(frozen=True)
class ConvexBody:
    """Convex hull of finitely many points in R^dim."""

    dimension: int
    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != self.dimension:
            raise ValueError(f"vertices must have shape (m, {self.dimension})")
        if not np.isfinite(v).all():
            raise ValueError("vertex coordinates must be finite")
        if v.shape[0] < self.dimension + 1:
            raise ValueError(f"need at least {self.dimension + 1} vertices")
        if np.linalg.matrix_rank(v[1:] - v[0], tol=1e-9) < self.dimension:
            raise ValueError("vertices do not affinely span the ambient space")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_json(cls, data: dict) -> "ConvexBody":
        return cls(int(data["dimension"]), np.asarray(data["vertices"], dtype=float))

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "vertices": self.vertices.tolist()}

    def translated(self, shift) -> "ConvexBody":
        return ConvexBody(self.dimension, self.vertices + np.asarray(shift, dtype=float))


def cube(dim: int = 4) -> ConvexBody:
    corners = [[(i >> j) & 1 for j in range(dim)] for i in range(2**dim)]
    return ConvexBody(dim, np.array(corners, dtype=float))


def cross_polytope(dim: int = 4) -> ConvexBody:
    eye = np.eye(dim)
    return ConvexBody(dim, np.vstack([eye, -eye]))


@dataclass(frozen=True)
class GrassmannFrame:
    """Orthonormal basis (as columns) of an n-dimensional subspace."""

    columns: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.columns, dtype=float)
        if f.ndim != 2 or f.shape[1] > f.shape[0] or f.shape[1] < 1:
            raise ValueError("frame must be a tall (dim, n) matrix")
        if not np.isfinite(f).all():
            raise ValueError("frame has non-finite entries")
        err = np.abs(f.T @ f - np.eye(f.shape[1])).max()
        if err > 1e-12:
            raise ValueError(f"frame columns are not orthonormal (error {err:.2e})")
        f.setflags(write=False)
        object.__setattr__(self, "columns", f)

    @property
    def dim(self) -> int:
        return self.columns.shape[0]

    @property
    def n(self) -> int:
        return self.columns.shape[1]

    @classmethod
    def standard(cls, dim: int, n: int) -> "GrassmannFrame":
        return cls(np.eye(dim)[:, :n])

    @classmethod
    def orthonormalize(cls, m) -> "GrassmannFrame":
        """Frame for the column span of ``m`` via modified Gram-Schmidt."""
        return cls(gram_schmidt(m))


def gram_schmidt(m) -> np.ndarray:
    q = np.array(m, dtype=float, copy=True)
    for j in range(q.shape[1]):
        # two passes keep the columns orthonormal to machine precision
        for _ in range(2):
            for i in range(j):
                q[:, j] -= (q[:, i] @ q[:, j]) * q[:, i]
        norm = np.linalg.norm(q[:, j])
        if norm < 1e-14:
            raise ValueError("columns are linearly dependent")
        q[:, j] /= norm
    return q


def complement_frame(f: GrassmannFrame) -> GrassmannFrame:
    """Orthonormal frame of the orthogonal complement."""
    q, _ = np.linalg.qr(f.columns, mode="complete")
    return GrassmannFrame(gram_schmidt(q[:, f.n :]))


@dataclass(frozen=True)
class Projector:
    matrix: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("projector must be square")
        tr = float(np.trace(a))
        n = round(tr)
        if (
            np.abs(a - a.T).max() > 1e-10
            or np.abs(a @ a - a).max() > 1e-10
            or abs(tr - n) > 1e-10
        ):
            raise ValueError("matrix is not an orthogonal projector")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "n", n)

    def complement(self) -> "Projector":
        return Projector(np.eye(self.matrix.shape[0]) - self.matrix)


def projector_from_frame(f: GrassmannFrame) -> Projector:
    return Projector(f.columns @ f.columns.T)


def k_map(a: Projector) -> np.ndarray:
    """First row of the projector shifted by ``-1/2`` in the diagonal slot.

    Never zero: otherwise 1/2 would be an eigenvalue of an idempotent.
    """
    v = np.array(a.matrix[0], dtype=float)
    v[0] -= 0.5
    return v


# -- planar polygon primitives ------------------------------------------------


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points) -> np.ndarray:
    """Counter-clockwise hull vertices by Andrew's monotone chain (collinear points dropped)."""
    pts = sorted(map(tuple, np.asarray(points, dtype=float)))
    if len(pts) <= 1:
        return np.array(pts, dtype=float).reshape(-1, 2)
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if not hull:
        hull = [pts[0]]
    return np.array(hull, dtype=float)


def polygon_area(poly) -> float:
    """Shoelace area; zero for fewer than three vertices."""
    p = np.asarray(poly, dtype=float)
    if len(p) < 3:
        return 0.0
    x, y = p[:, 0], p[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def polygon_perimeter(poly) -> float:
    """Closed boundary length; a segment counts twice, as its degenerate limit."""
    p = np.asarray(poly, dtype=float)
    if len(p) < 2:
        return 0.0
    return float(np.linalg.norm(p - np.roll(p, -1, axis=0), axis=1).sum())


def _circle_two(a, b):
    c = (a + b) / 2
    return c, float(np.linalg.norm(a - c))


def _circle_three(a, b, c):
    bx, by = b - a
    cx, cy = c - a
    d = 2 * (bx * cy - by * cx)
    if abs(d) < 1e-14 * max(1.0, bx * bx + by * by + cx * cx + cy * cy):
        # collinear: the widest pair decides
        pairs = [(a, b), (a, c), (b, c)]
        return max((_circle_two(p, q) for p, q in pairs), key=lambda t: t[1])
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    center = a + np.array([ux, uy])
    return center, float(math.hypot(ux, uy))


def min_enclosing_circle(points, seed: int = 0) -> tuple[np.ndarray, float]:
    """Smallest enclosing circle by Welzl's randomized incremental method.

    The shuffle uses a fixed seed so results are reproducible.
    """
    pts = np.asarray(points, dtype=float)
    if len(pts) == 0:
        raise ValueError("no points")
    pts = pts[np.random.default_rng(seed).permutation(len(pts))]
    scale = max(1.0, float(np.abs(pts).max()))
    eps = 1e-12 * scale

    def inside(p, c, r):
        return np.linalg.norm(p - c) <= r + eps

    c, r = pts[0].copy(), 0.0
    for i in range(1, len(pts)):
        if inside(pts[i], c, r):
            continue
        c, r = pts[i].copy(), 0.0
        for j in range(i):
            if inside(pts[j], c, r):
                continue
            c, r = _circle_two(pts[i], pts[j])
            for k in range(j):
                if not inside(pts[k], c, r):
                    c, r = _circle_three(pts[i], pts[j], pts[k])
    return c, r


def planar_functionals(points) -> dict[str, float]:
    """Area, perimeter and minimal enclosing circle radius of the hull of planar points."""
    hull = convex_hull_2d(points)
    _, radius = min_enclosing_circle(hull)
    return {"area": polygon_area(hull), "perimeter": polygon_perimeter(hull), "circumradius": radius}


# -- shadows and sections ---------------------------------------------------


def _check_planar(c: ConvexBody, f: GrassmannFrame):
    if c.dimension != 4 or f.dim != 4 or f.n != 2:
        raise ValueError("shadows are implemented for 2-planes in R^4 only")


def shadow_functionals(c: ConvexBody, f: GrassmannFrame) -> tuple[float, float, float]:
    """(area, perimeter, circumradius) of the orthogonal projection onto span(f)."""
    _check_planar(c, f)
    vals = planar_functionals(c.vertices @ f.columns)
    return vals["area"], vals["perimeter"], vals["circumradius"]


def _select(selection: Sequence[str]) -> list[str]:
    sel = list(selection)
    if not sel:
        raise ValueError("select at least one functional")
    bad = [s for s in sel if s not in FUNCTIONALS]
    if bad:
        raise ValueError(f"unknown functionals {bad}; choose from {list(FUNCTIONALS)}")
    return sel


def functional_vector(c: ConvexBody, f: GrassmannFrame, selection: Sequence[str] = FUNCTIONALS) -> np.ndarray:
    """alpha_i(shadow on V) - alpha_i(shadow on V-perp) for each selected functional."""
    sel = _select(selection)
    here = dict(zip(FUNCTIONALS, shadow_functionals(c, f)))
    there = dict(zip(FUNCTIONALS, shadow_functionals(c, complement_frame(f))))
    return np.array([here[s] - there[s] for s in sel])


@dataclass(frozen=True)
class HalfSpaces:
    """``normals @ x <= offsets`` with every offset positive (origin strictly inside)."""

    normals: np.ndarray
    offsets: np.ndarray


def halfspace_form(c: ConvexBody, margin: float = 1e-9) -> HalfSpaces:
    """Facet inequalities of the body; raises if the origin is not strictly interior."""
    hull = ConvexHull(c.vertices)
    normals = hull.equations[:, :-1]
    offsets = -hull.equations[:, -1]
    if offsets.min() <= margin:
        raise ValueError(f"origin is not strictly inside the body (slack {offsets.min():.3e})")
    return HalfSpaces(normals, offsets)


def section_polygon(h: HalfSpaces, f: GrassmannFrame) -> np.ndarray:
    """Vertices of the central section through span(f), in frame coordinates.

    The section ``{y : (F^T a_j) . y <= b_j}`` is the polar of the hull of the
    points ``F^T a_j / b_j``; each hull edge gives one section vertex.
    """
    dual = (h.normals @ f.columns) / h.offsets[:, None]
    ring = convex_hull_2d(dual)
    if len(ring) < 3:
        raise ValueError("section is unbounded")
    verts = []
    for i in range(len(ring)):
        m = np.vstack([ring[i], ring[(i + 1) % len(ring)]])
        verts.append(np.linalg.solve(m, np.ones(2)))
    return np.array(verts)


def section_functionals(h: HalfSpaces, f: GrassmannFrame) -> tuple[float, float, float]:
    if f.dim != 4 or f.n != 2 or h.normals.shape[1] != 4:
        raise ValueError("sections are implemented for 2-planes in R^4 only")
    vals = planar_functionals(section_polygon(h, f))
    return vals["area"], vals["perimeter"], vals["circumradius"]


def section_vector(h: HalfSpaces, f: GrassmannFrame, selection: Sequence[str] = FUNCTIONALS) -> np.ndarray:
    sel = _select(selection)
    here = dict(zip(FUNCTIONALS, section_functionals(h, f)))
    there = dict(zip(FUNCTIONALS, section_functionals(h, complement_frame(f))))
    return np.array([here[s] - there[s] for s in sel])


# -- inertia ------------------------------------------------------------------


def inertia_tensor(points, f: GrassmannFrame) -> np.ndarray:
    """``I_P = sum_x (P x)(P x)^T`` for the projector ``P`` onto span(f)."""
    x = np.asarray(points, dtype=float)
    if x.ndim != 2 or x.shape[0] == 0 or x.shape[1] != f.dim:
        raise ValueError(f"points must be a nonempty (m, {f.dim}) array")
    px = x @ projector_from_frame(f).matrix
    return px.T @ px


def char_poly_coeffs(m: np.ndarray) -> np.ndarray:
    """Coefficients of ``det(lambda I - M)``, leading first, for symmetric ``M``."""
    eig = np.linalg.eigvalsh(m)
    coeffs = np.zeros(len(eig) + 1)
    coeffs[0] = 1.0
    for lam in eig:
        coeffs[1:] = coeffs[1:] - lam * coeffs[:-1]
    return coeffs


def inertia_char_coeffs(points, f: GrassmannFrame) -> np.ndarray:
    """Coefficients of ``lambda^(2n-1) .. lambda^n`` in the characteristic polynomial of ``I_P``."""
    coeffs = char_poly_coeffs(inertia_tensor(points, f))
    return coeffs[1 : f.n + 1]


def inertia_vector(points, f: GrassmannFrame) -> np.ndarray:
    return inertia_char_coeffs(points, f) - inertia_char_coeffs(points, complement_frame(f))
