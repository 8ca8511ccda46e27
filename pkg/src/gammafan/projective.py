"""Weighted point configurations: regular subdivisions, min-plus dual complexes and fans.

A configuration is a list of exponents ``m_0, ..., m_N`` in M with heights
``a(i)`` in Gamma or ``math.inf`` (an index whose coordinate vanishes).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .cones import GammaCone
from .errors import DomainError, NonPointedCellError, NotAFaceError
from .fans import GammaFan
from .polyhedra import HCone, HPolyhedron, dot
from .scalar import Number, format_scalar, to_field
from .valuegroup import ValueGroup, gamma_contains


@dataclass(frozen=True)
class WeightedConfig:
    A: tuple
    a: tuple
    gamma: ValueGroup = field(default_factory=ValueGroup.rationals)

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in m) for m in self.A)
        if not A:
            raise DomainError("empty configuration")
        if len({len(m) for m in A}) != 1:
            raise DomainError("exponents of mixed length")
        if len(self.a) != len(A):
            raise DomainError("one height per exponent expected")
        a = tuple(math.inf if h == math.inf else to_field(h) for h in self.a)
        if all(h == math.inf for h in a):
            raise DomainError("at least one height must be finite")
        for h in a:
            if h != math.inf and not gamma_contains(self.gamma, h):
                raise DomainError(f"height {format_scalar(h)} is not in Gamma")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def finite(self) -> tuple[int, ...]:
        """Indices with finite height (the support A(y))."""
        return tuple(i for i, h in enumerate(self.a) if h != math.inf)

    @property
    def shadowed(self) -> tuple[int, ...]:
        """Finite indices repeating an exponent with a strictly smaller height."""
        out = []
        for i in self.finite:
            if any(self.A[j] == self.A[i] and self.a[j] < self.a[i] for j in self.finite):
                out.append(i)
        return tuple(out)

    def value(self, i: int, w: Sequence):
        return self.a[i] + dot(self.A[i], w)

    def g(self, w: Sequence):
        """``min_i a(i) + <m_i, w>`` over finite heights."""
        return min(self.value(i, w) for i in self.finite)

    def active(self, w: Sequence) -> frozenset:
        gw = self.g(w)
        return frozenset(i for i in self.finite if self.value(i, w) == gw)

    @cached_property
    def lifted(self) -> HPolyhedron:
        """``conv{(m_i, a(i))} + R_+ e_last``."""
        pts = [self.A[i] + (self.a[i],) for i in self.finite]
        up = (0,) * self.n + (1,)
        return HPolyhedron.from_generators(pts, [up], (), self.n + 1)


def weight_polytope(cfg: WeightedConfig) -> HPolyhedron:
    return HPolyhedron.from_generators([cfg.A[i] for i in cfg.finite], (), (), cfg.n)


@dataclass(frozen=True)
class Cell:
    """A cell of the regular subdivision with the indices of the points on it."""

    indices: frozenset
    polytope: HPolyhedron
    dim: int

    @property
    def vertices(self):
        return self.polytope.vertices()


@dataclass(frozen=True)
class Subdivision:
    config: WeightedConfig
    cells: tuple

    @property
    def maximal_cells(self) -> tuple:
        top = max(c.dim for c in self.cells)
        return tuple(c for c in self.cells if c.dim == top)

    @property
    def vertex_cells(self) -> tuple:
        return tuple(c for c in self.cells if c.dim == 0)

    def find(self, face) -> Cell:
        """The cell matching an index set, a polytope or a Cell."""
        for c in self.cells:
            if isinstance(face, Cell) and c.indices == face.indices:
                return c
            if isinstance(face, HPolyhedron) and c.polytope == face:
                return c
            if isinstance(face, (set, frozenset)) and c.indices == frozenset(face):
                return c
        raise NotAFaceError(f"{face!r} is not a face of the regular subdivision")


def _on_face(cfg: WeightedConfig, face: HPolyhedron) -> frozenset:
    return frozenset(i for i in cfg.finite if face.contains(cfg.A[i] + (cfg.a[i],)))


def regular_subdivision(cfg: WeightedConfig) -> Subdivision:
    """Projections of the bounded faces of the lifted configuration (its lower faces)."""
    lifted = cfg.lifted
    cells = {}
    for f in lifted.faces(bounded_only=True):
        idx = _on_face(cfg, f)
        proj = weight_polytope_of(cfg, idx)
        cells[idx] = Cell(idx, proj, f.dim)
    ordered = sorted(cells.values(), key=lambda c: (c.dim, sorted(c.indices)))
    return Subdivision(cfg, tuple(ordered))


def weight_polytope_of(cfg: WeightedConfig, indices) -> HPolyhedron:
    return HPolyhedron.from_generators([cfg.A[i] for i in sorted(indices)], (), (), cfg.n)


@dataclass(frozen=True)
class DualCell:
    """A linearity domain of ``g`` with the indices achieving the minimum on it."""

    indices: frozenset
    body: HPolyhedron
    dim: int


@dataclass(frozen=True)
class DualComplex:
    config: WeightedConfig
    cells: tuple

    def find(self, cell) -> DualCell:
        for c in self.cells:
            if isinstance(cell, DualCell) and c.indices == cell.indices:
                return c
            if isinstance(cell, HPolyhedron) and c.body == cell:
                return c
        raise NotAFaceError(f"{cell!r} is not a cell of the dual complex")


def _dual_body(cfg: WeightedConfig, indices: frozenset) -> HPolyhedron:
    i0 = min(indices)
    mi, ai = cfg.A[i0], cfg.a[i0]
    ineqs = []
    for j in cfg.finite:
        if j == i0:
            continue
        normal = tuple(x - y for x, y in zip(cfg.A[j], mi))
        off = cfg.a[j] - ai
        if not any(normal) and off == 0:
            continue
        ineqs.append((normal, off))
        if j in indices:
            ineqs.append((tuple(-x for x in normal), -off))
    if not ineqs:
        ineqs = [((0,) * cfg.n, Fraction(0))]
    return HPolyhedron(ineqs, cfg.n)


def dual_complex(cfg: WeightedConfig) -> DualComplex:
    """One cell ``{w : the forms indexed by Q are equal and minimal}`` per face Q."""
    sub = regular_subdivision(cfg)
    cells = []
    for c in sub.cells:
        body = _dual_body(cfg, c.indices)
        cells.append(DualCell(c.indices, body, body.dim))
    cells.sort(key=lambda c: (c.dim, sorted(c.indices)))
    return DualComplex(cfg, tuple(cells))


def face_to_cone(cfg: WeightedConfig, face) -> DualCell:
    """``sigma_Q`` for a face Q of the regular subdivision."""
    cell = regular_subdivision(cfg).find(face)
    body = _dual_body(cfg, cell.indices)
    return DualCell(cell.indices, body, body.dim)


def cone_to_face(cfg: WeightedConfig, cell) -> Cell:
    """``Q_sigma``: the hull of the exponents whose forms are minimal on all of sigma."""
    body = cell.body if isinstance(cell, DualCell) else cell
    if body.is_empty:
        raise NotAFaceError("empty cell")
    idx = cfg.active(body.relint_point())
    if _dual_body(cfg, idx) != body:
        raise NotAFaceError(f"{body!r} is not a cell of the dual complex")
    return regular_subdivision(cfg).find(idx)


def generated_fan(cfg: WeightedConfig) -> GammaFan:
    """Closed cones over the maximal cells of the dual complex placed at level 1."""
    cones = []
    for c in dual_complex(cfg).cells:
        if c.dim != cfg.n:
            continue
        body = c.body
        if body.lineality:
            raise NonPointedCellError(
                f"cell of {sorted(c.indices)} contains a line; the weight polytope is not full-dimensional"
            )
        rays = [tuple(v) + (1,) for v in body.vertices()] + [tuple(r) + (0,) for r in body.rays]
        cones.append(GammaCone.from_rays(rays, cfg.gamma, n=cfg.n))
    return GammaFan.from_cones(cones, cfg.gamma, ["cell"] * len(cones))


def normalization_fan(cfg: WeightedConfig) -> GammaFan:
    """Cones ``{<m_j - m_i, w> + t (a(j) - a(i)) >= 0 for all j}``, one per vertex m_i."""
    sub = regular_subdivision(cfg)
    cones, tags = [], []
    for v in sub.vertex_cells:
        i = min(v.indices)
        rows = []
        for j in cfg.finite:
            if j == i:
                continue
            m = tuple(x - y for x, y in zip(cfg.A[j], cfg.A[i]))
            c = cfg.a[j] - cfg.a[i]
            if not any(m) and c == 0:
                continue
            rows.append((m, c))
        cone = GammaCone(cfg.n, tuple(rows), cfg.gamma)
        if cone.lineality:
            raise NonPointedCellError(
                f"cone of vertex m_{i} contains a line; the weight polytope is not full-dimensional"
            )
        cones.append(cone)
        tags.append(f"vertex {i}")
    return GammaFan.from_cones(cones, cfg.gamma, tags)


@dataclass(frozen=True)
class OrbitCensus:
    generic: tuple  # faces of Wt(y), as (dim, vertices)
    special: tuple  # cells of Wt(y, a), as (dim, indices)
    components: tuple  # maximal cells

    def report(self) -> str:
        lines = [f"generic orbits: {len(self.generic)}"]
        for dim, verts in self.generic:
            lines.append(f"  dim {dim}: {_fmt_points(verts)}")
        lines.append(f"special orbits: {len(self.special)}")
        for dim, idx in self.special:
            lines.append(f"  dim {dim}: indices {' '.join(str(i) for i in idx)}")
        lines.append(f"components: {len(self.components)}")
        for dim, idx in self.components:
            lines.append(f"  dim {dim}: indices {' '.join(str(i) for i in idx)}")
        return "\n".join(lines)


def _fmt_points(points) -> str:
    return " ".join("(" + ",".join(format_scalar(x) for x in p) + ")" for p in points)


def orbit_census(cfg: WeightedConfig) -> OrbitCensus:
    wt = weight_polytope(cfg)
    generic = sorted(
        ((f.dim, tuple(tuple(v) for v in f.vertices())) for f in wt.faces()),
        key=lambda e: (e[0], e[1]),
    )
    sub = regular_subdivision(cfg)
    special = tuple((c.dim, tuple(sorted(c.indices))) for c in sub.cells)
    comps = tuple((c.dim, tuple(sorted(c.indices))) for c in sub.maximal_cells)
    return OrbitCensus(tuple(generic), special, comps)
