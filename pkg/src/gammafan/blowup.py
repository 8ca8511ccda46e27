"""Invariant monomial ideals on an affine chart and the subdivisions they induce.

The normalized blow-up along a monomial ideal is modelled by the subdivision
of the chart into linearity domains of its order function
``(w, t) -> min_k <u_k, w> + gamma_k t``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence

from .cones import GammaCone
from .errors import DomainError, GammaFanError
from .fans import GammaFan
from .polyhedra import dot
from .semigroups import MonomialDatum, SemigroupGens, in_weight_algebra


@dataclass(frozen=True)
class InvariantIdeal:
    chart: GammaCone
    generators: SemigroupGens

    def __post_init__(self):
        gens = self.generators
        if not isinstance(gens, SemigroupGens):
            gens = SemigroupGens(tuple(gens), self.chart.n, self.chart.gamma)
            object.__setattr__(self, "generators", gens)
        if not gens.elements:
            raise DomainError("an ideal needs at least one generator")
        if gens.n != self.chart.n:
            raise DomainError("generator rank does not match the chart")
        for e in gens:
            if not in_weight_algebra(self.chart, e):
                raise DomainError(f"generator ({e}) is not a function on the chart")


def order_function(ideal: InvariantIdeal) -> list[tuple]:
    """The affine forms ``(u_k, gamma_k)`` whose minimum is the order function."""
    return [e.vector for e in ideal.generators]


class RefinementError(GammaFanError):
    """A tower level failed to refine the previous one (a bug, never expected)."""


def _subdivide(cone: GammaCone, forms: Sequence[tuple]) -> list[tuple[GammaCone, frozenset]]:
    """Linearity domains of ``min(forms)`` on ``cone`` of full dimension in it."""
    n = cone.n
    dim = cone.dim
    out = {}
    for k, fk in enumerate(forms):
        rows = []
        for j, fj in enumerate(forms):
            if j == k:
                continue
            diff = tuple(a - b for a, b in zip(fj, fk))
            if any(diff):
                rows.append((diff[:n], diff[n]))
        cell = GammaCone(n, cone.inequalities + tuple(rows), cone.gamma, cone.t_equality)
        if cell.dim != dim:
            continue
        if cell.key in out:
            continue
        active = frozenset(
            j for j, fj in enumerate(forms)
            if all(dot(fj, r) == dot(fk, r) for r in cell.rays)
        )
        out[cell.key] = (cell.irredundant(), active)
    return [out[k] for k in sorted(out)]


def _tag(active: frozenset) -> str:
    return "active " + ",".join(str(i) for i in sorted(active))


def blowup_subdivision(ideal: InvariantIdeal) -> GammaFan:
    """Subdivision of the chart into linearity domains of the order function."""
    cells = _subdivide(ideal.chart, order_function(ideal))
    return GammaFan.from_cones([c for c, _ in cells], ideal.chart.gamma, [_tag(a) for _, a in cells])


def _linear_on(forms: Sequence[tuple], cone: GammaCone) -> bool:
    rays = cone.rays
    return any(
        all(dot(fj, r) >= dot(fk, r) for fj in forms for r in rays) for fk in forms
    )


def is_U_admissible(ideal: InvariantIdeal, subfan: Iterable[GammaCone]) -> bool:
    """Whether the order function is linear on every cone of the subfan.

    Each cone must be a face of the chart.
    """
    forms = order_function(ideal)
    cones = subfan.cones if isinstance(subfan, GammaFan) else list(subfan)
    for tau in cones:
        if not tau.is_face_of(ideal.chart):
            raise DomainError(f"{tau!r} is not a face of the chart")
    return all(_linear_on(forms, tau) for tau in cones)


def product_ideal(first: InvariantIdeal, second: InvariantIdeal) -> InvariantIdeal:
    if first.chart != second.chart:
        raise DomainError("ideals live on different charts")
    gens = [
        MonomialDatum(tuple(a + b for a, b in zip(x.u, y.u)), x.gamma + y.gamma)
        for x, y in product(first.generators, second.generators)
    ]
    return InvariantIdeal(first.chart, SemigroupGens(tuple(gens), first.chart.n, first.chart.gamma))


def common_refinement(first: GammaFan, second: GammaFan) -> GammaFan:
    """Pairwise intersections of maximal cones, keeping those not faces of others."""
    if first.n != second.n:
        raise DomainError("fans live in different ambient spaces")
    cells = {}
    for a, b in product(first.cones, second.cones):
        c = a.intersect(b)
        if c.dim == 0:
            continue
        cells.setdefault(c.key, c.irredundant())
    if not cells:
        raise DomainError("the fans have no common cone of positive dimension")
    return GammaFan.from_cones([cells[k] for k in sorted(cells)], first.gamma)


def refines(fine: GammaFan, coarse: GammaFan) -> bool:
    """Every cone of ``fine`` lies in a cone of ``coarse``."""
    return all(any(c.contains_cone(f) for c in coarse.cones) for f in fine.cones)


@dataclass(frozen=True)
class Tower:
    base: GammaFan
    levels: tuple  # of (InvariantIdeal, GammaFan)

    @property
    def top(self) -> GammaFan:
        return self.levels[-1][1] if self.levels else self.base


def build_tower(chart: GammaCone, ideals: Sequence[InvariantIdeal], depth: int) -> Tower:
    """Successive subdivisions by the first ``depth`` ideals, each restricted to every cone."""
    base = GammaFan.from_cones([chart], chart.gamma)
    current = base
    levels = []
    for ideal in list(ideals)[:depth]:
        if ideal.chart != chart:
            raise DomainError("every ideal of a tower must live on the base chart")
        forms = order_function(ideal)
        cells = []
        for cone in current.cones:
            cells.extend(c for c, _ in _subdivide(cone, forms))
        nxt = GammaFan.from_cones(cells, chart.gamma)
        if not refines(nxt, current):
            raise RefinementError("tower level does not refine the previous level")
        levels.append((ideal, nxt))
        current = nxt
    return Tower(base, tuple(levels))
