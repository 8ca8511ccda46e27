"""Gamma-admissible fans: validation, completeness, refinement and completion.

A fan stores its maximal cones only.  Faces are derived on demand and sorted
canonically, so two fans are equal exactly when their canonical forms agree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .cones import GammaCone, gamma_normalize, require_admissible
from .errors import (
    DomainError,
    ExtensionFailure,
    FanValidationError,
    GammaViolationError,
)
from .polyhedra import HCone, dot, normalize, nullspace, rank, reduce_mod, rref, vneg
from .scalar import format_scalar, sign
from .valuegroup import ValueGroup


# -- canonical forms ----------------------------------------------------------

def canonical_cone(cone: GammaCone) -> GammaCone:
    """Irredundant H-rep with canonical rows, each scaled minimally inside Gamma.

    Equalities are replaced by their reduced row echelon basis and facet
    normals are reduced modulo the equalities, so equal cones get equal
    rows.  When a rescaled row would leave Gamma the inherited row is kept.
    """
    red = cone.irredundant()
    h = red.hcone
    L = len(red.inequalities)
    d = cone.n + 1
    eq = [red.inequalities[i][0] + (red.inequalities[i][1],) for i in h.equality_basis_indices if i < L]
    if red.t_equality:
        eq.append((0,) * cone.n + (1,))
    R, piv = rref(eq, d) if eq else ([], [])
    rows = set()
    try:
        for r in R:
            res = gamma_normalize(r, cone.gamma)
            if res[0] != "t":
                rows.add(res)
                rows.add((tuple(-x for x in res[0]), -res[1]))
    except GammaViolationError:
        for i in h.equality_basis_indices:
            if i < L:
                m, c = red.inequalities[i]
                rows.add((m, c))
                rows.add((tuple(-x for x in m), -c))
    for i in h.facet_indices:
        if i < L:
            m, c = red.inequalities[i]
            v = reduce_mod(tuple(m) + (c,), R, piv)
            try:
                res = gamma_normalize(v, cone.gamma)
            except GammaViolationError:
                res = (m, c)
            if res[0] != "t":  # a reduced row on t alone repeats t >= 0
                rows.add(res)
    return GammaCone(cone.n, tuple(sorted(rows, key=_row_key)), cone.gamma, red.t_equality)


def _row_key(row):
    m, c = row
    return (m, c)


def cone_sort_key(cone: GammaCone):
    return (not cone.t_equality, tuple(_row_key(r) for r in cone.inequalities))


# -- fans ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GammaFan:
    """A fan in N_R x R_+ given by its maximal cones."""

    n: int
    gamma: ValueGroup
    cones: tuple
    tags: tuple = ()

    def __post_init__(self):
        cones = tuple(self.cones)
        for c in cones:
            if c.n != self.n:
                raise DomainError(f"cone of rank {c.n} in a fan of rank {self.n}")
            require_admissible(c)
        tags = tuple(self.tags) if self.tags else ("",) * len(cones)
        if len(tags) != len(cones):
            raise DomainError("one tag per cone expected")
        object.__setattr__(self, "cones", cones)
        object.__setattr__(self, "tags", tags)

    @classmethod
    def from_cones(cls, cones: Iterable[GammaCone], gamma: Optional[ValueGroup] = None, tags: Optional[Sequence[str]] = None) -> "GammaFan":
        """Fan of the given cones; duplicates and faces of other listed cones are dropped."""
        cones = list(cones)
        if not cones:
            raise DomainError("no cones")
        tags = list(tags) if tags is not None else [""] * len(cones)
        gamma = gamma or cones[0].gamma
        keep = []
        for i, c in enumerate(cones):
            dup = any(
                (c.key == d.key and j < i) or (c.key != d.key and c.dim < d.dim and c.is_face_of(d))
                for j, d in enumerate(cones) if j != i
            )
            if not dup:
                keep.append((canonical_cone(c), tags[i]))
        keep.sort(key=lambda p: cone_sort_key(p[0]))
        return cls(cones[0].n, gamma, tuple(c for c, _ in keep), tuple(t for _, t in keep))

    def canonical(self) -> "GammaFan":
        return GammaFan.from_cones(self.cones, self.gamma, self.tags)

    @property
    def key(self):
        return (self.n, tuple(sorted(c.key for c in self.cones)))

    def __eq__(self, other):
        if not isinstance(other, GammaFan):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __len__(self):
        return len(self.cones)

    def all_cones(self) -> list[GammaCone]:
        """Face closure in a deterministic order (by dimension, then canonical H-rep)."""
        seen = {}
        for c in self.cones:
            for f in c.faces():
                if f.key not in seen:
                    seen[f.key] = canonical_cone(f)
        return sorted(seen.values(), key=lambda c: (c.dim, cone_sort_key(c)))

    def contains_point(self, x: Sequence) -> bool:
        return any(c.contains(x) for c in self.cones)

    def has_cone(self, cone: GammaCone) -> bool:
        """Whether ``cone`` is one of the cones of the fan (a face of a maximal cone)."""
        return any(cone.is_face_of(c) for c in self.cones)


@dataclass(frozen=True)
class FanViolation:
    i: int
    j: int
    reason: str


def _pair_ok(a: GammaCone, b: GammaCone) -> bool:
    inter = a.hcone.intersect(b.hcone)
    if inter.dim == 0:
        return True
    return inter.is_face_of(a.hcone) and inter.is_face_of(b.hcone)


def validate_fan(fan: GammaFan) -> tuple[bool, Optional[FanViolation]]:
    """Check the fan axiom pairwise; report the first violating pair."""
    for (i, a), (j, b) in combinations(enumerate(fan.cones), 2):
        if not _pair_ok(a, b):
            return False, FanViolation(i, j, "intersection is not a face of both cones")
    return True, None


def fan_violations(fan: GammaFan) -> list[FanViolation]:
    return [
        FanViolation(i, j, "intersection is not a face of both cones")
        for (i, a), (j, b) in combinations(enumerate(fan.cones), 2)
        if not _pair_ok(a, b)
    ]


def _require_valid(fan: GammaFan) -> None:
    ok, v = validate_fan(fan)
    if not ok:
        raise FanValidationError(f"cones {v.i} and {v.j} violate the fan axiom: {v.reason}")


def is_complete(fan: GammaFan, check: bool = True) -> bool:
    """Whether the support of the fan is the half-space t >= 0.

    Every maximal cone must be full-dimensional, each facet must lie in
    t = 0 or be shared by exactly two maximal cones, and the graph of cones
    sharing facets must be connected.
    """
    if check:
        _require_valid(fan)
    d = fan.n + 1
    if not fan.cones or any(c.dim != d for c in fan.cones):
        return False
    owners: dict = {}
    for idx, c in enumerate(fan.cones):
        h = c.hcone
        for s in h.facet_ray_sets():
            rays = [h.rays[j] for j in s]
            if all(r[-1] == 0 for r in rays):
                continue
            owners.setdefault(h.face_from_rays(s).key, []).append(idx)
    adj = {i: set() for i in range(len(fan.cones))}
    for own in owners.values():
        if len(own) != 2:
            return False
        a, b = own
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(fan.cones)


# -- hyperplane arrangements ----------------------------------------------------

def _hyperplanes(cones: Iterable[GammaCone]) -> list[tuple]:
    """Distinct hyperplanes ``<m, w> + c t = 0`` carrying facets or equalities."""
    seen, out = set(), []
    for cone in cones:
        red = cone.irredundant()
        for m, c in red.inequalities:
            v = normalize(tuple(m) + (c,))
            lead = next(x for x in v if x != 0)
            if sign(lead) < 0:
                v, m, c = vneg(v), tuple(-x for x in m), -c
            if v not in seen:
                seen.add(v)
                out.append((tuple(m), c))
    return out


def _split(cells: list[GammaCone], hyperplanes: Sequence[tuple]) -> list[GammaCone]:
    """Cut full-dimensional cells by each hyperplane, keeping full-dimensional pieces."""
    for m, c in hyperplanes:
        form = tuple(m) + (c,)
        neg = (tuple(-x for x in m), -c)
        out = []
        for cell in cells:
            h = cell.hcone
            if any(dot(form, l) != 0 for l in h.lineality):
                cut = True
            else:
                vals = [sign(dot(form, r)) for r in h.rays]
                cut = 1 in vals and -1 in vals
            if cut:
                out.append(GammaCone(cell.n, cell.inequalities + ((m, c),), cell.gamma).irredundant())
                out.append(GammaCone(cell.n, cell.inequalities + (neg,), cell.gamma).irredundant())
            else:
                out.append(cell)
        cells = out
    return cells


def refine_to_complete(fan: GammaFan) -> GammaFan:
    """Chambers of the arrangement of all facet hyperplanes of the fan, in t >= 0."""
    start = GammaCone(fan.n, (), fan.gamma)
    cells = _split([start], _hyperplanes(fan.cones))
    return GammaFan.from_cones(cells, fan.gamma, ["chamber"] * len(cells))


# -- completion -----------------------------------------------------------------

def _hull(fan: GammaFan) -> HCone:
    rays = [r for c in fan.cones for r in c.rays]
    return HCone.from_generators(rays, (), fan.n + 1)


def support_is_convex(fan: GammaFan) -> bool:
    """Whether the union of the cones equals the cone spanned by all their rays."""
    hull = _hull(fan)
    top = [c for c in fan.cones if c.dim == hull.dim]
    if any(c.dim < hull.dim for c in fan.cones):
        # a lower-dimensional maximal cone sticks out of the top-dimensional ones
        if not all(any(t.contains_cone(c) for t in top) for c in fan.cones):
            return False
    if len(top) == 1:
        return top[0].hcone == hull
    # cells of the hull cut by all facet hyperplanes; each must be covered
    eqs = [a for a in hull.irredundant().inequalities]
    base = HCone(eqs, hull.d)
    cells = [base]
    for m, c in _hyperplanes(fan.cones):
        form = tuple(m) + (c,)
        out = []
        for cell in cells:
            if any(dot(form, l) != 0 for l in cell.lineality):
                cut = True
            else:
                vals = [sign(dot(form, r)) for r in cell.rays]
                cut = 1 in vals and -1 in vals
            if cut:
                out.append(HCone(cell.inequalities + (form,), hull.d))
                out.append(HCone(cell.inequalities + (vneg(form),), hull.d))
            else:
                out.append(cell)
        cells = out
    for cell in cells:
        if cell.dim < hull.dim:
            continue
        p = cell.relint_point()
        if not any(c.contains(p) for c in top):
            return False
    return True


def _thicken(cone: GammaCone) -> GammaCone:
    """A full-dimensional admissible cone having ``cone`` as a face."""
    red = cone.irredundant()
    h = red.hcone
    if h.dim == h.d:
        return red
    L = len(red.inequalities)
    facets = [red.inequalities[i] for i in h.facet_indices if i < L]
    eq_rows = [red.inequalities[i] for i in h.implicit_equalities if i < L]
    # start the basis with t when the cone lies in t = 0, so t >= 0 stays usable
    basis = [(0,) * cone.n + (1,)] if red.in_boundary else []
    chosen = []
    for m, c in eq_rows:
        cand = basis + [tuple(m) + (c,)]
        if rank(cand, cone.n + 1) > len(basis):
            basis = cand
            chosen.append((m, c))
    return GammaCone(cone.n, tuple(facets) + tuple(chosen), cone.gamma)


def _cone_from_normals(hc: HCone, n: int, gamma: ValueGroup) -> GammaCone:
    rows, t_eq = [], False
    for a in hc.irredundant().inequalities:
        res = gamma_normalize(a, gamma)
        if res[0] == "t":
            t_eq = t_eq or res[1] < 0
            continue
        rows.append(res)
    return GammaCone(n, tuple(rows), gamma, t_eq)


def _star_completion(fan: GammaFan) -> list[GammaCone]:
    """Cones over the boundary facets of a full-dimensional convex support from ``-p``."""
    d = fan.n + 1
    hull = _hull(fan)
    p = normalize(hull.relint_point())
    q = vneg(p)
    boundary = {}
    for c in fan.cones:
        h = c.hcone
        for s in h.facet_ray_sets():
            f = h.face_from_rays(s)
            if hull.interior_contains(f.relint_point()):
                continue
            boundary.setdefault(f.key, f)
    out = []
    for key in sorted(boundary):
        f = boundary[key]
        hc = HCone.from_generators(list(f.rays) + [q], (), d)
        try:
            cone = _cone_from_normals(hc, fan.n, fan.gamma)
        except GammaViolationError as exc:
            raise ExtensionFailure(f"star cone over a boundary facet is not Gamma-valid: {exc}") from None
        if cone.dim == d:
            out.append(cone)
    return out


def _shared_hyperplane(a: GammaCone, b: GammaCone):
    inter = a.hcone.intersect(b.hcone)
    d = a.n + 1
    if inter.dim != d - 1:
        return None
    ns = nullspace(list(inter.rays) + list(inter.lineality), d)
    f = ns[0]
    if any(dot(f, r) < 0 for r in a.rays):
        f = vneg(f)
    return f


def _try_merge(a: GammaCone, b: GammaCone) -> Optional[GammaCone]:
    """The union of two adjacent cones, when it is a convex pointed cone."""
    f = _shared_hyperplane(a, b)
    if f is None:
        return None
    d = a.n + 1
    hull = HCone.from_generators(list(a.rays) + list(b.rays), (), d)
    if not hull.is_pointed:
        return None
    if hull.intersect(HCone([f], d)) != a.hcone or hull.intersect(HCone([vneg(f)], d)) != b.hcone:
        return None
    rows = tuple(
        r for r in a.inequalities + b.inequalities
        if all(dot(tuple(r[0]) + (r[1],), x) >= 0 for x in hull.rays)
    )
    merged = GammaCone(a.n, rows, a.gamma)
    if merged.hcone != hull:
        return None
    return merged.irredundant()


def _violation_count(cones: list[GammaCone]) -> int:
    return sum(1 for a, b in combinations(cones, 2) if not _pair_ok(a, b))


def _merge_across_hyperplanes(fixed: list[GammaCone], exterior: list[GammaCone]) -> list[GammaCone]:
    """Drop whole hyperplanes from the exterior while that lowers the violation count.

    Merging one pair of chambers across a hyperplane leaves their other
    neighbours meeting the union in a partial facet, so every pair of
    exterior cells separated by the same hyperplane is merged at once.
    """
    exterior = list(exterior)
    score = _violation_count(fixed + exterior)
    while score:
        groups: dict = {}
        for i, j in combinations(range(len(exterior)), 2):
            u = _try_merge(exterior[i], exterior[j])
            if u is not None:
                h = normalize(_shared_hyperplane(exterior[i], exterior[j]))
                h = max(h, vneg(h))
                groups.setdefault(h, []).append((i, j, u))
        best = None
        for h in sorted(groups):
            pairs = groups[h]
            used = [k for i, j, _ in pairs for k in (i, j)]
            if len(used) != len(set(used)):
                continue
            cand = [c for k, c in enumerate(exterior) if k not in used] + [u for _, _, u in pairs]
            new = _violation_count(fixed + cand)
            if new < score and (best is None or new < best[0]):
                best = (new, cand)
        if best is None:
            break
        score, exterior = best
    return exterior


def _greedy_merge(fixed: list[GammaCone], exterior: list[GammaCone]) -> list[GammaCone]:
    exterior = list(exterior)
    while True:
        merged_any = False
        for i, j in combinations(range(len(exterior)), 2):
            u = _try_merge(exterior[i], exterior[j])
            if u is None:
                continue
            others = fixed + [c for k, c in enumerate(exterior) if k not in (i, j)]
            if all(_pair_ok(u, o) for o in others):
                exterior = [c for k, c in enumerate(exterior) if k not in (i, j)] + [u]
                merged_any = True
                break
        if not merged_any:
            return exterior


def _unmatched(fan: GammaFan) -> list[int]:
    """Cones with a facet off t = 0 not shared by exactly one other cone."""
    owners: dict = {}
    for idx, c in enumerate(fan.cones):
        h = c.hcone
        for s in h.facet_ray_sets():
            if all(h.rays[j][-1] == 0 for j in s):
                continue
            owners.setdefault(h.face_from_rays(s).key, []).append(idx)
    bad = {i for own in owners.values() if len(own) != 2 for i in own}
    bad |= {i for i, c in enumerate(fan.cones) if c.dim < fan.n + 1}
    return sorted(bad)


def _certify(source: GammaFan, cones: list[GammaCone], tags: list[str]) -> GammaFan:
    keep = [
        i for i, c in enumerate(cones)
        if not any(j != i and c.dim < o.dim and c.is_face_of(o) for j, o in enumerate(cones))
    ]
    cones = [cones[i] for i in keep]
    out = GammaFan(source.n, source.gamma, tuple(cones), tuple(tags[i] for i in keep))
    bad = fan_violations(out)
    if bad:
        raise ExtensionFailure(
            f"{len(bad)} cone pairs violate the fan axiom",
            conflicts=[(v.i, v.j) for v in bad],
            cones=cones,
        )
    if not is_complete(out, check=False):
        raise ExtensionFailure(
            "result does not cover t >= 0",
            conflicts=[(i, None) for i in _unmatched(out)],
            cones=cones,
        )
    missing = [i for i, c in enumerate(source.cones) if not out.has_cone(c)]
    if missing:
        raise ExtensionFailure(
            "input cones lost in the result", conflicts=[(i, None) for i in missing], cones=cones
        )
    return out.canonical()


def complete_extension(fan: GammaFan) -> GammaFan:
    """A complete fan containing every cone of ``fan`` as a cone.

    Tried in order: the fan itself when complete; the star construction
    from an exterior point when the support is convex (a single cone of
    lower dimension is first thickened to a full-dimensional cone having it
    as a face); otherwise the arrangement chambers outside the support,
    with hyperplanes removed where they break the fan axiom and then
    greedily merged.  The result is always re-validated; ExtensionFailure
    is raised when the certificate fails.
    """
    _require_valid(fan)
    if is_complete(fan, check=False):
        return fan
    d = fan.n + 1
    base = fan
    if len(fan.cones) == 1 and fan.cones[0].dim < d:
        base = GammaFan(fan.n, fan.gamma, (_thicken(fan.cones[0]),), ("thickened",))
    if all(c.dim == d for c in base.cones) and support_is_convex(base):
        star = _star_completion(base)
        cones = list(base.cones) + star
        tags = list(base.tags) + ["star"] * len(star)
        return _certify(fan, cones, tags)
    chambers = refine_to_complete(fan).cones
    top = [c for c in fan.cones if c.dim == d]
    exterior = [c for c in chambers if not any(t.contains(c.relint_point()) for t in top)]
    exterior = _merge_across_hyperplanes(list(fan.cones), exterior)
    exterior = _greedy_merge(list(fan.cones), exterior)
    cones = list(fan.cones) + exterior
    tags = list(fan.tags) + ["exterior"] * len(exterior)
    return _certify(fan, cones, tags)
