"""Exact cones and polyhedra over Q or Q(sqrt(D)).

Cones are given by inequalities ``a . x >= 0``; the generator description
(extreme rays plus a lineality basis) is computed lazily by the double
description method and cached.  Polyhedra ``{x : a . x + b >= 0}`` are
handled through their homogenization ``{(x, s) : a . x + b s >= 0, s >= 0}``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import DomainError, NotAFaceError, OutsideError
from .scalar import Scalar

Vector = tuple


# -- vector helpers -----------------------------------------------------------

def _f(x):
    return Fraction(x) if type(x) is int else x


def dot(u: Sequence, v: Sequence):
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def vneg(v):
    return tuple(-a for a in v)


def is_zero(v) -> bool:
    return not any(v)


def is_rational_vector(v) -> bool:
    return all(not isinstance(x, Scalar) for x in v)


def normalize(v: Sequence) -> Vector:
    """Canonical positive rescaling of a nonzero vector.

    Rational vectors become primitive integer vectors; vectors with
    irrational entries are divided by the absolute value of their first
    nonzero entry.
    """
    v = tuple(_f(x) if not isinstance(x, Scalar) else (x if x.radical_part else x.rational_part) for x in v)
    if is_rational_vector(v):
        den = 1
        for x in v:
            den = lcm(den, x.denominator)
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g == 0:
            return tuple(ints)
        return tuple(x // g for x in ints)
    lead = next(x for x in v if x != 0)
    lead = abs(lead)
    out = []
    for x in v:
        y = x / lead
        if isinstance(y, Fraction) and y.denominator == 1:
            y = int(y)
        out.append(y)
    return tuple(out)


def rref(rows: Iterable[Sequence], d: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [[_f(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(d):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c]
        if inv != 1:
            M[r] = [x / inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Iterable[Sequence], d: int) -> int:
    return len(rref(rows, d)[0])


def nullspace(rows: Iterable[Sequence], d: int) -> list[Vector]:
    """Basis of ``{x : r . x = 0 for all rows r}``."""
    R, pivots = rref(rows, d)
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * d
        v[fcol] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[fcol]
        basis.append(normalize(v))
    return basis


def reduce_mod(v: Sequence, basis_rref: Sequence[Sequence], pivots: Sequence[int]) -> Vector:
    """Canonical representative of ``v`` modulo the span of an RREF basis."""
    v = list(v)
    for row, pc in zip(basis_rref, pivots):
        c = v[pc]
        if c != 0:
            v = [a - c * b for a, b in zip(v, row)]
    return tuple(v)


def solve_linear(rows: Sequence[Sequence], rhs: Sequence, d: int) -> Optional[Vector]:
    """Some solution of ``rows . x = rhs`` (field), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, d + 1)
    if d in pivots:
        return None
    x = [Fraction(0)] * d
    for row, pc in zip(R, pivots):
        x[pc] = row[d]
    return tuple(x)


# -- double description -------------------------------------------------------

def double_description(inequalities: Sequence[Sequence], d: int):
    """Extreme rays and a lineality basis of ``{x : a . x >= 0}``.

    Inequalities are inserted in the given order; adjacency of rays is
    decided combinatorially from their sets of tight inequalities.
    """
    lin = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays: list[Vector] = []
    zs: list[frozenset] = []
    for k, a in enumerate(inequalities):
        piv = None
        for idx, l in enumerate(lin):
            v = dot(a, l)
            if v != 0:
                piv, v0 = idx, v
                break
        if piv is not None:
            l0 = lin.pop(piv)
            if v0 < 0:
                l0, v0 = vneg(l0), -v0
            new_lin = []
            for l in lin:
                c = dot(a, l)
                new_lin.append(l if c == 0 else normalize(vsub(l, vscale(_f(c) / v0, l0))))
            lin = new_lin
            new_rays = []
            for r in rays:
                c = dot(a, r)
                new_rays.append(r if c == 0 else normalize(vsub(r, vscale(_f(c) / v0, l0))))
            rays = new_rays
            zs = [z | {k} for z in zs]
            rays.append(normalize(l0))
            zs.append(frozenset(range(k)))
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            zs = [z | {k} if vals[i] == 0 else z for i, z in enumerate(zs)]
            continue
        new_rays, new_zs = [], []
        for i, v in enumerate(vals):
            if v > 0:
                new_rays.append(rays[i])
                new_zs.append(zs[i])
            elif v == 0:
                new_rays.append(rays[i])
                new_zs.append(zs[i] | {k})
        dimq = d - len(lin)
        for p in pos:
            for q in neg:
                common = zs[p] & zs[q]
                if len(common) < dimq - 2:
                    continue
                if any(
                    common <= zs[r] for r in range(len(rays)) if r != p and r != q
                ):
                    continue
                nr = vsub(vscale(vals[p], rays[q]), vscale(vals[q], rays[p]))
                new_rays.append(normalize(nr))
                new_zs.append(common | {k})
        rays, zs = new_rays, new_zs
    return rays, lin


# -- cones --------------------------------------------------------------------

class HCone:
    """A polyhedral cone ``{x in R^d : a . x >= 0 for each inequality a}``."""

    def __init__(self, inequalities: Iterable[Sequence], dim: Optional[int] = None):
        ineqs = tuple(tuple(a) for a in inequalities)
        if dim is None:
            if not ineqs:
                raise DomainError("ambient dimension needed for a cone without inequalities")
            dim = len(ineqs[0])
        if any(len(a) != dim for a in ineqs):
            raise DomainError("inequalities of mixed length")
        self.inequalities = ineqs
        self.d = dim

    @classmethod
    def from_generators(cls, rays: Iterable[Sequence], lineality: Iterable[Sequence] = (), dim: Optional[int] = None) -> "HCone":
        rays = [tuple(r) for r in rays]
        lineality = [tuple(l) for l in lineality]
        if dim is None:
            pool = rays + lineality
            if not pool:
                raise DomainError("ambient dimension needed for the zero cone")
            dim = len(pool[0])
        gens = [r for r in rays if not is_zero(r)]
        lins = [l for l in lineality if not is_zero(l)]
        dual = HCone(gens + lins + [vneg(l) for l in lins], dim)
        drays, dlin = dual._vrep
        ineqs = list(drays) + list(dlin) + [vneg(l) for l in dlin]
        return cls(ineqs, dim)

    @classmethod
    def whole_space(cls, d: int) -> "HCone":
        return cls((), d)

    def __repr__(self):
        return f"HCone(d={self.d}, rays={list(self.rays)}, lineality={list(self.lineality)})"

    # -- generator description --------------------------------------------
    @cached_property
    def _vrep(self):
        rays, lin = double_description(self.inequalities, self.d)
        R, piv = rref(lin, self.d)
        lin_basis = [normalize(r) for r in R]
        if lin_basis:
            rays = [normalize(reduce_mod(r, R, piv)) for r in rays]
        return tuple(sorted(set(rays))), tuple(lin_basis)

    @property
    def rays(self) -> tuple[Vector, ...]:
        return self._vrep[0]

    @property
    def lineality(self) -> tuple[Vector, ...]:
        return self._vrep[1]

    @cached_property
    def dim(self) -> int:
        return rank(list(self.rays) + list(self.lineality), self.d)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.d

    @cached_property
    def key(self):
        return (self.d, self.rays, self.lineality)

    def __eq__(self, other):
        if not isinstance(other, HCone):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    # -- membership ----------------------------------------------------------
    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) >= 0 for a in self.inequalities)

    def interior_contains(self, x: Sequence) -> bool:
        """Relative-interior membership."""
        eq = set(self.implicit_equalities)
        for i, a in enumerate(self.inequalities):
            v = dot(a, x)
            if v < 0 or (v == 0) != (i in eq):
                return False
        return True

    def contains_cone(self, other: "HCone") -> bool:
        return all(self.contains(r) for r in other.rays) and all(
            self.contains(l) and self.contains(vneg(l)) for l in other.lineality
        )

    def relint_point(self) -> Vector:
        """A point in the relative interior (sum of the extreme rays)."""
        p = tuple(0 for _ in range(self.d))
        for r in self.rays:
            p = vadd(p, r)
        return p

    # -- facets / equalities ----------------------------------------------------
    @cached_property
    def _tight(self):
        return tuple(
            frozenset(j for j, r in enumerate(self.rays) if dot(a, r) == 0)
            for a in self.inequalities
        )

    @cached_property
    def implicit_equalities(self) -> tuple[int, ...]:
        allr = frozenset(range(len(self.rays)))
        return tuple(i for i, t in enumerate(self._tight) if t == allr)

    @cached_property
    def facet_indices(self) -> tuple[int, ...]:
        """Indices of an irredundant subset of inequalities defining facets."""
        eq = set(self.implicit_equalities)
        seen = set()
        out = []
        target = self.dim - 1
        for i, t in enumerate(self._tight):
            if i in eq or t in seen:
                continue
            if rank([self.rays[j] for j in t] + list(self.lineality), self.d) == target:
                seen.add(t)
                out.append(i)
        return tuple(out)

    @cached_property
    def equality_basis_indices(self) -> tuple[int, ...]:
        """A subset of implicit equalities whose normals span all of them."""
        out, rows = [], []
        for i in self.implicit_equalities:
            cand = rows + [self.inequalities[i]]
            if rank(cand, self.d) > len(rows):
                rows = cand
                out.append(i)
        return tuple(out)

    def facet_ray_sets(self) -> list[frozenset]:
        return [self._tight[i] for i in self.facet_indices]

    def irredundant(self) -> "HCone":
        idx = list(self.equality_basis_indices)
        ineqs = [self.inequalities[i] for i in self.facet_indices]
        ineqs += [self.inequalities[i] for i in idx] + [vneg(self.inequalities[i]) for i in idx]
        return HCone(ineqs, self.d)

    # -- faces --------------------------------------------------------------------
    def face_ray_sets(self) -> list[frozenset]:
        """All faces, as sets of ray indices, closed under intersection."""
        full = frozenset(range(len(self.rays)))
        facets = self.facet_ray_sets()
        result = {full}
        stack = [full]
        while stack:
            s = stack.pop()
            for f in facets:
                t = s & f
                if t != s and t not in result:
                    result.add(t)
                    stack.append(t)
        return sorted(result, key=lambda s: (len(s), sorted(s)))

    def tight_on(self, ray_set: Iterable[int]) -> list[int]:
        """Indices of inequalities vanishing on every ray in ``ray_set``."""
        s = frozenset(ray_set)
        return [i for i, t in enumerate(self._tight) if s <= t]

    def face_from_rays(self, ray_set: Iterable[int]) -> "HCone":
        tight = self.tight_on(ray_set)
        return HCone(
            list(self.inequalities) + [vneg(self.inequalities[i]) for i in tight], self.d
        )

    def faces(self) -> list["HCone"]:
        return [self.face_from_rays(s) for s in self.face_ray_sets()]

    def face_generated_by(self, point: Sequence) -> "HCone":
        """Smallest face containing ``point``."""
        if not self.contains(point):
            raise OutsideError(f"{tuple(point)} is not in the cone")
        tight = [a for a in self.inequalities if dot(a, point) == 0]
        return HCone(list(self.inequalities) + [vneg(a) for a in tight], self.d)

    def is_face_of(self, other: "HCone") -> bool:
        if self.d != other.d or not other.contains_cone(self):
            return False
        return other.face_generated_by(self.relint_point()) == self

    # -- constructions ----------------------------------------------------------
    def intersect(self, other: "HCone") -> "HCone":
        if self.d != other.d:
            raise DomainError("ambient dimensions differ")
        return HCone(self.inequalities + other.inequalities, self.d)

    def dual(self) -> "HCone":
        gens = list(self.rays) + list(self.lineality) + [vneg(l) for l in self.lineality]
        return HCone(gens, self.d)


def dual_cone(cone: HCone) -> HCone:
    return cone.dual()


def intersect(a, b):
    return a.intersect(b)


# -- polyhedra ----------------------------------------------------------------

class HPolyhedron:
    """``{x in R^d : normal . x + offset >= 0 for each (normal, offset)}``."""

    def __init__(self, inequalities: Iterable[tuple[Sequence, object]], dim: Optional[int] = None):
        ineqs = tuple((tuple(n), o) for n, o in inequalities)
        if dim is None:
            if not ineqs:
                raise DomainError("ambient dimension needed")
            dim = len(ineqs[0][0])
        self.inequalities = ineqs
        self.d = dim
        self.homogenization = HCone(
            [n + (o,) for n, o in ineqs] + [tuple(0 for _ in range(dim)) + (1,)], dim + 1
        )

    @classmethod
    def from_generators(cls, points: Iterable[Sequence], rays: Iterable[Sequence] = (), lineality: Iterable[Sequence] = (), dim: Optional[int] = None) -> "HPolyhedron":
        points = [tuple(p) for p in points]
        rays = [tuple(r) for r in rays]
        lineality = [tuple(l) for l in lineality]
        if dim is None:
            dim = len((points + rays + lineality)[0])
        if not points:
            raise DomainError("a polyhedron needs at least one point")
        cone = HCone.from_generators(
            [p + (1,) for p in points] + [r + (0,) for r in rays],
            [l + (0,) for l in lineality],
            dim + 1,
        )
        return cls([(a[:-1], a[-1]) for a in cone.inequalities], dim)

    @classmethod
    def from_homogenization(cls, cone: HCone) -> "HPolyhedron":
        return cls([(a[:-1], a[-1]) for a in cone.inequalities], cone.d - 1)

    def __repr__(self):
        return f"HPolyhedron(d={self.d}, vertices={self.vertices()}, rays={list(self.rays)})"

    @property
    def is_empty(self) -> bool:
        return not any(r[-1] > 0 for r in self.homogenization.rays)

    def vertices(self) -> list[Vector]:
        out = []
        for r in self.homogenization.rays:
            s = r[-1]
            if s > 0:
                out.append(tuple(_int_if_possible(_f(x) / s) for x in r[:-1]))
        return sorted(out)

    @property
    def rays(self) -> tuple[Vector, ...]:
        return tuple(sorted(normalize(r[:-1]) for r in self.homogenization.rays if r[-1] == 0))

    @property
    def lineality(self) -> tuple[Vector, ...]:
        return tuple(l[:-1] for l in self.homogenization.lineality)

    @property
    def dim(self) -> int:
        return -1 if self.is_empty else self.homogenization.dim - 1

    @property
    def is_bounded(self) -> bool:
        return not self.is_empty and not self.rays and not self.lineality

    @property
    def key(self):
        return ("poly",) + self.homogenization.key

    def __eq__(self, other):
        if not isinstance(other, HPolyhedron):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def contains(self, x: Sequence) -> bool:
        return all(dot(n, x) + o >= 0 for n, o in self.inequalities)

    def relint_point(self) -> Vector:
        vs = self.vertices()
        if not vs:
            raise DomainError("empty polyhedron has no interior point")
        k = len(vs)
        p = tuple(sum((v[i] for v in vs), Fraction(0)) / k for i in range(self.d))
        for r in self.rays:
            p = vadd(p, r)
        return p

    def recession_cone(self) -> HCone:
        return HCone([n for n, _ in self.inequalities], self.d)

    def intersect(self, other: "HPolyhedron") -> "HPolyhedron":
        return HPolyhedron(self.inequalities + other.inequalities, self.d)

    def _face_from_homog(self, ray_set) -> "HPolyhedron":
        h = self.homogenization
        tight = [i for i in h.tight_on(ray_set) if i < len(self.inequalities)]
        extra = [(vneg(self.inequalities[i][0]), -self.inequalities[i][1]) for i in tight]
        return HPolyhedron(list(self.inequalities) + extra, self.d)

    def faces(self, bounded_only: bool = False) -> list["HPolyhedron"]:
        """Nonempty faces (all of them, or only the bounded ones)."""
        h = self.homogenization
        rays = h.rays
        out = []
        for s in h.face_ray_sets():
            has_point = any(rays[j][-1] > 0 for j in s)
            if not has_point:
                continue
            if bounded_only and (any(rays[j][-1] == 0 for j in s) or h.lineality):
                continue
            out.append(self._face_from_homog(s))
        return out

    def local_cone(self, w: Sequence) -> HCone:
        """Cone generated by ``P - w`` at a vertex ``w``."""
        w = tuple(w)
        if not self.contains(w):
            raise OutsideError(f"{w} is not in the polyhedron")
        if w not in set(self.vertices()):
            raise NotAFaceError(f"{w} is not a vertex")
        tight = [n for n, o in self.inequalities if dot(n, w) + o == 0]
        return HCone(tight, self.d)


def _int_if_possible(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    if isinstance(x, Scalar) and x.radical_part == 0:
        return _int_if_possible(x.rational_part)
    return x


def vertices(p: HPolyhedron) -> list[Vector]:
    return p.vertices()
