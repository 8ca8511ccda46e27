"""Gamma-admissible cones in N_R x R_+ and their level slices.

A cone is stored as a list of inequalities ``<m, w> + c t >= 0`` with ``m``
an integer vector and ``c`` in Gamma; ``t >= 0`` is always implied.  Faces
and intersections are built by appending (negated) inherited inequalities,
so every derived cone is Gamma-valid by construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import (
    AdmissibilityError,
    DomainError,
    FiniteTypeError,
    GammaViolationError,
    NotAFaceError,
)
from .polyhedra import HCone, HPolyhedron, Vector, dot, is_rational_vector, normalize, vneg
from .scalar import Number, format_scalar, sign, to_field
from .valuegroup import (
    ValueGroup,
    gamma_contains,
    gamma_multiplier,
    pairing_sublattice,
    sublattice_index,
)

Inequality = tuple  # (m: tuple[int, ...], c: Number)


def _as_inequality(item, n: int) -> Inequality:
    m, c = item
    m = tuple(m)
    if len(m) != n:
        raise DomainError(f"normal {m} has length {len(m)}, expected {n}")
    mi = []
    for x in m:
        x = to_field(x) if not isinstance(x, int) else x
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise DomainError(f"normal {m} is not an integer vector")
            x = int(x)
        elif not isinstance(x, int):
            raise DomainError(f"normal {m} is not an integer vector")
        mi.append(x)
    return tuple(mi), to_field(c)


def gamma_normalize(vector: Sequence, gamma: ValueGroup):
    """Rescale a field normal ``(m, c)`` positively so ``m`` is integral and ``c`` in Gamma.

    Returns ``(m, c)``, or ``("t", s)`` when ``m == 0`` (a condition on t
    alone with sign ``s``).  Raises GammaViolationError when no positive
    multiple is Gamma-valid.
    """
    m, c = tuple(vector[:-1]), vector[-1]
    if not any(m):
        return ("t", sign(c))
    scaled = normalize(m)
    if not is_rational_vector(scaled):
        raise GammaViolationError(f"normal {m} is not proportional to a lattice vector")
    lead = next(i for i, x in enumerate(m) if x != 0)
    c0 = to_field(c * (to_field(scaled[lead]) / m[lead]))
    k = gamma_multiplier(gamma, c0)
    if k is None:
        raise GammaViolationError(
            f"no positive multiple of ({m}, {format_scalar(c0)}) has its constant in Gamma"
        )
    return tuple(k * x for x in scaled), to_field(k * c0)


@dataclass(frozen=True, eq=False)
class GammaCone:
    """``{(w, t) : <m_i, w> + c_i t >= 0, t >= 0}`` (and ``t = 0`` if ``t_equality``)."""

    n: int
    inequalities: tuple
    gamma: ValueGroup
    t_equality: bool = False

    def __post_init__(self):
        ineqs = tuple(_as_inequality(item, self.n) for item in self.inequalities)
        for m, c in ineqs:
            if not gamma_contains(self.gamma, c):
                raise GammaViolationError(
                    f"constant {format_scalar(c)} of inequality {m} is not in Gamma"
                )
        object.__setattr__(self, "inequalities", ineqs)

    # -- constructors ---------------------------------------------------------
    @classmethod
    def from_hcone(cls, cone: HCone, gamma: ValueGroup) -> "GammaCone":
        """Gamma-valid H-representation of a cone given with field normals."""
        n = cone.d - 1
        for r in cone.rays:
            if r[-1] < 0:
                raise DomainError("cone leaves the half-space t >= 0")
        for l in cone.lineality:
            if l[-1] != 0:
                raise DomainError("cone leaves the half-space t >= 0")
        src = cone.irredundant()
        ineqs, t_eq = [], False
        for a in src.inequalities:
            res = gamma_normalize(a, gamma)
            if res[0] == "t":
                if res[1] < 0:
                    t_eq = True
                continue
            ineqs.append(res)
        return cls(n, tuple(ineqs), gamma, t_eq)

    @classmethod
    def from_rays(cls, rays: Iterable[Sequence], gamma: ValueGroup, lineality: Iterable[Sequence] = (), n: Optional[int] = None) -> "GammaCone":
        rays = [tuple(r) for r in rays]
        lineality = [tuple(l) for l in lineality]
        dim = None if n is None else n + 1
        return cls.from_hcone(HCone.from_generators(rays, lineality, dim), gamma)

    # -- geometry -------------------------------------------------------------
    @cached_property
    def hcone(self) -> HCone:
        ineqs = [m + (c,) for m, c in self.inequalities]
        zero = (0,) * self.n
        ineqs.append(zero + (1,))
        if self.t_equality:
            ineqs.append(zero + (-1,))
        return HCone(ineqs, self.n + 1)

    @property
    def rays(self) -> tuple[Vector, ...]:
        return self.hcone.rays

    @property
    def lineality(self) -> tuple[Vector, ...]:
        return self.hcone.lineality

    @property
    def dim(self) -> int:
        return self.hcone.dim

    @property
    def key(self):
        return self.hcone.key

    def __eq__(self, other):
        if not isinstance(other, GammaCone):
            return NotImplemented
        return self.n == other.n and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        body = ", ".join(f"{m}|{format_scalar(c)}" for m, c in self.inequalities)
        t = ", t=0" if self.t_equality else ""
        return f"GammaCone(n={self.n}, [{body}]{t})"

    @property
    def in_boundary(self) -> bool:
        """True when the cone lies in the hyperplane t = 0."""
        return all(r[-1] == 0 for r in self.rays)

    def contains(self, point: Sequence) -> bool:
        return self.hcone.contains(point)

    def contains_cone(self, other: "GammaCone") -> bool:
        return self.hcone.contains_cone(other.hcone)

    def relint_point(self) -> Vector:
        return self.hcone.relint_point()

    # -- derived cones ------------------------------------------------------------
    def _with_equalities(self, indices: Iterable[int]) -> "GammaCone":
        L = len(self.inequalities)
        extra = []
        t_eq = self.t_equality
        for i in indices:
            if i < L:
                m, c = self.inequalities[i]
                extra.append((tuple(-x for x in m), -c))
            else:
                t_eq = True
        return GammaCone(self.n, self.inequalities + tuple(extra), self.gamma, t_eq)

    def irredundant(self) -> "GammaCone":
        """Same cone with only facet inequalities and a basis of equalities."""
        h = self.hcone
        L = len(self.inequalities)
        keep, t_eq = [], False
        for i in h.facet_indices:
            if i < L:
                keep.append(self.inequalities[i])
        for i in h.equality_basis_indices:
            if i < L:
                m, c = self.inequalities[i]
                keep.append((m, c))
                keep.append((tuple(-x for x in m), -c))
            else:
                t_eq = True
        if not t_eq and h.dim < h.d and self.in_boundary:
            t_eq = True
        out = GammaCone(self.n, tuple(keep), self.gamma, t_eq)
        return out

    def face_from_rays(self, ray_set: Iterable[int]) -> "GammaCone":
        return self._with_equalities(self.hcone.tight_on(ray_set)).irredundant()

    def faces(self) -> list["GammaCone"]:
        """All faces, smallest first; each is Gamma-valid by inheritance."""
        return [self.face_from_rays(s) for s in self.hcone.face_ray_sets()]

    def facets(self) -> list["GammaCone"]:
        return [self.face_from_rays(s) for s in self.hcone.facet_ray_sets()]

    def face_generated_by(self, point: Sequence) -> "GammaCone":
        self.hcone.face_generated_by(point)  # raises OutsideError
        tight = [i for i, a in enumerate(self.hcone.inequalities) if dot(a, point) == 0]
        return self._with_equalities(tight).irredundant()

    def is_face_of(self, other: "GammaCone") -> bool:
        return self.hcone.is_face_of(other.hcone)

    def intersect(self, other: "GammaCone") -> "GammaCone":
        if self.n != other.n:
            raise DomainError("lattice ranks differ")
        return GammaCone(
            self.n,
            self.inequalities + other.inequalities,
            self.gamma,
            self.t_equality or other.t_equality,
        )


def is_admissible(cone: GammaCone) -> tuple[bool, Optional[Vector]]:
    """Pointedness test; on failure returns a nonzero lineality vector."""
    lin = cone.lineality
    if lin:
        return False, lin[0]
    return True, None


def require_admissible(cone: GammaCone) -> GammaCone:
    ok, cert = is_admissible(cone)
    if not ok:
        raise AdmissibilityError(f"{cone!r} contains the line spanned by {cert}")
    return cone


@dataclass(frozen=True)
class SlicePolyhedron:
    level: Number
    body: HPolyhedron

    def vertices(self):
        return self.body.vertices()

    @property
    def is_empty(self) -> bool:
        return self.body.is_empty


def slice(cone: GammaCone, r) -> SlicePolyhedron:
    """``{w : (w, r) in cone}``."""
    r = to_field(r)
    if r < 0:
        raise DomainError(f"level {format_scalar(r)} is negative")
    ineqs = [(m, c * r) for m, c in cone.inequalities]
    if cone.t_equality and r != 0:
        ineqs.append(((0,) * cone.n, -r))
    if not ineqs:
        ineqs = [((0,) * cone.n, Fraction(0))]
    return SlicePolyhedron(r, HPolyhedron(ineqs, cone.n))


def recession_cone(p: SlicePolyhedron | HPolyhedron) -> HCone:
    body = p.body if isinstance(p, SlicePolyhedron) else p
    return body.recession_cone()


def finite_type_check(cone: GammaCone, discrete: Optional[bool] = None) -> tuple[bool, list]:
    """Whether all vertices of the level-1 slice have coordinates in Gamma."""
    if discrete is None:
        discrete = cone.gamma.discrete
    if discrete:
        return True, []
    offenders = [
        v for v in slice(cone, 1).vertices()
        if not all(gamma_contains(cone.gamma, x) for x in v)
    ]
    return not offenders, offenders


def local_cone(p: SlicePolyhedron | HPolyhedron, w: Sequence) -> HCone:
    body = p.body if isinstance(p, SlicePolyhedron) else p
    return body.local_cone(w)


@dataclass(frozen=True)
class CensusEntry:
    """One irreducible component of the special fiber."""

    vertex: tuple
    lattice: tuple  # HNF basis of {m : <m, vertex> in Gamma}
    index: Optional[int]  # [M : M_i], None when the sublattice has lower rank


def special_fiber_census(cone: GammaCone) -> list[CensusEntry]:
    """One entry per vertex of the level-1 slice."""
    out = []
    for v in slice(cone, 1).vertices():
        basis = tuple(pairing_sublattice(cone.gamma, v))
        out.append(CensusEntry(tuple(v), basis, sublattice_index(basis, cone.n)))
    return out


def reducedness_flag(cone: GammaCone, discrete: Optional[bool] = None) -> bool:
    if discrete is None:
        discrete = cone.gamma.discrete
    if not discrete:
        return True
    return finite_type_check(cone, discrete=False)[0]


def require_finite_type(cone: GammaCone) -> None:
    ok, bad = finite_type_check(cone)
    if not ok:
        raise FiniteTypeError(f"vertex {bad[0]} of the level-1 slice is not in N_Gamma")
