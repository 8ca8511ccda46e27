"""Hilbert bases, generators of the algebra of a cone, and saturation in M x Gamma."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import ceil, floor
from typing import Iterable, Optional, Sequence

from .cones import GammaCone, local_cone, slice
from .errors import DomainError, FiniteTypeError
from .intlin import IntMatrix, diagonal, inverse_unimodular, saturate, snf, unimodular_completion
from .polyhedra import HCone, dot, normalize, solve_linear
from .scalar import Number, coords, format_scalar, make, to_field
from .valuegroup import ValueGroup, gamma_contains


@dataclass(frozen=True, order=True)
class MonomialDatum:
    """``(u, gamma)``: a monomial ``a * chi^u`` with ``v(a) = gamma``."""

    u: tuple
    gamma: Number

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(int(x) for x in self.u))
        object.__setattr__(self, "gamma", to_field(self.gamma))

    @property
    def vector(self) -> tuple:
        return self.u + (self.gamma,)

    def __str__(self):
        return f"{' '.join(str(x) for x in self.u)} | {format_scalar(self.gamma)}"


@dataclass(frozen=True)
class SemigroupGens:
    """A finite generating set in M x Gamma, kept sorted and without duplicates."""

    elements: tuple
    n: int
    gamma: ValueGroup = field(default_factory=ValueGroup.rationals)

    def __post_init__(self):
        elems = tuple(sorted(set(
            e if isinstance(e, MonomialDatum) else MonomialDatum(*e) for e in self.elements
        )))
        for e in elems:
            if len(e.u) != self.n:
                raise DomainError(f"exponent {e.u} has length {len(e.u)}, expected {self.n}")
            if not gamma_contains(self.gamma, e.gamma):
                raise DomainError(f"valuation {format_scalar(e.gamma)} is not in Gamma")
        object.__setattr__(self, "elements", elems)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @cached_property
    def cone(self) -> HCone:
        return HCone.from_generators([e.vector for e in self.elements], (), self.n + 1)


# -- Hilbert bases ------------------------------------------------------------------

def _coordinates(vectors: Sequence[Sequence[int]], basis: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Integer coordinates of ``vectors`` in a lattice ``basis`` (rows)."""
    cols = [list(c) for c in zip(*basis)]
    out = []
    for v in vectors:
        x = solve_linear(cols, list(v), len(basis))
        if x is None or any(Fraction(c).denominator != 1 for c in x):
            raise DomainError(f"{tuple(v)} is not in the lattice")
        out.append(tuple(int(c) for c in x))
    return out


def _triangulate(rays: Sequence[tuple], indices: frozenset, k: int) -> list[tuple[int, ...]]:
    """Placing triangulation of ``cone(rays[i] for i in indices)`` of dimension ``k``."""
    idx = sorted(indices)
    if len(idx) == k:
        return [tuple(idx)]
    cone = HCone.from_generators([rays[i] for i in idx], (), len(rays[0]))
    local = {cone.rays.index(normalize(rays[i])): i for i in idx}
    apex = idx[0]
    apex_local = next(j for j, i in local.items() if i == apex)
    out = []
    for s in cone.facet_ray_sets():
        if apex_local in s:
            continue
        for simplex in _triangulate(rays, frozenset(local[j] for j in s), k - 1):
            out.append((apex,) + simplex)
    return out


def _parallelepiped_points(gens: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Nonzero lattice points of ``{sum l_i g_i : 0 <= l_i < 1}`` for a basis ``gens``."""
    k = len(gens)
    V = IntMatrix.from_rows([list(c) for c in zip(*gens)], k)  # columns are generators
    S, U, _ = snf(V)
    d = diagonal(S)
    Uinv = inverse_unimodular(U)
    cols = [list(c) for c in zip(*gens)]
    pts = set()
    for y in product(*[range(x) for x in d]):
        x = Uinv.apply(y)
        lam = solve_linear(cols, list(x), k)
        frac = [Fraction(l) - floor(Fraction(l)) for l in lam]
        p = tuple(int(sum(f * g[i] for f, g in zip(frac, gens))) for i in range(k))
        if any(p):
            pts.add(p)
    return sorted(pts)


def _hilbert_full(rays: list[tuple[int, ...]], k: int) -> list[tuple[int, ...]]:
    """Hilbert basis of a full-dimensional pointed cone in Z^k given by primitive rays."""
    cone = HCone.from_generators(rays, (), k)
    rays = list(cone.rays)
    cands = set(rays)
    for simplex in _triangulate(rays, frozenset(range(len(rays))), k):
        cands.update(_parallelepiped_points([rays[i] for i in simplex]))
    cands = sorted(cands)
    out = []
    for x in cands:
        if not any(g != x and cone.contains(tuple(a - b for a, b in zip(x, g))) for g in cands):
            out.append(x)
    return out


def hilbert_basis(cone: HCone) -> list[tuple[int, ...]]:
    """Minimal generating set of the semigroup ``cone ∩ Z^d`` of a pointed rational cone."""
    if not cone.is_pointed:
        raise DomainError("the Hilbert basis of a cone with lineality is not unique")
    d = cone.d
    rays = list(cone.rays)
    if not rays:
        return []
    if any(not all(isinstance(x, int) for x in r) for r in rays):
        raise DomainError("cone is not rational")
    basis = saturate(rays, d)
    k = len(basis)
    local = _coordinates(rays, basis)
    out = []
    for x in _hilbert_full(local, k):
        out.append(tuple(sum(c * b[i] for c, b in zip(x, basis)) for i in range(d)))
    return sorted(out)


def semigroup_generators(cone: HCone) -> list[tuple[int, ...]]:
    """Generators of ``cone ∩ Z^d`` for a rational cone, possibly with lineality.

    The lineality part contributes a lattice basis and its negatives; the
    pointed quotient contributes its Hilbert basis, lifted along a
    complementary lattice basis.
    """
    d = cone.d
    lin = list(cone.lineality)
    if not lin:
        return hilbert_basis(cone)
    lbasis = saturate([tuple(int(x) for x in l) for l in lin], d)
    k = len(lbasis)
    W = unimodular_completion(lbasis, d)
    rows = [list(r) for r in W.entries]
    # coordinates a with x = sum a_i W_i; keep the last d - k of them
    quot_rays = [c[k:] for c in _coordinates(cone.rays, rows)]
    out = set()
    for b in lbasis:
        out.add(tuple(b))
        out.add(tuple(-x for x in b))
    if d > k:
        q = HCone.from_generators(quot_rays, (), d - k)
        for y in hilbert_basis(q):
            out.add(tuple(sum(c * rows[k + j][i] for j, c in enumerate(y)) for i in range(d)))
    return sorted(out)


# -- the algebra of a cone ----------------------------------------------------------

def algebra_generators(cone: GammaCone) -> SemigroupGens:
    """Union over vertices ``w`` of the level-1 slice of ``(u, -<u, w>)``, ``u`` running
    over generators of the dual of the local cone at ``w``."""
    p = slice(cone, 1)
    verts = p.vertices()
    if not verts:
        raise DomainError("the level-1 slice is empty")
    out = set()
    for w in verts:
        dual = local_cone(p, w).dual()
        for u in semigroup_generators(dual):
            g = to_field(-dot(u, w)) if any(u) else Fraction(0)
            if not gamma_contains(cone.gamma, g):
                raise FiniteTypeError(
                    f"vertex {tuple(w)} of the level-1 slice is not in N_Gamma"
                )
            out.add(MonomialDatum(u, g))
    return SemigroupGens(tuple(out), cone.n, cone.gamma)


def in_weight_algebra(cone: GammaCone, datum: MonomialDatum) -> bool:
    """Whether ``<u, w> + gamma t >= 0`` on the whole cone."""
    v = datum.vector
    return all(dot(v, r) >= 0 for r in cone.rays) and all(dot(v, l) == 0 for l in cone.lineality)


def saturation_membership(gens: SemigroupGens, datum: MonomialDatum) -> bool:
    """Whether ``datum`` lies in ``cone(S) ∩ (M x Gamma)``."""
    if not gamma_contains(gens.gamma, datum.gamma):
        return False
    if not gens.elements:
        return not any(datum.u) and datum.gamma == 0
    return gens.cone.contains(datum.vector)


# -- bounded saturation check ----------------------------------------------------------

def _next_in_gamma(gamma: ValueGroup, x) -> tuple[Number, bool]:
    """``(g, exact)``: the least element of Gamma that is >= x when it exists
    (``exact=True``), otherwise the infimum ``x`` itself (dense Gamma)."""
    if gamma.whole_field or gamma_contains(gamma, x):
        return x, True
    basis, scale = gamma._lattice
    if len(basis) == 1:
        a, b = basis[0]
        g = make(Fraction(a, scale), Fraction(b, scale), gamma.radicand)
        if g < 0:
            g = -g
        ratio = to_field(x / g)
        r = coords(ratio)[0]
        return to_field(g * ceil(r)), True
    return x, False


def _combination_costs(gens: SemigroupGens, radius: int) -> dict:
    """Least total valuation of an N-combination of generators reaching each ``u``
    in the box ``|u|_inf <= radius`` (partial sums stay in the box)."""
    n = gens.n
    steps = [(e.u, e.gamma) for e in gens.elements]
    dist = {(0,) * n: Fraction(0)}
    frontier = [(0,) * n]
    rounds = 0
    limit = (2 * radius + 1) ** n + 1
    while frontier and rounds < limit:
        rounds += 1
        nxt = set()
        for x in frontier:
            dx = dist[x]
            for u, g in steps:
                y = tuple(a + b for a, b in zip(x, u))
                if max((abs(c) for c in y), default=0) > radius:
                    continue
                cost = dx + g
                if y not in dist or cost < dist[y]:
                    dist[y] = cost
                    nxt.add(y)
        frontier = sorted(nxt)
    return dist


def is_saturated_bounded(gens: SemigroupGens, bound: int) -> tuple[bool, Optional[MonomialDatum]]:
    """Check saturation on all exponents ``u`` with ``|u|_inf <= bound``.

    The semigroup is the one generated by ``S`` together with ``{0} x Gamma_{>=0}``
    (coefficients from the valuation ring).  For each lattice point ``u`` in
    the projection of ``cone(S)`` the least valuation reached by an
    N-combination (partial sums kept inside a box of radius ``bound`` plus
    the largest generator entry) is compared with the least value of Gamma
    allowed by ``cone(S)`` over ``u``.  Returns a witness on failure.
    """
    n = gens.n
    if not gens.elements:
        return True, None
    cone = gens.cone
    gamma = gens.gamma
    d = n + 1
    down = (0,) * n + (-1,)
    spread = max((abs(x) for e in gens.elements for x in e.u), default=0)
    radius = bound + spread
    lower_unbounded = cone.contains(down)
    if lower_unbounded:
        reach = _combination_costs(SemigroupGens(
            tuple((e.u, Fraction(0)) for e in gens.elements), n), radius)
    else:
        reach = _combination_costs(gens, radius)
    proj = HCone.from_generators([e.u for e in gens.elements], (), n) if n else None
    for u in product(range(-bound, bound + 1), repeat=n):
        if n and not proj.contains(u):
            continue
        if lower_unbounded:
            if u not in reach:
                return False, MonomialDatum(u, Fraction(0))
            continue
        lo = None
        for a in cone.inequalities:
            b = a[-1]
            if b > 0:
                val = to_field(-dot(a[:-1], u) / to_field(b))
                lo = val if lo is None or val > lo else lo
        if lo is None:
            continue
        target, exact = _next_in_gamma(gamma, lo)
        have = reach.get(u)
        if have is None or have > target:
            witness = target if exact else lo
            if not gamma_contains(gamma, witness):
                witness = _witness_above(gamma, lo, have)
            return False, MonomialDatum(u, witness)
    return True, None


def _witness_above(gamma: ValueGroup, lo, have):
    """Some element of Gamma in ``[lo, have)`` (``have`` may be None for +inf)."""
    gens = [g for g in gamma.generators if g != 0]
    # walk integer combinations of the generators outward until one lands in range
    for k in range(1, 200):
        for coeffs in product(range(-k, k + 1), repeat=len(gens)):
            x = sum((c * g for c, g in zip(coeffs, gens)), Fraction(0))
            if x >= lo and (have is None or x < have):
                return to_field(x)
    return lo
