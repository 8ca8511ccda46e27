"""Value groups: finitely generated subgroups of Q or Q(sqrt(D)), or the whole field."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .errors import DomainError, ModeMismatchError
from .intlin import IntMatrix, det, integer_kernel, lattice_basis, solve_integer
from .scalar import Number, coords, format_scalar, radicand_of, to_field


@dataclass(frozen=True)
class ValueGroup:
    """The group Gamma of valuations, with the session's field and valuation mode.

    ``whole_field=True`` means Gamma is the entire scalar field (Q, or
    Q(sqrt(D)) when ``radicand`` is set).  ``discrete`` records the valuation
    mode; it relaxes the finite-type condition on cones.
    """

    generators: tuple = (Fraction(1),)
    whole_field: bool = False
    discrete: bool = False
    radicand: Optional[int] = None
    _lattice: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(to_field(g) for g in self.generators)
        if not gens and not self.whole_field:
            raise DomainError("a value group needs at least one generator")
        d = self.radicand
        for g in gens:
            r = radicand_of(g)
            if r is None:
                continue
            if d is None:
                d = r
            elif d != r:
                raise ModeMismatchError(f"generators mix sqrt({d}) and sqrt({r})")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "radicand", d)
        if not self.whole_field:
            object.__setattr__(self, "_lattice", _gamma_lattice(gens))

    @classmethod
    def integers(cls, discrete: bool = False) -> "ValueGroup":
        return cls((Fraction(1),), discrete=discrete)

    @classmethod
    def rationals(cls) -> "ValueGroup":
        return cls((), whole_field=True)

    @property
    def rank(self) -> Optional[int]:
        """Rank of Gamma as an abelian group (None for the whole field)."""
        return None if self.whole_field else len(self._lattice[0])

    def describe(self) -> str:
        if self.whole_field:
            return "all"
        return ",".join(format_scalar(g) for g in self.generators)

    def check_mode(self, x) -> None:
        r = radicand_of(x)
        if r is not None and r != self.radicand:
            if self.radicand is None:
                raise ModeMismatchError(f"{format_scalar(x)} is not in the rational session field")
            raise ModeMismatchError(f"{format_scalar(x)} uses sqrt({r}), session uses sqrt({self.radicand})")

    def __contains__(self, x) -> bool:
        return gamma_contains(self, x)


def _denominator_lcm(values: Sequence[Fraction]) -> int:
    m = 1
    for v in values:
        m = lcm(m, Fraction(v).denominator)
    return m


def _gamma_lattice(gens):
    """HNF basis of Gamma in (rational, radical) coordinates scaled by ``scale``.

    Returns ``(basis, scale)``; a vector ``(a, b)`` lies in Gamma iff
    ``scale * (a, b)`` is an integer combination of ``basis``.
    """
    cs = [coords(g) for g in gens]
    scale = _denominator_lcm([c for pair in cs for c in pair])
    vecs = [(int(a * scale), int(b * scale)) for a, b in cs]
    return (tuple(lattice_basis(vecs, 2)), scale)


def _scaled(x, scale):
    a, b = coords(x)
    a, b = a * scale, b * scale
    return a, b


def gamma_contains(gamma: ValueGroup, x) -> bool:
    """Whether ``x`` lies in Gamma."""
    x = to_field(x)
    gamma.check_mode(x)
    if gamma.whole_field:
        return True
    basis, scale = gamma._lattice
    a, b = _scaled(x, scale)
    if a.denominator != 1 or b.denominator != 1:
        return False
    if not basis:
        return a == 0 and b == 0
    A = IntMatrix.from_rows(list(zip(*basis)), len(basis))
    return solve_integer(A, [int(a), int(b)]) is not None


def gamma_multiplier(gamma: ValueGroup, x) -> Optional[int]:
    """Least positive integer ``k`` with ``k*x`` in Gamma, or None if there is none."""
    x = to_field(x)
    gamma.check_mode(x)
    if gamma.whole_field or x == 0:
        return 1
    basis, scale = gamma._lattice
    a, b = _scaled(x, scale)
    den = lcm(a.denominator, b.denominator)
    ai, bi = int(a * den), int(b * den)
    # k*(a, b) in lattice  <=>  k*(ai, bi) = den * (basis combination)
    cols = [[den * v[0] for v in basis] + [-ai], [den * v[1] for v in basis] + [-bi]]
    ker = integer_kernel(IntMatrix.from_rows(cols, len(basis) + 1))
    g = 0
    for v in ker:
        g = gcd(g, v[-1])
    return abs(g) or None


def pairing_sublattice(gamma: ValueGroup, w: Sequence) -> list[tuple[int, ...]]:
    """Basis of ``{m in Z^n : <m, w> in Gamma}`` (HNF rows; may have rank < n)."""
    n = len(w)
    if gamma.whole_field:
        for x in w:
            gamma.check_mode(to_field(x))
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    basis, scale = gamma._lattice
    ws = [_scaled(to_field(x), scale) for x in w]
    for x in w:
        gamma.check_mode(to_field(x))
    den = _denominator_lcm([c for pair in ws for c in pair])
    rows = [
        [int(p[0] * den) for p in ws] + [-den * v[0] for v in basis],
        [int(p[1] * den) for p in ws] + [-den * v[1] for v in basis],
    ]
    ker = integer_kernel(IntMatrix.from_rows(rows, n + len(basis)))
    return lattice_basis([v[:n] for v in ker], n)


def sublattice_index(basis: Sequence[Sequence[int]], n: int) -> Optional[int]:
    """Index of a full-rank sublattice of Z^n, or None when rank < n."""
    if len(basis) < n:
        return None
    return abs(det(IntMatrix.from_rows(basis, n)))
