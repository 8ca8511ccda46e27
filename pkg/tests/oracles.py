"""Independent reference computations used by the tests.

Nothing here imports the polyhedral code of the package: facets come from
cross products, memberships from sign checks, lattice points from boxes.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, int(x))
    return tuple(int(x) // g for x in v) if g else tuple(int(x) for x in v)


def facet_normals(rays, d):
    """Primitive inner facet normals of the full-dimensional pointed cone spanned by ``rays``."""
    rays = [tuple(int(x) for x in r) for r in rays]
    cands = set()
    if d == 2:
        for x, y in rays:
            cands.add((-y, x))
            cands.add((y, -x))
    elif d == 3:
        for a, b in itertools.combinations(rays, 2):
            c = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
            if any(c):
                cands.add(c)
                cands.add(tuple(-x for x in c))
    else:
        raise ValueError("only d = 2, 3")
    out = set()
    for c in cands:
        if all(sum(p * q for p, q in zip(c, r)) >= 0 for r in rays):
            tight = [r for r in rays if sum(p * q for p, q in zip(c, r)) == 0]
            if tight and np.linalg.matrix_rank(np.array(tight, dtype=float)) == d - 1:
                out.add(_primitive(c))
    return sorted(out)


def _norm(row):
    g = 0
    for v in row:
        g = math.gcd(g, v)
    return tuple(v // g for v in row) if g else row


def _eliminate(system, j, d):
    """Fourier-Motzkin elimination of y_j; rows are (y-coefs + x-coefs) meaning row . (y, x) >= 0."""
    keep, pos, neg = set(), [], []
    for r in system:
        if r[j] > 0:
            pos.append(r)
        elif r[j] < 0:
            neg.append(r)
        else:
            keep.add(r)
    for p_ in pos:
        for q in neg:
            comb = tuple(-q[j] * a + p_[j] * b for a, b in zip(p_, q))
            if any(comb):
                keep.add(_norm(comb))
    return sorted(keep)


def _summand_systems(N, d):
    """Projected systems S_1 .. S_d for the polytope {y : N y >= 0, N (x - y) >= 0}."""
    rows = set()
    for a in N:
        a = tuple(int(v) for v in a)
        rows.add(a + (0,) * d)
        rows.add(tuple(-v for v in a) + a)
    systems = [sorted(rows)]
    for j in range(d - 1, 0, -1):
        systems.append(_eliminate(systems[-1], j, d))
    return systems[::-1]  # systems[k] involves y_0 .. y_k


def _summands(systems, x, d):
    """Lattice points of C and (x - C), coordinate by coordinate."""
    def rec(prefix):
        k = len(prefix)
        lo, hi = None, None
        for r in systems[k]:
            a = r[k]
            rest = sum(r[i] * prefix[i] for i in range(k)) + sum(r[d + i] * x[i] for i in range(d))
            if a > 0:
                b = -(rest // a)  # ceil(-rest / a)
                lo = b if lo is None else max(lo, b)
            elif a < 0:
                b = rest // (-a)
                hi = b if hi is None else min(hi, b)
            elif rest < 0:
                return
        for v in range(lo, hi + 1):
            if k + 1 == d:
                yield prefix + (v,)
            else:
                yield from rec(prefix + (v,))
    yield from rec(())


def brute_irreducibles(rays, d, bound=6):
    """Irreducible lattice points of the cone with all coordinates in ``[-bound, bound]``.

    A point x is reducible when some lattice point y other than 0 and x has
    both y and x - y in the cone; summands may leave the box.
    """
    N = facet_normals(rays, d)
    Na = np.array(N, dtype=np.int64)
    box = np.array(list(itertools.product(range(-bound, bound + 1), repeat=d)), dtype=np.int64)
    inside = box[(box @ Na.T >= 0).all(axis=1) & (box != 0).any(axis=1)]
    systems = _summand_systems(N, d)
    out = set()
    for x in inside:
        x = tuple(int(v) for v in x)
        zero = (0,) * d
        if not any(y != zero and y != x for y in _summands(systems, x, d)):
            out.add(x)
    return out


def covered(fan, points):
    """Whether every point satisfies all rows of some maximal cone of the fan."""
    for p in points:
        w, t = p[:-1], p[-1]
        hit = False
        for cone in fan.cones:
            if cone.t_equality and t != 0:
                continue
            if all(sum(a * b for a, b in zip(m, w)) + c * t >= 0 for m, c in cone.inequalities):
                hit = True
                break
        if not hit:
            return False
    return True


def coverage_points(rng, n, count=1000):
    """Exact rational points of ``t >= 0``, including some on ``t = 0``."""
    pts = []
    for k in range(count):
        w = tuple(Fraction(rng.randint(-60, 60), rng.randint(1, 4)) for _ in range(n))
        t = Fraction(0) if k % 10 == 0 else Fraction(rng.randint(1, 30), rng.randint(1, 4))
        pts.append(w + (t,))
    return pts
