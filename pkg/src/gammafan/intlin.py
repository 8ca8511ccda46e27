"""Integer linear algebra: Hermite and Smith normal forms, integer solving.

All routines work on plain Python ints and return unimodular transforms so
callers can verify results by multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("cols required for an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls(m, n, tuple((0,) * n for _ in range(m)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _as_matrix(A) -> IntMatrix:
    if isinstance(A, IntMatrix):
        return A
    return IntMatrix.from_rows(A)


def hnf(A) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: ``H == U @ A`` with ``U`` unimodular.

    Pivots are positive and entries above a pivot are reduced into
    ``[0, pivot)``; zero rows sink to the bottom.
    """
    A = _as_matrix(A)
    m, n = A.rows, A.cols
    H = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def addrow(dst, src, k):
        if k:
            H[dst] = [a - k * b for a, b in zip(H[dst], H[src])]
            U[dst] = [a - k * b for a, b in zip(U[dst], U[src])]

    def swap(i, j):
        H[i], H[j] = H[j], H[i]
        U[i], U[j] = U[j], U[i]

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][c]))
            swap(r, p)
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    addrow(i, r, H[i][c] // H[r][c])
                    if H[i][c]:
                        done = False
            if done:
                break
        if all(H[i][c] == 0 for i in range(r, m)):
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            addrow(i, r, H[i][c] // H[r][c])
        r += 1
    return IntMatrix(m, n, tuple(map(tuple, H))), IntMatrix(m, m, tuple(map(tuple, U)))


def snf(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``S == U @ A @ V`` with ``U``, ``V`` unimodular.

    The diagonal is nonnegative and each entry divides the next.
    """
    A = _as_matrix(A)
    m, n = A.rows, A.cols
    S = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def rowop(dst, src, k):  # row_dst -= k * row_src
        S[dst] = [a - k * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - k * b for a, b in zip(U[dst], U[src])]

    def colop(dst, src, k):  # col_dst -= k * col_src
        for row in S:
            row[dst] -= k * row[src]
        for row in V:
            row[dst] -= k * row[src]

    def rowswap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def colswap(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            cand = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
            if not cand:
                break
            _, pi, pj = min(cand)
            rowswap(t, pi)
            colswap(t, pj)
            p = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    rowop(i, t, S[i][t] // p)
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    colop(j, t, S[t][j] // p)
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            rowop(t, bad, -1)
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return (
        IntMatrix(m, n, tuple(map(tuple, S))),
        IntMatrix(m, m, tuple(map(tuple, U))),
        IntMatrix(n, n, tuple(map(tuple, V))),
    )


def diagonal(S: IntMatrix) -> list[int]:
    return [S[i, i] for i in range(min(S.rows, S.cols))]


def solve_integer(A, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Some integer ``x`` with ``A x == b``, or ``None`` when none exists."""
    A = _as_matrix(A)
    if len(b) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    S, U, V = snf(A)
    c = U.apply(b)
    y = [0] * A.cols
    for i in range(A.rows):
        s = S[i, i] if i < A.cols else 0
        if s == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % s:
                return None
            y[i] = c[i] // s
    return V.apply(y)


def integer_kernel(A) -> list[tuple[int, ...]]:
    """A basis of ``{x in Z^n : A x = 0}`` in Hermite normal form."""
    A = _as_matrix(A)
    S, _, V = snf(A)
    rank = sum(1 for d in diagonal(S) if d)
    basis = [tuple(V[i, j] for i in range(A.cols)) for j in range(rank, A.cols)]
    return lattice_basis(basis, A.cols)


def lattice_basis(vectors: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """HNF basis (nonzero rows) of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    H, _ = hnf(IntMatrix.from_rows(vectors, n))
    return [r for r in H.entries if any(r)]


def saturate(vectors: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Basis of ``span_Q(vectors) ∩ Z^n``."""
    if not vectors:
        return []
    # kernel of the kernel: the saturated lattice is the integer kernel of
    # a matrix whose rows span the orthogonal complement
    perp = integer_kernel(IntMatrix.from_rows(vectors, n))
    if not perp:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return integer_kernel(IntMatrix.from_rows(perp, n))


def unimodular_completion(basis: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """Unimodular ``W`` whose first ``len(basis)`` rows span the same lattice.

    ``basis`` must be a basis of a saturated sublattice of ``Z^n``.
    """
    k = len(basis)
    if k == 0:
        return IntMatrix.identity(n)
    B = IntMatrix.from_rows(basis, n)
    S, U, V = snf(B)
    if any(d != 1 for d in diagonal(S)):
        raise ValueError("sublattice is not saturated")
    # B = U^-1 [I 0] V^-1, so the rows of V^-1 complete the basis
    # so [B; rows k.. of V^-1] = diag(U^-1, I) V^-1 is unimodular
    Vinv = inverse_unimodular(V)
    return IntMatrix.from_rows(list(B.entries) + list(Vinv.entries[k:]), n)


def inverse_unimodular(A: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix."""
    n = A.rows
    aug = [list(A.entries[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    H, _ = hnf(IntMatrix.from_rows(aug, 2 * n))
    left = [r[:n] for r in H.entries]
    if any(left[i][j] != int(i == j) for i in range(n) for j in range(n)):
        raise ValueError("matrix is not unimodular")
    return IntMatrix.from_rows([r[n:] for r in H.entries], n)


def det(A) -> int:
    A = _as_matrix(A)
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    # fraction-free Bareiss elimination
    n = A.rows
    M = [list(r) for r in A.entries]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * (M[n - 1][n - 1] if n else 1)


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
