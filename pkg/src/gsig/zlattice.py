"""Exact integer linear algebra on row lattices.

Everything here works on plain Python ``int`` so intermediate entries never
overflow.  Lattices are row spans and are always stored in Hermite normal
form (HNF).  Every call to :func:`hnf` and :func:`snf` re-checks its
certificate by multiplication before returning.

>>> H, U = hnf([[1, 1, 1], [1, 0, 0]])
>>> H
[[1, 0, 0], [0, 1, 1]]
>>> U, D, V = snf([[2, 0], [0, 3]])
>>> [D[i][i] for i in range(2)]
[1, 6]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence

IntMatrix = list  # list[list[int]]; rectangular


class LatticeError(ValueError):
    pass


def _check_rect(M: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    widths = {len(r) for r in M}
    if len(widths) > 1:
        raise LatticeError("matrix is not rectangular")
    n = widths.pop() if widths else (ncols or 0)
    if ncols is not None and M and n != ncols:
        raise LatticeError(f"expected {ncols} columns, got {n}")
    return n


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if not A:
        return []
    inner = len(B)
    if len(A[0]) != inner:
        raise LatticeError("dimension mismatch in matmul")
    ncols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * ncols
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vecmat(v: Sequence[int], B: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Row vector times matrix."""
    if not B:
        return [0] * (ncols or 0)
    out = [0] * len(B[0])
    for a, row in zip(v, B):
        if a:
            for j, b in enumerate(row):
                if b:
                    out[j] += a * b
    return out


def transpose(M: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(c) for c in zip(*M)]


def det(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    if any(len(r) != n for r in A):
        raise LatticeError("det of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i = A[i]
            row_k = A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


# --------------------------------------------------------------------------
# Hermite normal form
# --------------------------------------------------------------------------

def _hnf_raw(M: Sequence[Sequence[int]], track: bool = True):
    A = [list(r) for r in M]
    m = len(A)
    n = _check_rect(A)
    U = identity(m) if track else None
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        while True:
            best = None
            for i in range(r, m):
                a = A[i][c]
                if a and (best is None or abs(a) < abs(A[best][c])):
                    best = i
            if best is None:
                break
            if best != r:
                A[r], A[best] = A[best], A[r]
                if track:
                    U[r], U[best] = U[best], U[r]
            p = A[r][c]
            done = True
            for i in range(r + 1, m):
                a = A[i][c]
                if a:
                    q = a // p
                    ri, rr = A[i], A[r]
                    for j in range(c, n):
                        if rr[j]:
                            ri[j] -= q * rr[j]
                    if track:
                        ui, ur = U[i], U[r]
                        for j in range(m):
                            if ur[j]:
                                ui[j] -= q * ur[j]
                    if ri[c]:
                        done = False
            if done:
                break
        if r < m and A[r][c] != 0 and all(A[i][c] == 0 for i in range(r + 1, m)):
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
                if track:
                    U[r] = [-x for x in U[r]]
            p = A[r][c]
            for i in range(r):
                q = A[i][c] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if track:
                        U[i] = [x - q * y for x, y in zip(U[i], U[r])]
            pivots.append(c)
            r += 1
    return A, U, pivots


def hnf(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form ``H = U @ M`` with ``U`` unimodular.

    Zero rows of ``H`` sit at the bottom.  Pivots are positive and the
    entries above each pivot lie in ``[0, pivot)``.
    """
    H, U, _ = _hnf_raw(M)
    if matmul(U, M) != H and M:
        raise AssertionError("HNF certificate failed: U*M != H")
    if abs(det(U)) != 1:
        raise AssertionError("HNF certificate failed: U is not unimodular")
    return H, U


# --------------------------------------------------------------------------
# Smith normal form
# --------------------------------------------------------------------------

def snf(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns ``(U, D, V)`` with ``U @ M @ V == D``.

    ``D`` is diagonal with nonnegative entries ``d_1 | d_2 | ...`` followed by
    zeros.  Pivoting always picks the nonzero entry of least absolute value,
    ties broken by lowest (row, column).
    """
    A = [list(r) for r in M]
    m = len(A)
    n = _check_rect(A)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in A:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
            rest = [(abs(A[i][t]), i, 'r') for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), j, 'c') for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, k, kind = min(rest, key=lambda e: (e[0], e[2] != 'r', e[1]))
                if kind == 'r':
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # fold a non-divisible row into the pivot row and go again
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    if M and matmul(matmul(U, M), V) != A:
        raise AssertionError("SNF certificate failed: U*M*V != D")
    if abs(det(U)) != 1 or abs(det(V)) != 1:
        raise AssertionError("SNF certificate failed: transforms not unimodular")
    diag = [A[i][i] for i in range(min(m, n))]
    for i in range(len(diag) - 1):
        if diag[i] == 0:
            if diag[i + 1] != 0:
                raise AssertionError("SNF diagonal not ordered")
        elif diag[i + 1] % diag[i]:
            raise AssertionError("SNF diagonal breaks the divisibility chain")
    return U, A, V


def inverse_unimodular(V: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer inverse of a unimodular matrix (via its HNF certificate)."""
    n = len(V)
    H, U = hnf(V)
    if H != identity(n):
        raise LatticeError("matrix is not unimodular")
    return U


# --------------------------------------------------------------------------
# Lattices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeBasis:
    """Row lattice in ``Z^dim`` stored as its HNF basis."""

    dim: int
    rows: tuple = ()
    pivots: tuple = field(default=(), compare=False)

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence[int]], dim: int) -> "LatticeBasis":
        gens = [list(map(int, g)) for g in gens if any(g)]
        _check_rect(gens, dim)
        if not gens:
            return cls(dim)
        # fold generators in chunks so certificates stay small for tall inputs
        step = max(dim, 1)
        basis: list = []
        for k in range(0, len(gens), step):
            H, _ = hnf(basis + gens[k:k + step])
            basis = [r for r in H if any(r)]
        rows = tuple(tuple(r) for r in basis)
        pivots = tuple(next(j for j, x in enumerate(r) if x) for r in rows)
        return cls(dim, rows, pivots)

    @classmethod
    def full(cls, dim: int) -> "LatticeBasis":
        return cls.from_generators(identity(dim), dim)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[int]) -> list[int]:
        """Canonical representative of ``v + L``."""
        if len(v) != self.dim:
            raise LatticeError("dimension mismatch")
        v = list(map(int, v))
        for row, c in zip(self.rows, self.pivots):
            q = v[c] // row[c]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return v

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def solve(self, v: Sequence[int]) -> list[int]:
        """Coefficients ``x`` with ``x @ rows == v``; raises if ``v`` is not in L."""
        if len(v) != self.dim:
            raise LatticeError("dimension mismatch")
        v = list(map(int, v))
        x = []
        for row, c in zip(self.rows, self.pivots):
            q, rem = divmod(v[c], row[c])
            if rem:
                raise LatticeError("vector not in lattice")
            x.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        if any(v):
            raise LatticeError("vector not in lattice")
        return x

    def as_lists(self) -> IntMatrix:
        return [list(r) for r in self.rows]


def member(v: Sequence[int], L: LatticeBasis) -> bool:
    return v in L


def lattice_sum(L1: LatticeBasis, L2: LatticeBasis) -> LatticeBasis:
    if L1.dim != L2.dim:
        raise LatticeError("dimension mismatch")
    return LatticeBasis.from_generators(L1.as_lists() + L2.as_lists(), L1.dim)


def canonical_coset_rep(v: Sequence[int], L: LatticeBasis) -> list[int]:
    return L.reduce(v)


def preimage(A: Sequence[Sequence[int]], L: LatticeBasis) -> LatticeBasis:
    """``{v in Z^n : v @ A in L}`` for an ``n x m`` matrix ``A`` and ``L`` in ``Z^m``."""
    n = len(A)
    m = L.dim
    _check_rect(A, m)
    rows = []
    for i in range(n):
        rows.append(list(A[i]) + [int(i == j) for j in range(n)])
    for b in L.rows:
        rows.append(list(b) + [0] * n)
    if not rows:
        return LatticeBasis(n)
    H, _ = hnf(rows)
    kern = [r[m:] for r in H if not any(r[:m]) and any(r[m:])]
    return LatticeBasis.from_generators(kern, n)


def kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> LatticeBasis:
    """Left kernel ``{x : x @ M == 0}``."""
    m = ncols if ncols is not None else (len(M[0]) if M else 0)
    return preimage(M, LatticeBasis(m))


def intersect(L1: LatticeBasis, L2: LatticeBasis) -> LatticeBasis:
    if L1.dim != L2.dim:
        raise LatticeError("dimension mismatch")
    coeffs = preimage(L1.as_lists(), L2)
    return LatticeBasis.from_generators(
        [vecmat(x, L1.rows, L1.dim) for x in coeffs.rows], L1.dim)


# --------------------------------------------------------------------------
# Quotients
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianQuotient:
    """``span(big) / span(small)`` as ``Z/d_1 + ... + Z/d_k`` (``d = 0`` is free).

    ``gens[i]`` is an ambient lift of the generator of the ``i``-th factor,
    and :meth:`coords` maps an ambient vector of ``big`` to its coordinates
    (torsion coordinates reduced modulo their factor).
    """

    factors: tuple
    gens: tuple
    big: LatticeBasis = field(repr=False)
    _V: tuple = field(repr=False, compare=False, default=())
    _keep: tuple = field(repr=False, compare=False, default=())

    @property
    def order(self) -> int | None:
        if any(d == 0 for d in self.factors):
            return None
        return prod(self.factors)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.factors if d == 0)

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.factors if d)

    def coords(self, v: Sequence[int]) -> list[int]:
        x = self.big.solve(v)
        y = vecmat(x, self._V, len(self._V))
        out = []
        for k, d in zip(self._keep, self.factors):
            out.append(y[k] % d if d else y[k])
        return out

    def describe(self) -> str:
        parts = []
        r = self.rank
        tors = self.torsion
        if r:
            parts.append("Z" if r == 1 else f"Z^{r}")
        i = 0
        while i < len(tors):
            j = i
            while j < len(tors) and tors[j] == tors[i]:
                j += 1
            k = j - i
            parts.append(f"Z/{tors[i]}" + (f"^{k}" if k > 1 else ""))
            i = j
        return " + ".join(parts) if parts else "0"


def quotient(big: Sequence[Sequence[int]] | LatticeBasis,
             small: Sequence[Sequence[int]] | LatticeBasis,
             dim: int | None = None) -> AbelianQuotient:
    """Invariant factors of ``span(big) / span(small)`` with generator lifts."""
    if not isinstance(big, LatticeBasis):
        big = LatticeBasis.from_generators(big, dim if dim is not None else len(big[0]))
    if not isinstance(small, LatticeBasis):
        small = LatticeBasis.from_generators(small, big.dim) if small else LatticeBasis(big.dim)
    if small.dim != big.dim:
        raise LatticeError("dimension mismatch")
    for row in small.rows:
        if row not in big:
            raise LatticeError("small lattice is not contained in big lattice")
    r = big.rank
    S = [big.solve(row) for row in small.rows]
    if r == 0:
        return AbelianQuotient((), (), big, (), ())
    if S:
        _, D, V = snf(S)
        diag = [D[i][i] if i < len(D) else 0 for i in range(r)]
    else:
        V = identity(r)
        diag = [0] * r
    Vinv = inverse_unimodular(V)
    keep = [i for i, d in enumerate(diag) if d != 1]
    factors = tuple(diag[i] for i in keep)
    gens = tuple(tuple(vecmat(Vinv[i], big.rows, big.dim)) for i in keep)
    return AbelianQuotient(factors, gens, big, tuple(tuple(r_) for r_ in V), tuple(keep))
