"""Exact linear algebra over Q: Bareiss determinants and sparse echelon rank."""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, Sequence

from gmpy2 import gcd, mpq, mpz


def bareiss_det(matrix: Sequence[Sequence]) -> mpz:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return mpz(1)
    a = [[mpz(x) for x in row] for row in matrix]
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return mpz(0)
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = mpz(0)
        prev = akk
    return sign * a[n - 1][n - 1]


def rational_det(matrix: Sequence[Sequence]) -> mpq:
    """Determinant of a rational matrix: clear denominators row-wise, then Bareiss."""
    scale = mpq(1)
    rows = []
    for row in matrix:
        row = [mpq(x) for x in row]
        den = mpz(1)
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        scale /= den
        rows.append([mpz(x * den) for x in row])
    return mpq(bareiss_det(rows)) * scale


SparseVec = Dict[Hashable, mpq]


class EchelonBasis:
    """Incremental row echelon form of sparse vectors.

    ``key`` orders coordinates; the pivot of a vector is its key-minimal
    coordinate.  ``add`` reduces a vector against the stored pivots and keeps
    it when something survives, so ``rank`` is the dimension of the span.
    """

    def __init__(self, key=None):
        self.key = key if key is not None else (lambda c: c)
        self.pivots: Dict[Hashable, SparseVec] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, vec: SparseVec) -> bool:
        v = {c: mpq(x) for c, x in vec.items() if x != 0}
        key = self.key
        pivots = self.pivots
        while v:
            lead = min(v, key=key)
            row = pivots.get(lead)
            if row is None:
                inv = 1 / v[lead]
                pivots[lead] = {c: x * inv for c, x in v.items()}
                return True
            factor = v[lead]
            for c, x in row.items():
                nx = v.get(c, 0) - factor * x
                if nx:
                    v[c] = nx
                else:
                    v.pop(c, None)
        return False

    def extend(self, vecs: Iterable[SparseVec]) -> int:
        for vec in vecs:
            self.add(vec)
        return self.rank


def sparse_rank(vectors: Iterable[SparseVec], key=None) -> int:
    basis = EchelonBasis(key)
    return basis.extend(vectors)

