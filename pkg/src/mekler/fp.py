"""Dense linear algebra over the prime field F_p.

Vectors are tuples of ints in ``range(p)``; matrices are lists of rows.
Everything here is exact and small-scale: the dimensions involved in this
package rarely exceed a few dozen, so plain Python row operations beat the
overhead of array libraries.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Sequence

Vector = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def zero(n: int) -> Vector:
    return (0,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(n))


def add(u: Sequence[int], v: Sequence[int], p: int) -> Vector:
    return tuple((a + b) % p for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int], p: int) -> Vector:
    return tuple((a - b) % p for a, b in zip(u, v))


def scale(c: int, v: Sequence[int], p: int) -> Vector:
    return tuple((c * a) % p for a in v)


def combine(coeffs: Sequence[int], vectors: Sequence[Sequence[int]], dim: int, p: int) -> Vector:
    """Return sum(c_i * v_i) mod p."""
    out = [0] * dim
    for c, v in zip(coeffs, vectors):
        if c % p:
            for k, a in enumerate(v):
                out[k] += c * a
    return tuple(x % p for x in out)


def normalize(v: Sequence[int], p: int) -> Vector:
    """Scale ``v`` so that its first nonzero entry is 1 (zero stays zero)."""
    for a in v:
        if a % p:
            return scale(pow(a, -1, p), v, p)
    return tuple(a % p for a in v)


def rref(rows: Iterable[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p.

    Returns the nonzero rows of the RREF and the pivot column of each row.
    """
    m = [[x % p for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Iterable[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[1])


def row_space(rows: Iterable[Sequence[int]], p: int) -> tuple[Vector, ...]:
    """Canonical basis (the RREF rows) of the span of ``rows``."""
    return tuple(tuple(r) for r in rref(rows, p)[0])


def kernel(matrix: Sequence[Sequence[int]], ncols: int, p: int) -> tuple[Vector, ...]:
    """Basis of {x : matrix @ x = 0}, returned in canonical (RREF) form."""
    red, pivots = rref(matrix, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(red, pivots):
            x[pc] = (-row[f]) % p
        basis.append(x)
    return row_space(basis, p)


def is_independent(vectors: Sequence[Sequence[int]], p: int) -> bool:
    return rank(vectors, p) == len(vectors)


def in_span(v: Sequence[int], span: Sequence[Sequence[int]], p: int) -> bool:
    if not span:
        return not any(x % p for x in v)
    return rank(list(span) + [v], p) == rank(span, p)


def solve(vectors: Sequence[Sequence[int]], target: Sequence[int], p: int) -> Vector | None:
    """Coefficients c with sum(c_i * vectors[i]) == target, or None.

    Free coefficients are set to zero, so the answer is unique when the
    vectors are independent.
    """
    n = len(vectors)
    dim = len(target)
    # columns are the vectors; augment with target
    aug = [[vectors[j][i] for j in range(n)] + [target[i]] for i in range(dim)]
    red, pivots = rref(aug, p)
    if n in pivots:
        return None
    x = [0] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return tuple(x)


def dependency(vectors: Sequence[Sequence[int]], p: int) -> Vector | None:
    """A nonzero coefficient vector c with sum(c_i v_i) = 0, or None if independent."""
    n = len(vectors)
    if n == 0:
        return None
    dim = len(vectors[0])
    cols = [[vectors[j][i] for j in range(n)] for i in range(dim)]
    ker = kernel(cols, n, p)
    return ker[0] if ker else None


def span_elements(basis: Sequence[Sequence[int]], dim: int, p: int) -> Iterator[Vector]:
    """Every vector of span(basis), each exactly once if basis is independent."""
    for coeffs in product(range(p), repeat=len(basis)):
        yield combine(coeffs, basis, dim, p)


def projective_points(basis: Sequence[Sequence[int]], dim: int, p: int) -> Iterator[Vector]:
    """One normalized representative of every line in span(basis)."""
    k = len(basis)
    for lead in range(k):
        for tail in product(range(p), repeat=k - lead - 1):
            coeffs = (0,) * lead + (1,) + tail
            yield combine(coeffs, basis, dim, p)


def all_vectors(dim: int, p: int) -> Iterator[Vector]:
    return product(range(p), repeat=dim)

