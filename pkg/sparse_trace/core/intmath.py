"""
intmath.py - Exact integer and rational matrix helpers.

Vectors are plain tuples/lists of Python ints; matrices are given as lists of
columns unless stated otherwise. Nothing in here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

Vector = Tuple[int, ...]


def _combine(u: Sequence[int], v: Sequence[int], a: int, b: int) -> List[int]:
    return [a * x + b * y for x, y in zip(u, v)]


def echelon_columns(
    columns: Sequence[Sequence[int]], dim: int
) -> Tuple[List[List[int]], List[List[int]], int]:
    """
    Hermite-style column echelon form with the unimodular transform.

    Rows are processed from the last coordinate to the first. In each row the
    entries of the still unused columns are folded by extended gcd into the
    rightmost unused column, which becomes the pivot; columns to its right are
    then reduced modulo the pivot. The order of operations is fixed, so the
    result is reproducible.

    Args:
        columns (Sequence[Sequence[int]]): Generators, each of length ``dim``.
        dim (int): Length of each generator.

    Returns:
        Tuple[List[List[int]], List[List[int]], int]: The transformed columns
        ``H``, the transform ``U`` (column ``j`` of ``U`` holds the
        coefficients of ``H[j]`` in the input generators) and the number of
        leading zero columns. ``H[zeros:]`` is a basis of the generated lattice
        ordered by increasing pivot row; with full rank ``H[zeros]`` is
        ``k * e_1``.
    """
    cols = [list(map(int, c)) for c in columns]
    m = len(cols)
    trans = [[1 if i == j else 0 for i in range(m)] for j in range(m)]
    pivot = m - 1

    for row in reversed(range(dim)):
        if pivot < 0:
            break
        for j in range(pivot):
            b = cols[j][row]
            if b == 0:
                continue
            a = cols[pivot][row]
            x, y, g = (int(v) for v in ZZ.gcdex(ZZ(a), ZZ(b)))
            p, q = -b // g, a // g
            cols[pivot], cols[j] = _combine(cols[pivot], cols[j], x, y), _combine(cols[pivot], cols[j], p, q)
            trans[pivot], trans[j] = _combine(trans[pivot], trans[j], x, y), _combine(trans[pivot], trans[j], p, q)

        lead = cols[pivot][row]
        if lead == 0:
            continue
        if lead < 0:
            cols[pivot] = [-v for v in cols[pivot]]
            trans[pivot] = [-v for v in trans[pivot]]
            lead = -lead
        for k in range(pivot + 1, m):
            q = cols[k][row] // lead
            if q:
                cols[k] = _combine(cols[k], cols[pivot], 1, -q)
                trans[k] = _combine(trans[k], trans[pivot], 1, -q)
        pivot -= 1

    return cols, trans, pivot + 1


def lattice_basis(columns: Sequence[Sequence[int]], dim: int) -> List[Vector]:
    """Deterministic echelon basis of the lattice generated by ``columns``."""
    if not columns:
        return []
    cols, _, zeros = echelon_columns(columns, dim)
    return [tuple(c) for c in cols[zeros:]]


def divisibility_chain(values: Sequence[int]) -> List[int]:
    """Rearrange positive diagonal entries into ``k1 | k2 | ... | kr`` keeping the product."""
    d = sorted(abs(int(v)) for v in values)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return d


def invariant_factors(basis: Sequence[Sequence[int]], dim: int) -> List[int]:
    """Invariant factors of the lattice spanned by the (independent) ``basis`` columns."""
    if not basis:
        return []
    snf = smith_normal_form(columns_to_matrix(basis, dim), domain=ZZ)
    diag = [int(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
    return divisibility_chain(diag)


def columns_to_matrix(columns: Sequence[Sequence[int]], dim: int) -> Matrix:
    if not columns:
        return Matrix.zeros(dim, 0)
    return Matrix([[int(c[i]) for c in columns] for i in range(dim)])


def matrix_to_columns(matrix: Matrix) -> List[Vector]:
    return [tuple(int(matrix[i, j]) for i in range(matrix.rows)) for j in range(matrix.cols)]


def to_fraction(value: Rational) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 1
    return int(Matrix([list(map(int, r)) for r in rows]).det(method="bareiss"))


def unimodular_inverse(columns: Sequence[Sequence[int]]) -> List[Vector]:
    """Inverse of a unimodular matrix given by columns, returned by columns."""
    n = len(columns)
    inv = columns_to_matrix(columns, n).inv()
    out = []
    for j in range(n):
        col = []
        for i in range(n):
            entry = Rational(inv[i, j])
            if entry.q != 1:
                raise ValueError("Matrix is not unimodular.")
            col.append(int(entry))
        out.append(tuple(col))
    return out


def coordinates_solver(
    columns: Sequence[Sequence[int]], dim: int
) -> Callable[[Sequence[int]], Optional[Tuple[Fraction, ...]]]:
    """
    Build an exact solver for ``B y = v`` where ``B`` has independent columns.

    Returns:
        Callable: maps ``v`` to its rational coordinates ``y``, or ``None``
        when ``v`` is not in the rational span of the columns.
    """
    B = columns_to_matrix(columns, dim)
    if B.cols == 0:
        return lambda v: () if all(int(x) == 0 for x in v) else None
    left = (B.T * B).inv() * B.T

    def solve(v: Sequence[int]) -> Optional[Tuple[Fraction, ...]]:
        vec = Matrix([int(x) for x in v])
        y = left * vec
        if B * y != vec:
            return None
        return tuple(to_fraction(y[i]) for i in range(y.rows))

    return solve


def integral_coordinates(
    columns: Sequence[Sequence[int]], dim: int
) -> Callable[[Sequence[int]], Optional[Vector]]:
    """Like :func:`coordinates_solver` but only accepts integral coordinates."""
    solve = coordinates_solver(columns, dim)

    def coords(v: Sequence[int]) -> Optional[Vector]:
        y = solve(v)
        if y is None or any(c.denominator != 1 for c in y):
            return None
        return tuple(int(c) for c in y)

    return coords


def primitive(vector: Sequence[int]) -> Vector:
    g = 0
    for v in vector:
        g = gcd(g, int(v))
    if g == 0:
        return tuple(int(v) for v in vector)
    return tuple(int(v) // g for v in vector)


def hyperplane_normal(points: Sequence[Sequence[int]]) -> Optional[Vector]:
    """
    Primitive integer normal of the hyperplane through ``dim`` affinely
    independent points in ``Z^dim``; ``None`` when they are dependent.
    """
    base = points[0]
    diffs = Matrix([[int(p[i]) - int(base[i]) for i in range(len(base))] for p in points[1:]])
    null = diffs.nullspace()
    if len(null) != 1:
        return None
    vec = null[0]
    denom = 1
    for entry in vec:
        q = Rational(entry).q
        denom = denom * q // gcd(denom, q)
    return primitive([int(Rational(entry) * denom) for entry in vec])


def unimodular_completion(vector: Sequence[int]) -> List[Vector]:
    """
    Columns of a unimodular matrix whose first column is the primitive ``vector``.
    """
    r = len(vector)
    _, trans, _ = echelon_columns([[int(v)] for v in vector], 1)
    # trans^T maps vector to e_r, so the last column of (trans^T)^-1 is vector.
    transposed = [tuple(trans[j][i] for j in range(r)) for i in range(r)]
    inv = unimodular_inverse(transposed)
    if tuple(inv[-1]) != tuple(int(v) for v in vector):
        raise ValueError(f"Vector {tuple(vector)} is not primitive.")
    return [inv[-1]] + inv[:-1]
