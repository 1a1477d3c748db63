"""Small exact linear algebra helpers on tuple-of-tuples matrices.

Everything here works over Fraction (or int where noted); matrix sizes in
this package are tiny (at most 6x6), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import DomainError

Matrix = tuple[tuple[Fraction, ...], ...]


def as_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def as_int_matrix(rows) -> tuple[tuple[int, ...], ...]:
    out = []
    for row in rows:
        new_row = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise DomainError(f"expected integer entry, got {f}")
            new_row.append(f.numerator)
        out.append(tuple(new_row))
    return tuple(out)


def dims(m) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(c)) for _ in range(r))


def transpose(m) -> Matrix:
    r, c = dims(m)
    return tuple(tuple(m[i][j] for i in range(r)) for j in range(c))


def mat_mul(a, b) -> Matrix:
    ra, ca = dims(a)
    rb, cb = dims(b)
    if ca != rb:
        raise DomainError(f"matrix shape mismatch: {ra}x{ca} times {rb}x{cb}")
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(ca)), Fraction(0)) for j in range(cb))
        for i in range(ra)
    )


def mat_add(a, b) -> Matrix:
    if dims(a) != dims(b):
        raise DomainError("matrix shape mismatch in addition")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, c) -> Matrix:
    return tuple(tuple(Fraction(c) * x for x in row) for row in a)


def mat_vec(m, v) -> tuple[Fraction, ...]:
    r, c = dims(m)
    if len(v) != c:
        raise DomainError("matrix/vector shape mismatch")
    return tuple(sum((m[i][j] * v[j] for j in range(c)), Fraction(0)) for i in range(r))


def vec_dot(u, v) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def is_symmetric(m) -> bool:
    r, c = dims(m)
    return r == c and all(m[i][j] == m[j][i] for i in range(r) for j in range(r))


def is_integral(m) -> bool:
    return all(Fraction(x).denominator == 1 for row in m for x in row)


def determinant(m) -> Fraction:
    """Fraction Gaussian elimination; exact."""
    n, c = dims(m)
    if n != c:
        raise DomainError("determinant of non-square matrix")
    a = [list(row) for row in as_matrix(m)]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] * inv
                for k in range(col, n):
                    a[r][k] -= factor * a[col][k]
    return det


def inverse(m) -> Matrix:
    n, c = dims(m)
    if n != c:
        raise DomainError("inverse of non-square matrix")
    a = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(as_matrix(m))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise DomainError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def smith_normal_form(m) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Return (D, U, V) with D = U m V, U and V unimodular, D diagonal
    with the divisibility chain d1 | d2 | ... and nonnegative entries."""
    a = [list(row) for row in as_int_matrix(m)]
    n_rows, n_cols = dims(a)
    u = [[1 if i == j else 0 for j in range(n_rows)] for i in range(n_rows)]
    v = [[1 if i == j else 0 for j in range(n_cols)] for i in range(n_cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    n = min(n_rows, n_cols)
    for t in range(n):
        # move a nonzero pivot of minimal magnitude to (t, t)
        while True:
            entries = [
                (abs(a[i][j]), i, j)
                for i in range(t, n_rows)
                for j in range(t, n_cols)
                if a[i][j] != 0
            ]
            if not entries:
                break
            _, pi, pj = min(entries)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            done = True
            for i in range(t + 1, n_rows):
                if a[i][t]:
                    row_op(i, t, a[i][t] // a[t][t])
                    done = done and a[i][t] == 0
            for j in range(t + 1, n_cols):
                if a[t][j]:
                    col_op(j, t, a[t][j] // a[t][t])
                    done = done and a[t][j] == 0
            if done and all(a[i][t] == 0 for i in range(t + 1, n_rows)) and all(
                a[t][j] == 0 for j in range(t + 1, n_cols)
            ):
                # enforce divisibility of the remaining block by the pivot
                bad = None
                for i in range(t + 1, n_rows):
                    for j in range(t + 1, n_cols):
                        if a[i][j] % a[t][t] != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_op(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    d = tuple(tuple(row) for row in a)
    return d, tuple(tuple(row) for row in u), tuple(tuple(row) for row in v)


def inertia(m) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric rational
    matrix, by exact congruence reduction (2x2 pivot blocks when the whole
    diagonal vanishes)."""
    a = [list(row) for row in as_matrix(m)]
    n, c = dims(a)
    if n != c or not is_symmetric(a):
        raise DomainError("inertia needs a symmetric square matrix")
    pos = neg = zero = 0
    while a:
        k = len(a)
        diag = next((i for i in range(k) if a[i][i] != 0), None)
        if diag is not None:
            p = a[diag][diag]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(k) if i != diag]
            a = [[a[i][j] - a[i][diag] * a[diag][j] / p for j in rest] for i in rest]
            continue
        off = None
        for i in range(k):
            for j in range(i + 1, k):
                if a[i][j] != 0:
                    off = (i, j)
                    break
            if off:
                break
        if off is None:
            zero += k
            break
        i0, j0 = off
        # the block [[0, b], [b, 0]] contributes one of each sign
        pos += 1
        neg += 1
        b = a[i0][j0]
        rest = [i for i in range(k) if i not in (i0, j0)]
        # Schur complement of the invertible 2x2 block: inv = [[0, 1/b], [1/b, 0]]
        a = [
            [
                a[i][j] - (a[i][i0] * a[j0][j] + a[i][j0] * a[i0][j]) / b
                for j in rest
            ]
            for i in rest
        ]
    return pos, neg, zero


def is_positive_definite(m) -> bool:
    try:
        p, n, z = inertia(m)
    except DomainError:
        return False
    return n == 0 and z == 0 and p == dims(m)[0]


def quadratic_decomposition(g) -> list[tuple[Fraction, tuple[Fraction, ...]]]:
    """Write x^T g x = sum_i d_i (x_i + sum_{j>i} r_ij x_j)^2 for positive
    definite g; returns [(d_i, row_i)] with row_i[i] = 1."""
    a = [list(row) for row in as_matrix(g)]
    n = len(a)
    out = []
    for i in range(n):
        d = a[i][i]
        if d <= 0:
            raise DomainError("quadratic decomposition requires a positive definite matrix")
        row = [Fraction(0)] * i + [Fraction(1)] + [a[i][j] / d for j in range(i + 1, n)]
        out.append((d, tuple(row)))
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] -= a[r][i] * a[i][c] / d
    return out


def _floor_sqrt_fraction(x: Fraction) -> int:
    """floor(sqrt(x)) for x >= 0."""
    if x < 0:
        raise DomainError("sqrt of negative rational")
    num, den = x.numerator, x.denominator
    r = isqrt(num * den) // den
    while (r + 1) * (r + 1) <= x:
        r += 1
    while r * r > x:
        r -= 1
    return r


def _int_range_for_square_bound(center: Fraction, radius_sq: Fraction) -> range:
    """Integers x with (x - center)^2 <= radius_sq."""
    if radius_sq < 0:
        return range(0)
    s = _floor_sqrt_fraction(radius_sq)
    lo_guess = int(center) - s - 2
    hi_guess = int(center) + s + 2
    lo = lo_guess
    while (lo - center) ** 2 > radius_sq:
        lo += 1
        if lo > hi_guess:
            return range(0)
    hi = hi_guess
    while (hi - center) ** 2 > radius_sq:
        hi -= 1
    return range(lo, hi + 1)


def enumerate_shifted_lattice(g, shift, bound, strict: bool = False):
    """All integer vectors k with (k + shift)^T g (k + shift) <= bound
    (< bound when strict), for positive definite rational g.

    Works backwards through the square decomposition so every coordinate
    range is exact; no lattice point is ever missed.
    """
    n = len(shift)
    if n == 0:
        if (bound > 0) or (bound == 0 and not strict):
            yield ()
        return
    decomp = quadratic_decomposition(g)
    shift = tuple(Fraction(s) for s in shift)
    bound = Fraction(bound)

    def rec(i, remaining, chosen):
        # chosen holds x_j = k_j + shift_j for j > i, in reverse order
        if i < 0:
            yield tuple()
            return
        d, row = decomp[i]
        tail = sum((row[j] * chosen[n - 1 - j] for j in range(i + 1, n)), Fraction(0))
        center = -(shift[i] + tail)
        for k in _int_range_for_square_bound(center, remaining / d):
            x = k + shift[i] + tail
            used = d * x * x
            if used > remaining:
                continue
            for rest in rec(i - 1, remaining - used, chosen + [k + shift[i]]):
                yield rest + (k,)

    for vec in rec(n - 1, bound, []):
        value = vec_dot(mat_vec(g, [v + s for v, s in zip(vec, shift)]), [v + s for v, s in zip(vec, shift)])
        if strict and value >= bound:
            continue
        yield vec
