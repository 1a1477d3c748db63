"""Even Gram matrices, discriminant groups, Gauss sums, and block assembly.

A Gram matrix here is a symmetric integer matrix with even diagonal.  Its
discriminant group A = S^{-1}Z^e / Z^e carries the quadratic form
Q(x) = x^T S x / 2 and the bilinear pairing <x, y> = x^T S y, both mod 1.
Elements are represented by coordinate tuples of Fractions in [0, 1),
canonically ordered lexicographically.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from . import _linalg as la
from .errors import DomainError, InternalError, InvalidIndexError
from .exact import CyclotomicNumber, QmodZ, e_of, mod1

Coords = tuple[Fraction, ...]


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = la.as_int_matrix(self.entries)
        n = len(entries)
        for row in entries:
            if len(row) != n:
                raise DomainError("Gram matrix must be square")
        for i in range(n):
            if entries[i][i] % 2 != 0:
                raise DomainError(f"Gram matrix diagonal must be even, got {entries[i][i]} at {i}")
            for j in range(n):
                if entries[i][j] != entries[j][i]:
                    raise DomainError("Gram matrix must be symmetric")
        object.__setattr__(self, "entries", entries)

    @property
    def size(self) -> int:
        return len(self.entries)

    def det(self) -> int:
        d = la.determinant(self.entries)
        return d.numerator

    def __neg__(self) -> "GramMatrix":
        return GramMatrix(tuple(tuple(-x for x in row) for row in self.entries))

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def __repr__(self):
        return f"GramMatrix({self.to_json()})"


def gram(rows) -> GramMatrix:
    return GramMatrix(tuple(tuple(int(x) for x in row) for row in rows))


def reduce_coords(vec) -> Coords:
    return tuple(mod1(Fraction(x)) for x in vec)


def q_value_raw(s: GramMatrix, vec) -> Fraction:
    """Q(x) = x^T S x / 2 as an actual rational (no mod-1 reduction)."""
    v = [Fraction(x) for x in vec]
    if len(v) != s.size:
        raise DomainError("vector length does not match Gram matrix size")
    return la.vec_dot(la.mat_vec(s.entries, v), v) / 2


def q_value(s: GramMatrix, gamma) -> QmodZ:
    return QmodZ(q_value_raw(s, gamma))


def pairing_raw(s: GramMatrix, gamma, beta) -> Fraction:
    g = [Fraction(x) for x in gamma]
    b = [Fraction(x) for x in beta]
    if len(g) != s.size or len(b) != s.size:
        raise DomainError("vector length does not match Gram matrix size")
    return la.vec_dot(la.mat_vec(s.entries, b), g)


def pairing(s: GramMatrix, gamma, beta) -> QmodZ:
    return QmodZ(pairing_raw(s, gamma, beta))


def signature(s: GramMatrix) -> int:
    pos, neg, zero = la.inertia(s.entries)
    if zero:
        raise DomainError("Gram matrix is singular")
    return pos - neg


class DiscriminantGroup:
    """The finite quadratic module attached to a nondegenerate Gram matrix."""

    def __init__(self, gram_matrix: GramMatrix):
        if gram_matrix.size and gram_matrix.det() == 0:
            raise DomainError("Gram matrix is singular")
        self.gram = gram_matrix
        e = gram_matrix.size
        if e == 0:
            elements: list[Coords] = [()]
        else:
            d, u, v = la.smith_normal_form(gram_matrix.entries)
            diag = [d[i][i] for i in range(e)]
            elements = []
            counters = [0] * e

            def emit(counters):
                frac = [Fraction(counters[i], diag[i]) for i in range(e)]
                vec = [
                    sum((Fraction(v[i][j]) * frac[j] for j in range(e)), Fraction(0))
                    for i in range(e)
                ]
                elements.append(reduce_coords(vec))

            total = 1
            for dd in diag:
                total *= dd
            for flat in range(total):
                rem = flat
                for i in range(e):
                    counters[i] = rem % diag[i]
                    rem //= diag[i]
                emit(counters)
            elements = sorted(set(elements))
            if len(elements) != abs(gram_matrix.det()):
                raise InternalError("discriminant enumeration missed cosets")
        self.elements: tuple[Coords, ...] = tuple(elements)
        self.order = len(self.elements)
        self._index = {coords: i for i, coords in enumerate(self.elements)}
        self._q = tuple(mod1(q_value_raw(gram_matrix, c)) for c in self.elements)
        self.level = lcm(1, *[q.denominator for q in self._q]) if e else 1
        self.signature = signature(gram_matrix) if e else 0
        self._neg = tuple(
            self._index[reduce_coords([-x for x in c])] for c in self.elements
        )

    @property
    def signature_mod8(self) -> int:
        return self.signature % 8

    def index_of(self, vec) -> int:
        coords = reduce_coords(vec)
        try:
            return self._index[coords]
        except KeyError:
            raise DomainError(f"{coords} is not an element of the discriminant group") from None

    def contains(self, vec) -> bool:
        return reduce_coords(vec) in self._index

    def neg_index(self, i: int) -> int:
        return self._neg[i]

    def q_of(self, i: int) -> Fraction:
        """Q(gamma_i) reduced to [0, 1)."""
        return self._q[i]

    def pair(self, i: int, j: int) -> Fraction:
        return mod1(pairing_raw(self.gram, self.elements[i], self.elements[j]))

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, DiscriminantGroup) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"DiscriminantGroup(|A|={self.order}, level={self.level}, sig={self.signature})"


@lru_cache(maxsize=None)
def discriminant_group(s: GramMatrix) -> DiscriminantGroup:
    return DiscriminantGroup(s)


def gauss_sum(s: GramMatrix) -> CyclotomicNumber:
    """G = sum over A of e(Q(gamma)), in Q(zeta_level).

    Realizes sqrt(|A|) * e(sig/8) exactly (Milgram); the function verifies
    G * conj(G) = |A| and the embedded phase against the signature, raising
    InternalError on failure since that would mean a library bug.
    """
    a = discriminant_group(s)
    total = CyclotomicNumber.zero(a.level)
    for i in range(a.order):
        total = total + e_of(a.q_of(i))
    norm = total * total.conjugate()
    if norm != Fraction(a.order):
        raise InternalError(f"Gauss sum norm check failed for {s}: {norm}")
    expected = cmath.exp(2j * cmath.pi * a.signature / 8) * (a.order ** 0.5)
    if abs(total.embed() - expected) > 1e-9:
        raise InternalError(f"Gauss sum phase check failed for {s}")
    return total


def direct_sum(s1: GramMatrix, s2: GramMatrix) -> GramMatrix:
    n1, n2 = s1.size, s2.size
    rows = []
    for i in range(n1):
        rows.append(tuple(s1.entries[i]) + (0,) * n2)
    for i in range(n2):
        rows.append((0,) * n1 + tuple(s2.entries[i]))
    return GramMatrix(tuple(rows))


def assemble_tilde(s: GramMatrix, m, b) -> GramMatrix:
    """The block matrix (S, SB; B^T S, 2M + B^T S B) as an even Gram matrix."""
    m = la.as_matrix(m)
    b = la.as_matrix(b)
    e = s.size
    n = len(m)
    if la.dims(b) != (e, n):
        raise InvalidIndexError(f"B must be {e}x{n}, got {la.dims(b)}")
    if not la.is_symmetric(m):
        raise InvalidIndexError("M must be symmetric")
    if not la.is_positive_definite(m):
        raise InvalidIndexError("M must be positive definite")
    sb = la.mat_mul(la.as_matrix(s.entries), b)
    if not la.is_integral(sb):
        raise InvalidIndexError("S*B must be integral")
    btsb = la.mat_mul(la.transpose(b), sb)
    bottom = la.mat_add(la.mat_scale(m, 2), btsb)
    if not la.is_integral(bottom):
        raise InvalidIndexError("2M + B^T S B must be integral")
    for i in range(n):
        if Fraction(bottom[i][i]).numerator % 2 != 0:
            raise InvalidIndexError("2M + B^T S B must have even diagonal")
    rows = []
    for i in range(e):
        rows.append(tuple(s.entries[i]) + tuple(int(x) for x in sb[i]))
    sbt = la.transpose(sb)
    for i in range(n):
        rows.append(tuple(int(x) for x in sbt[i]) + tuple(int(x) for x in bottom[i]))
    tilde = GramMatrix(tuple(rows))
    if tilde.det() == 0:
        raise InvalidIndexError("assembled block matrix is degenerate")
    return tilde


def split_tilde(tilde: GramMatrix, e: int):
    """Inverse of assemble_tilde: recover (S, M, B) from the block matrix."""
    total = tilde.size
    if not 0 <= e <= total:
        raise InvalidIndexError(f"split size {e} out of range for size {total}")
    s_rows = tuple(tuple(tilde.entries[i][:e]) for i in range(e))
    s = GramMatrix(s_rows)
    if s.size and s.det() == 0:
        raise InvalidIndexError("top-left block is degenerate")
    n = total - e
    top_right = la.as_matrix([[tilde.entries[i][e + j] for j in range(n)] for i in range(e)])
    if e:
        b = la.mat_mul(la.inverse(la.as_matrix(s.entries)), top_right)
    else:
        b = la.zeros(0, n)
    bottom = la.as_matrix([[tilde.entries[e + i][e + j] for j in range(n)] for i in range(n)])
    btsb = la.mat_mul(la.transpose(b), la.mat_mul(la.as_matrix(s.entries), b)) if e else la.zeros(n, n)
    m = la.mat_scale(la.mat_add(bottom, la.mat_scale(btsb, -1)), Fraction(1, 2))
    if not la.is_positive_definite(m):
        raise InvalidIndexError("recovered M is not positive definite")
    return s, m, b


def rebase(s: GramMatrix, p):
    """Change of basis by a unimodular integer matrix P.

    Returns (P^T S P, element map) where the map sends each element gamma of
    A(S) to P^{-1} gamma reduced into A(P^T S P); Q-values are preserved.
    """
    p = la.as_int_matrix(p)
    if abs(la.determinant(p)) != 1:
        raise DomainError("change of basis must be unimodular")
    pt = la.transpose(p)
    new_gram = GramMatrix(
        tuple(
            tuple(int(x) for x in row)
            for row in la.mat_mul(la.mat_mul(pt, la.as_matrix(s.entries)), la.as_matrix(p))
        )
    )
    p_inv = la.inverse(la.as_matrix(p))
    mapping: dict[Coords, Coords] = {}
    for coords in discriminant_group(s).elements:
        mapping[coords] = reduce_coords(la.mat_vec(p_inv, coords))
    return new_gram, mapping
