"""Weil representations on C[A], the Heisenberg group, and their matrices.

Representation values are defined on generator words, never on bare
matrices: the library does not choose metaplectic square-root branches
symbolically.  Words use the alphabet S, T, T^{-1} (written ``t``).  The
dual representation uses the phases e(-Q), e(<.,.>), e(sig/8); the non-dual
one is its entrywise complex conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import _linalg as la
from .errors import DomainError, InvalidIndexError
from .exact import CyclotomicNumber, e_of, mod1
from .lattice import DiscriminantGroup, GramMatrix, gauss_sum

S_MAT = ((0, -1), (1, 0))
T_MAT = ((1, 1), (0, 1))
T_INV_MAT = ((1, -1), (0, 1))

_LETTER_MATS = {"S": S_MAT, "T": T_MAT, "t": T_INV_MAT}


def _mul2(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


@dataclass(frozen=True)
class Mp2Word:
    """A word in the generators S, T, T^{-1} with its cached SL2(Z) matrix."""

    letters: tuple[str, ...]

    def __post_init__(self):
        for ch in self.letters:
            if ch not in _LETTER_MATS:
                raise DomainError(f"unknown generator letter {ch!r}; use S, T, t")

    @classmethod
    def from_string(cls, text: str) -> "Mp2Word":
        return cls(tuple(text))

    @property
    def matrix(self):
        m = ((1, 0), (0, 1))
        for ch in self.letters:
            m = _mul2(m, _LETTER_MATS[ch])
        return m

    def __str__(self):
        return "".join(self.letters)


def mp2_factor(m) -> Mp2Word:
    """Factor an SL2(Z) matrix into a word in S, T, T^{-1}.

    Euclidean algorithm on the bottom row; the result is verified by
    re-multiplying the letters.
    """
    m = la.as_int_matrix(m)
    if la.dims(m) != (2, 2):
        raise DomainError("expected a 2x2 matrix")
    (a, b), (c, d) = m
    if a * d - b * c != 1:
        raise DomainError("matrix must have determinant 1")
    letters: list[str] = []

    def push_t(power: int):
        letters.extend(["T" if power > 0 else "t"] * abs(power))

    while c != 0:
        q = a // c
        # m = T^q S m1 with m1 = S^{-1} T^{-q} m; S^{-1} = S S S
        push_t(q)
        letters.append("S")
        a, b, c, d = c, d, -(a - q * c), -(b - q * d)
    # now c == 0, a == d == +-1
    if a == 1:
        push_t(b)
    else:
        letters.extend(["S", "S"])
        push_t(-b)
    word = Mp2Word(tuple(letters))
    if word.matrix != tuple(map(tuple, m)):
        raise DomainError("factorization failed to reproduce the input matrix")
    return word


class RepMatrix:
    """A square matrix of cyclotomic numbers indexed by discriminant elements."""

    __slots__ = ("group", "entries", "dual")

    def __init__(self, group: DiscriminantGroup, entries, dual: bool):
        n = group.order
        rows = []
        orders = set()
        for row in entries:
            row = tuple(row)
            if len(row) != n:
                raise DomainError("representation matrix has wrong shape")
            rows.append(row)
            orders.update(x.order for x in row)
        if len(rows) != n:
            raise DomainError("representation matrix has wrong shape")
        common = lcm(*orders) if orders else 1
        self.group = group
        self.entries = tuple(tuple(x.lift(common) for x in row) for row in rows)
        self.dual = dual

    @classmethod
    def identity(cls, group: DiscriminantGroup, dual: bool = True) -> "RepMatrix":
        n = group.order
        one = CyclotomicNumber.one()
        zero = CyclotomicNumber.zero()
        return cls(group, [[one if i == j else zero for j in range(n)] for i in range(n)], dual)

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        if self.group != other.group:
            raise DomainError("representation matrices act on different groups")
        n = self.group.order
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = CyclotomicNumber.zero()
                for k in range(n):
                    if not a[i][k].is_zero() and not b[k][j].is_zero():
                        acc = acc + a[i][k] * b[k][j]
                row.append(acc)
            out.append(row)
        return RepMatrix(self.group, out, self.dual)

    def conjugate_transpose(self) -> "RepMatrix":
        n = self.group.order
        return RepMatrix(
            self.group,
            [[self.entries[j][i].conjugate() for j in range(n)] for i in range(n)],
            self.dual,
        )

    def conjugate(self) -> "RepMatrix":
        return RepMatrix(
            self.group,
            [[x.conjugate() for x in row] for row in self.entries],
            not self.dual,
        )

    def unitary_inverse(self) -> "RepMatrix":
        """Inverse of a unitary matrix, i.e. the conjugate transpose."""
        return self.conjugate_transpose()

    def is_identity(self) -> bool:
        n = self.group.order
        return all(
            self.entries[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
        )

    def is_unitary(self) -> bool:
        return (self @ self.conjugate_transpose()).is_identity()

    def __eq__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        if self.group != other.group:
            return False
        n = self.group.order
        return all(self.entries[i][j] == other.entries[i][j] for i in range(n) for j in range(n))

    def __hash__(self):
        return hash((self.group, self.entries))

    def embed(self, conjugate: bool = False) -> list[list[complex]]:
        return [[x.embed(conjugate) for x in row] for row in self.entries]

    def scale(self, c: CyclotomicNumber) -> "RepMatrix":
        return RepMatrix(self.group, [[c * x for x in row] for row in self.entries], self.dual)

    def to_json_dict(self) -> dict:
        return {
            "gram": self.group.gram.to_json(),
            "dual": self.dual,
            "entries": [[x.to_json_dict() for x in row] for row in self.entries],
        }


def rho_t(group: DiscriminantGroup, dual: bool = True) -> RepMatrix:
    """rho*(T): diagonal with entries e(-Q(gamma)) (dual) or e(Q(gamma))."""
    n = group.order
    zero = CyclotomicNumber.zero()
    rows = []
    for i in range(n):
        q = group.q_of(i)
        phase = e_of(mod1(-q) if dual else q)
        rows.append([phase if j == i else zero for j in range(n)])
    return RepMatrix(group, rows, dual)


def rho_s(group: DiscriminantGroup, dual: bool = True) -> RepMatrix:
    """rho*(S): the Gauss-sum-normalized discrete Fourier matrix.

    Entry (beta, gamma) is (G/|A|) e(<gamma, beta>) in the dual case, where
    G = gauss_sum(S) realizes e(sig/8) sqrt(|A|) exactly; the non-dual case
    conjugates both.
    """
    s = group.gram if dual else -group.gram
    scalar = gauss_sum(s) * Fraction(1, group.order)
    n = group.order
    sign = 1 if dual else -1
    rows = []
    for i in range(n):  # row index beta
        row = []
        for j in range(n):  # column index gamma
            row.append(scalar * e_of(mod1(sign * group.pair(j, i))))
        rows.append(row)
    return RepMatrix(group, rows, dual)


def rho_t_inverse(group: DiscriminantGroup, dual: bool = True) -> RepMatrix:
    """rho*(T^{-1}): the inverse (conjugate) of the diagonal rho*(T)."""
    inv = rho_t(group, not dual)
    return RepMatrix(group, inv.entries, dual)


def rho_word(group: DiscriminantGroup, word: Mp2Word | str, dual: bool = True) -> RepMatrix:
    """The ordered product of generator matrices over the word."""
    if isinstance(word, str):
        word = Mp2Word.from_string(word)
    result = RepMatrix.identity(group, dual)
    builders = {"S": rho_s, "T": rho_t, "t": rho_t_inverse}
    cache: dict[str, RepMatrix] = {}
    for ch in word.letters:
        if ch not in cache:
            cache[ch] = builders[ch](group, dual)
        result = result @ cache[ch]
    return result


@dataclass(frozen=True)
class HeisenbergElement:
    """(lambda, mu, t) with t - lambda mu^T symmetric."""

    lam: tuple[int, ...]
    mu: tuple[int, ...]
    t: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        lam = tuple(int(x) for x in self.lam)
        mu = tuple(int(x) for x in self.mu)
        t = la.as_int_matrix(self.t)
        n = len(lam)
        if len(mu) != n or la.dims(t) != (n, n):
            raise DomainError("Heisenberg element has mismatched dimensions")
        for i in range(n):
            for j in range(n):
                if t[i][j] - lam[i] * mu[j] != t[j][i] - lam[j] * mu[i]:
                    raise DomainError("t - lambda mu^T must be symmetric")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "t", t)

    @property
    def degree(self) -> int:
        return len(self.lam)

    @classmethod
    def identity(cls, n: int) -> "HeisenbergElement":
        return cls((0,) * n, (0,) * n, tuple((0,) * n for _ in range(n)))


def heisenberg_mul(h1: HeisenbergElement, h2: HeisenbergElement) -> HeisenbergElement:
    n = h1.degree
    if h2.degree != n:
        raise DomainError("Heisenberg elements of different degree")
    lam = tuple(a + b for a, b in zip(h1.lam, h2.lam))
    mu = tuple(a + b for a, b in zip(h1.mu, h2.mu))
    t = tuple(
        tuple(
            h1.t[i][j] + h2.t[i][j] + h1.lam[i] * h2.mu[j] - h1.mu[i] * h2.lam[j]
            for j in range(n)
        )
        for i in range(n)
    )
    return HeisenbergElement(lam, mu, t)


def heisenberg_slash_action(h: HeisenbergElement, m) -> HeisenbergElement:
    """(lambda, mu, t) . (a, b; c, d) = (a lambda + c mu, b lambda + d mu, t)."""
    m = la.as_int_matrix(m)
    (a, b), (c, d) = m
    if a * d - b * c != 1:
        raise DomainError("matrix must have determinant 1")
    lam = tuple(a * x + c * y for x, y in zip(h.lam, h.mu))
    mu = tuple(b * x + d * y for x, y in zip(h.lam, h.mu))
    return HeisenbergElement(lam, mu, h.t)


def sigma_b(
    group: DiscriminantGroup,
    b,
    h: HeisenbergElement,
    dual: bool = True,
) -> RepMatrix:
    """sigma*_B(lambda, mu, t): a generalized permutation matrix on C[A].

    Sends e_gamma to e(-(gamma^T S B mu + tr(B^T S B (t - lambda mu^T)) / 2))
    e_{gamma - B lambda}; depends on B only mod integer matrices.  The
    non-dual variant conjugates the phase.
    """
    b = la.as_matrix(b)
    e, n = la.dims(b)
    if e != group.gram.size:
        raise InvalidIndexError("B has wrong number of rows")
    if h.degree != n:
        raise DomainError("Heisenberg element degree does not match B")
    s = la.as_matrix(group.gram.entries)
    sb = la.mat_mul(s, b)
    if not la.is_integral(sb):
        raise InvalidIndexError("S*B must be integral")
    btsb = la.mat_mul(la.transpose(b), sb)
    t_sym = [[Fraction(h.t[i][j] - h.lam[i] * h.mu[j]) for j in range(n)] for i in range(n)]
    trace_part = sum(
        (btsb[i][j] * t_sym[j][i] for i in range(n) for j in range(n)), Fraction(0)
    ) / 2
    sb_mu = la.mat_vec(sb, [Fraction(x) for x in h.mu])
    b_lam = la.mat_vec(b, [Fraction(x) for x in h.lam])
    sign = -1 if dual else 1
    zero = CyclotomicNumber.zero()
    size = group.order
    columns = []
    for j in range(size):
        gamma = group.elements[j]
        phase_q = mod1(sign * (la.vec_dot(gamma, sb_mu) + trace_part))
        target = group.index_of([g - d for g, d in zip(gamma, b_lam)])
        columns.append((target, e_of(phase_q)))
    rows = [[zero] * size for _ in range(size)]
    for j, (target, phase) in enumerate(columns):
        rows[target][j] = phase
    return RepMatrix(group, rows, dual)


def rho_b(
    group: DiscriminantGroup,
    b,
    h: HeisenbergElement,
    word: Mp2Word | str,
    dual: bool = True,
) -> RepMatrix:
    """rho*_B(lambda, mu, t, M) = rho*(M) sigma*_B(lambda, mu, t)."""
    return rho_word(group, word, dual) @ sigma_b(group, b, h, dual)
