"""Quasi-pullback machinery: primitive vectors, pullback setups, product
weights, and the principal-part table.

For a primitive vector v in Z^3 of norm m, the Gram matrix of the standard
quadratic form x1^2 + ... + x4^2 with respect to the basis (1,0), (0,v),
(0,w2), (0,w3) splits at e = 2 into S = diag(2, 2m) and a Jacobi index
(M, B).  Theta-decomposing the nearly-holomorphic input with principal part
4 e_0 + q^{-1/4} (four half-integer classes) and setting z = 0 yields the
principal part of the quasi-pullback input; half its q^0 e_0 coefficient is
the weight of the resulting holomorphic product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import _linalg as la
from .errors import DomainError, NotRepresentableError
from .exact import format_rational
from .expansions import VVExpansion
from .lattice import (
    GramMatrix,
    discriminant_group,
    gram,
    rebase,
    reduce_coords,
    split_tilde,
)
from .operators import specialize_z0
from .theta import theta_decompose

_GRAM_2I4 = gram([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]])


def primitive_vectors(m: int) -> list[tuple[int, int, int]]:
    """Primitive 3-vectors of norm m up to coordinate permutation and sign.

    Canonical representatives have sorted nonnegative entries and gcd 1;
    the list may be empty (m = 0, 4, 7 mod 8 have no primitive
    representations).
    """
    if m < 1:
        raise DomainError("m must be a positive integer")
    out = []
    for x in range(isqrt(m) + 1):
        for y in range(x, isqrt(m - x * x) + 1):
            z2 = m - x * x - y * y
            z = isqrt(z2)
            if z * z != z2 or z < y:
                continue
            if gcd(gcd(x, y), z) == 1:
                out.append((x, y, z))
    return sorted(out)


def complete_basis(v) -> tuple[tuple[int, ...], ...]:
    """A unimodular 3x3 matrix with first column v, for primitive v.

    Deterministic: integer row reduction of v to e_1 is recorded and
    inverted.  When v = (1, a, b) the result is the basis
    {(1,a,b), (0,1,0), (0,0,1)}.
    """
    v = tuple(int(x) for x in v)
    if len(v) != 3:
        raise DomainError("expected a 3-vector")
    if gcd(gcd(v[0], v[1]), v[2]) != 1:
        raise DomainError(f"{v} is not primitive")
    ops: list[tuple] = []
    work = list(v)

    def record_reduce(i, j):
        # clear work[i] against pivot work[j] using the Euclidean algorithm
        while work[i] != 0:
            if work[j] == 0 or abs(work[i]) < abs(work[j]):
                work[i], work[j] = work[j], work[i]
                ops.append(("swap", i, j))
                continue
            q = work[i] // work[j]
            work[i] -= q * work[j]
            ops.append(("sub", i, j, q))

    record_reduce(1, 0)
    record_reduce(2, 0)
    if work[0] < 0:
        ops.append(("neg", 0))
        work[0] = -work[0]
    # work is now e_1; invert the recorded operations on the identity to get
    # the matrix W with W e_1 = v.
    w = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    for op in reversed(ops):
        if op[0] == "sub":
            _, i, j, q = op
            # inverse of row_i -= q row_j is row_i += q row_j; on W we apply
            # the inverse as a column-free left multiplication
            for k in range(3):
                w[i][k] += q * w[j][k]
        elif op[0] == "swap":
            _, i, j = op
            w[i], w[j] = w[j], w[i]
        else:
            _, i = op
            w[i] = [-x for x in w[i]]
    basis = tuple(tuple(row) for row in w)
    if abs(la.determinant(basis)) != 1:
        raise DomainError("basis completion failed to be unimodular")
    if tuple(basis[i][0] for i in range(3)) != v:
        raise DomainError("basis completion lost the first column")
    return basis


@dataclass(frozen=True)
class PullbackSetup:
    m: int
    v: tuple[int, int, int]
    basis: tuple[tuple[int, ...], ...]
    gram_tilde: GramMatrix
    s: GramMatrix
    index_m: tuple[tuple[Fraction, ...], ...]
    index_b: tuple[tuple[Fraction, ...], ...]
    f_principal: VVExpansion


def pullback_setup(m: int, v) -> PullbackSetup:
    """Build the quasi-pullback input for a primitive norm-m vector."""
    v = tuple(int(x) for x in v)
    if sum(x * x for x in v) != m:
        raise DomainError(f"{v} does not have norm {m}")
    basis = complete_basis(v)
    # 4x4 change of basis: columns (1, 0), (0, v1), (0, v2), (0, v3)
    p = [[0] * 4 for _ in range(4)]
    p[0][0] = 1
    for i in range(3):
        for j in range(3):
            p[i + 1][j + 1] = basis[i][j]
    tilde, mapping = rebase(_GRAM_2I4, p)
    s, index_m, index_b = split_tilde(tilde, 2)
    expected = gram([[2, 0], [0, 2 * m]])
    if s != expected:
        raise DomainError("pullback split did not produce diag(2, 2m)")
    tilde_group = discriminant_group(tilde)
    half = Fraction(1, 2)
    classes = [
        (half, 0, 0, 0),
        (0, half, 0, 0),
        (0, 0, half, 0),
        (0, 0, 0, half),
    ]
    # the smallest positive admissible exponent on A(tilde) bounds how far
    # the principal part is complete
    eps = min(
        ((-tilde_group.q_of(i)) % 1) or Fraction(1)
        for i in range(tilde_group.order)
    )
    coeffs = {(Fraction(0), tilde_group.index_of((0, 0, 0, 0))): Fraction(4)}
    for cls in classes:
        target = mapping[reduce_coords(cls)]
        key = (Fraction(-1, 4), tilde_group.index_of(target))
        coeffs[key] = coeffs.get(key, Fraction(0)) + 1
    f = VVExpansion(tilde_group, -2, True, eps, coeffs)
    return PullbackSetup(m, v, basis, tilde, s, index_m, index_b, f)


def principal_part(setup: PullbackSetup) -> VVExpansion:
    """Terms of exponent <= 0 of the z = 0 specialization of the decomposition."""
    phi = theta_decompose(setup.f_principal, 2)
    w = specialize_z0(phi)
    kept = {k: v for k, v in w.coeffs.items() if k[0] <= 0}
    return VVExpansion(w.group, w.weight, w.dual, w.prec, kept)


def product_weight(setup: PullbackSetup) -> Fraction:
    """Half the q^0 e_0 coefficient of the specialized decomposition."""
    pp = principal_part(setup)
    zero = pp.group.index_of((0, 0))
    return pp.coeff(Fraction(0), zero) / 2


def principal_part_table(m: int) -> list[tuple[Fraction, VVExpansion]]:
    """All distinct (weight, principal part) rows for norm-m vector classes,
    sorted by weight."""
    vectors = primitive_vectors(m)
    if not vectors:
        raise NotRepresentableError(f"{m} has no primitive representation by three squares")
    rows = []
    seen = set()
    for v in vectors:
        setup = pullback_setup(m, v)
        pp = principal_part(setup)
        weight = pp.coeff(Fraction(0), pp.group.index_of((0, 0))) / 2
        key = (weight, tuple(sorted(pp.coeffs.items())))
        if key in seen:
            continue
        seen.add(key)
        rows.append((weight, pp))
    rows.sort(key=lambda row: row[0])
    return rows


def render_principal_part(pp: VVExpansion) -> str:
    """Canonical one-line rendering of a principal part.

    The constant term comes first, then exponent groups ascending (most
    negative first); inside a group the elements are ordered by ascending
    second coordinate (ties by the first), and a shared multiplicity is
    printed as an integer prefix.
    """
    by_exponent: dict[Fraction, dict] = {}
    for (n, gi), c in pp.coeffs.items():
        by_exponent.setdefault(n, {})[gi] = c
    if not by_exponent:
        return "0"
    group = pp.group

    def atom(gi):
        return "e(" + ",".join(format_rational(x) for x in group.elements[gi]) + ")"

    def element_key(gi):
        coords = group.elements[gi]
        return (coords[1], coords[0]) if len(coords) == 2 else coords

    def render_group(n, members):
        # members: element index -> coefficient; split by multiplicity
        by_mult: dict[Fraction, list] = {}
        for gi, c in members.items():
            by_mult.setdefault(c, []).append(gi)
        parts = []
        for mult in sorted(by_mult, key=lambda c: (abs(c), c)):
            elements = sorted(by_mult[mult], key=element_key)
            prefix = "" if mult == 1 else format_rational(mult)
            power = "" if n == 0 else f"q^({format_rational(n)})"
            body = " + ".join(atom(gi) for gi in elements)
            if len(elements) > 1:
                body = f"({body})"
            parts.append(f"{prefix}{power}{body}")
        return " + ".join(parts)

    exponents = sorted(by_exponent)
    ordered = []
    if Fraction(0) in by_exponent:
        ordered.append(Fraction(0))
    ordered.extend(n for n in exponents if n != 0)
    return " + ".join(render_group(n, by_exponent[n]) for n in ordered)


def table_rows(m: int) -> list[str]:
    """Formatted rows "m=<m> weight=<w>: <principal part>"."""
    return [
        f"m={m} weight={format_rational(weight)}: {render_principal_part(pp)}"
        for weight, pp in principal_part_table(m)
    ]


def scan(max_m: int) -> list[dict]:
    """Catalog records {m, weight, principal_part} for all representable m."""
    records = []
    for m in range(1, max_m + 1):
        if not primitive_vectors(m):
            continue
        for weight, pp in principal_part_table(m):
            records.append(
                {
                    "m": m,
                    "weight": format_rational(weight),
                    "principal_part": render_principal_part(pp),
                }
            )
    return records


def is_sum_of_three_nonzero_squares(m: int) -> bool:
    for x in range(1, isqrt(m) + 1):
        for y in range(1, isqrt(m - x * x) + 1):
            z2 = m - x * x - y * y
            if z2 > 0 and isqrt(z2) ** 2 == z2:
                return True
    return False


def is_sum_of_two_nonzero_squares(m: int) -> bool:
    return any(
        isqrt(m - x * x) ** 2 == m - x * x and m - x * x > 0
        for x in range(1, isqrt(m) + 1)
    )
