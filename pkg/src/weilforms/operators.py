"""Hecke U-operators, z = 0 specialization, and the z-derivative at 0."""

from __future__ import annotations

from fractions import Fraction

from . import _linalg as la
from .errors import DomainError, InternalError
from .exact import mod1
from .expansions import JacobiExpansion, JacobiIndex, VVExpansion
from .lattice import GramMatrix, discriminant_group, q_value_raw


def u_ell_jacobi(phi: JacobiExpansion, ell: int) -> JacobiExpansion:
    """U_ell: Phi(tau, z) -> Phi(tau, ell z); index becomes (ell^2 M, ell B)."""
    ell = int(ell)
    if ell < 1:
        raise DomainError("ell must be a positive integer")
    if ell == 1:
        return phi
    index = JacobiIndex(la.mat_scale(phi.index.m, ell * ell), la.mat_scale(phi.index.b, ell))
    coeffs = {
        (n, tuple(ell * x for x in r), gi): c for (n, r, gi), c in phi.coeffs.items()
    }
    return JacobiExpansion(
        phi.group, phi.weight, index, phi.prec, coeffs, phi.weak_bound, phi.dual
    )


def u_ell_vv(f: VVExpansion, e: int, ell: int) -> VVExpansion:
    """The vector-valued U_ell for a Gram matrix split as (S1, U; U^T, S2).

    The target Gram matrix is (S1, ell U; ell U^T, ell^2 S2).  A target
    element delta = (delta1, delta2) receives the coefficients of its image
    (delta1, ell delta2) whenever that vector lies in the source group;
    exponent classes are preserved and verified.
    """
    ell = int(ell)
    if ell < 1:
        raise DomainError("ell must be a positive integer")
    total = f.group.gram.size
    if not 0 <= e <= total:
        raise DomainError(f"split size {e} out of range")
    if ell == 1:
        return f
    n = total - e
    src = f.group.gram.entries
    rows = []
    for i in range(total):
        row = []
        for j in range(total):
            factor = 1
            if i >= e:
                factor *= ell
            if j >= e:
                factor *= ell
            row.append(src[i][j] * factor)
        rows.append(tuple(row))
    target_gram = GramMatrix(tuple(rows))
    if target_gram.det() == 0:
        raise DomainError("target Gram matrix is degenerate")
    target = discriminant_group(target_gram)
    src_group = f.group

    by_element: dict[int, list[tuple[Fraction, Fraction]]] = {}
    for (nn, gi), c in f.coeffs.items():
        by_element.setdefault(gi, []).append((nn, c))

    out = {}
    for di, delta in enumerate(target.elements):
        image = tuple(delta[:e]) + tuple(ell * x for x in delta[e:])
        if not src_group.contains(image):
            continue
        gi = src_group.index_of(image)
        if mod1(q_value_raw(target_gram, delta)) != src_group.q_of(gi):
            raise InternalError(
                f"exponent class mismatch under the block projection at {delta}"
            )
        for nn, c in by_element.get(gi, ()):
            out[(nn, di)] = c
    return VVExpansion(target, f.weight, f.dual, f.prec, out)


def specialize_z0(phi: JacobiExpansion) -> VVExpansion:
    """Set z = 0: c'(n, gamma) = sum over stored r of c(n, r, gamma)."""
    out: dict = {}
    for (n, _r, gi), c in phi.coeffs.items():
        key = (n, gi)
        out[key] = out.get(key, Fraction(0)) + c
    return VVExpansion(phi.group, phi.weight, phi.dual, phi.prec, out)


def z_derivative_at_zero(phi: JacobiExpansion) -> list[VVExpansion]:
    """Component j of d/dz at z = 0: D_j(n, gamma) = sum_r r_j c(n, r, gamma).

    The 2*pi*i factor is dropped.  The tables are returned as expansions of
    weight k + 1 (the natural derivative weight); for a form of symmetric
    weight they satisfy D_j(n, -gamma) = -D_j(n, gamma).
    """
    tables = []
    for j in range(phi.n_vars):
        out: dict = {}
        for (n, r, gi), c in phi.coeffs.items():
            if r[j]:
                key = (n, gi)
                out[key] = out.get(key, Fraction(0)) + r[j] * c
        tables.append(VVExpansion(phi.group, phi.weight + 1, phi.dual, phi.prec, out))
    return tables
