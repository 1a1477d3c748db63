"""Theta series and the theta-decomposition isomorphism.

The decomposition sends a vector-valued expansion F on the block Gram
matrix (S, SB; B^T S, 2M + B^T S B) to the Jacobi expansion

    Phi(tau, z) = sum c(n, (gamma - B M^{-1} r / 2, M^{-1} r / 2))
                      q^{n + r^T M^{-1} r / 4} zeta^r e_gamma

of index (M, B) over S; the weight goes up by N/2.  Its inverse reads the
same formula backwards, verifying that colliding keys agree.  Two
independent oracles from the proof machinery are included: the theta series
itself and the contraction pi(F (x) Theta) available for B = 0.
"""

from __future__ import annotations

from fractions import Fraction

from . import _linalg as la
from .errors import DomainError, InvalidIndexError, MismatchError
from .expansions import JacobiExpansion, JacobiIndex, VVExpansion, validate_support
from .lattice import (
    DiscriminantGroup,
    GramMatrix,
    assemble_tilde,
    direct_sum,
    discriminant_group,
    reduce_coords,
    split_tilde,
)


def theta_series(s2: GramMatrix, prec) -> JacobiExpansion:
    """The Jacobi theta series of a positive definite even Gram matrix S2.

    Weight N/2 and index (M, 0) with M = S2 / 2, for the non-dual Weil
    representation attached to S2: terms q^{lam^T M^{-1} lam / 4} zeta^lam
    e_{S2^{-1} lam} over all integer vectors lam inside the precision
    ellipse.
    """
    n = s2.size
    prec = Fraction(prec)
    if not la.is_positive_definite(s2.entries):
        raise DomainError("theta series needs a positive definite Gram matrix")
    group = discriminant_group(s2)
    m = la.mat_scale(s2.entries, Fraction(1, 2))
    index = JacobiIndex(m, la.zeros(n, n))
    if n == 0:
        coeffs = {((Fraction(0)), (), 0): Fraction(1)} if prec > 0 else {}
        return JacobiExpansion(group, Fraction(0), index, prec, coeffs, 0, dual=False)
    s2_inv = la.inverse(s2.entries)
    quarter_m_inv = la.mat_scale(la.inverse(m), Fraction(1, 4))
    coeffs = {}
    for lam in la.enumerate_shifted_lattice(quarter_m_inv, (Fraction(0),) * n, prec, strict=True):
        lam_f = tuple(Fraction(x) for x in lam)
        exponent = la.vec_dot(la.mat_vec(quarter_m_inv, lam_f), lam_f)
        gi = group.index_of(la.mat_vec(s2_inv, lam_f))
        coeffs[(exponent, lam_f, gi)] = Fraction(1)
    return JacobiExpansion(group, Fraction(n, 2), index, prec, coeffs, 0, dual=False)


def _gamma_tilde(index: JacobiIndex, tilde_group: DiscriminantGroup, gamma, r):
    """(gamma - B M^{-1} r / 2, M^{-1} r / 2) reduced into A(tilde S)."""
    m_inv_r = la.mat_vec(index.m_inverse(), r)
    half = [x / 2 for x in m_inv_r]
    b_half = la.mat_vec(index.b, half)
    head = [g - x for g, x in zip(gamma, b_half)]
    return tilde_group.index_of(list(head) + list(half))


def theta_decompose(f: VVExpansion, e: int) -> JacobiExpansion:
    """Theta decomposition of a dual expansion on a block Gram matrix.

    The r-enumeration bound r^T M^{-1} r / 4 < prec + pole_depth guarantees
    that every retained exponent carries all of its r-terms.
    """
    if not f.dual:
        raise DomainError("theta decomposition applies to dual-flagged expansions")
    s, m, b = split_tilde(f.group.gram, e)
    index = JacobiIndex(m, b)
    group = discriminant_group(s)
    tilde_group = f.group
    n_vars = index.n_vars
    h = f.pole_depth()
    prec = f.prec
    quarter_m_inv = la.mat_scale(index.m_inverse(), Fraction(1, 4))
    bts = la.mat_mul(la.transpose(index.b), la.as_matrix(s.entries))

    by_element: dict[int, list[tuple[Fraction, Fraction]]] = {}
    for (n, gi), c in f.coeffs.items():
        by_element.setdefault(gi, []).append((n, c))

    coeffs: dict = {}
    bound = prec + h
    for gi, gamma in enumerate(group.elements):
        shift = tuple(-x for x in la.mat_vec(bts, gamma))  # r in shift + Z^N
        for k in la.enumerate_shifted_lattice(quarter_m_inv, shift, bound, strict=True):
            r = tuple(Fraction(x) + s0 for x, s0 in zip(k, shift))
            q_r = la.vec_dot(la.mat_vec(quarter_m_inv, r), r)
            ti = _gamma_tilde(index, tilde_group, gamma, r)
            for n_f, c in by_element.get(ti, ()):
                n_out = n_f + q_r
                if n_out < prec:
                    coeffs[(n_out, r, gi)] = c
    return JacobiExpansion(
        group, f.weight + Fraction(n_vars, 2), index, prec, coeffs, h, dual=True
    )


def theta_compose(phi: JacobiExpansion) -> VVExpansion:
    """Inverse theta decomposition.

    Every stored key (n, r, gamma) writes the source coefficient at
    (n - r^T M^{-1} r / 4, gamma~); keys landing on the same source
    coefficient must agree, otherwise MismatchError reports both.  This
    doubles as a coefficient-level test of the elliptic transformation law
    for externally supplied expansions.
    """
    problems = validate_support(phi)
    if problems:
        raise DomainError("input fails support validation: " + "; ".join(problems))
    if not phi.dual:
        raise DomainError("theta composition applies to dual-flagged expansions")
    tilde = assemble_tilde(phi.group.gram, phi.index.m, phi.index.b)
    tilde_group = discriminant_group(tilde)
    quarter_m_inv = la.mat_scale(phi.index.m_inverse(), Fraction(1, 4))
    out: dict = {}
    first_source: dict = {}
    for (n, r, gi), c in phi.coeffs.items():
        gamma = phi.group.elements[gi]
        q_r = la.vec_dot(la.mat_vec(quarter_m_inv, r), r)
        key = (n - q_r, _gamma_tilde(phi.index, tilde_group, gamma, r))
        if key in out:
            if out[key] != c:
                raise MismatchError(
                    f"keys {first_source[key]} and {(n, r, gamma)} both map to "
                    f"source coefficient {key} with different values "
                    f"{out[key]} != {c}"
                )
        else:
            out[key] = c
            first_source[key] = (n, r, gamma)
    return VVExpansion(
        tilde_group, phi.weight - Fraction(phi.n_vars, 2), True, phi.prec, out
    )


def pi_contraction(
    group_s: DiscriminantGroup,
    group_2m: DiscriminantGroup,
    terms: dict,
) -> dict:
    """The linear contraction pi(e_beta (x) e_gamma (x) e_delta) = e_beta if
    gamma = delta else 0, applied to a map (n, (bi, gi, di)) -> coefficient."""
    out: dict = {}
    for (n, (bi, gi, di)), c in terms.items():
        if not (0 <= bi < group_s.order and 0 <= gi < group_2m.order and 0 <= di < group_2m.order):
            raise DomainError("contraction indices outside the tensor group")
        if gi == di:
            key = (Fraction(n), bi)
            out[key] = out.get(key, Fraction(0)) + Fraction(c)
    return {k: v for k, v in out.items() if v != 0}


def theta_decompose_oracle_b0(f: VVExpansion, e: int) -> JacobiExpansion:
    """Independent oracle for theta_decompose on splits with B = 0.

    Computes pi(F (x) Theta) coefficientwise, where Theta is the theta
    series of the bottom block: a single source coefficient q^n e_{(gamma,
    delta)} contributes q^{n + mu^T M^{-1} mu / 4} zeta^mu e_gamma for every
    lattice vector mu congruent to 2 M delta.
    """
    s, m, b = split_tilde(f.group.gram, e)
    if any(x != 0 for row in b for x in row):
        raise DomainError("the oracle requires a split with B = 0")
    n_vars = len(m)
    s2_rows = tuple(
        tuple(int(2 * x) for x in row) for row in m
    )
    s2 = GramMatrix(s2_rows)
    group_s = discriminant_group(s)
    group_2m = discriminant_group(s2)
    h = f.pole_depth()
    prec = f.prec
    theta = theta_series(s2, prec + h)
    # bucket theta terms by their component in A(2M)
    theta_by_component: dict[int, list] = {}
    for (n_t, r, di), _one in theta.coeffs.items():
        theta_by_component.setdefault(di, []).append((n_t, r))
    index = JacobiIndex(m, la.zeros(s.size, n_vars))
    coeffs: dict = {}
    for (n_f, gi), c in f.coeffs.items():
        coords = f.group.elements[gi]
        beta = group_s.index_of(coords[: s.size])
        delta = group_2m.index_of(coords[s.size :])
        for n_t, r in theta_by_component.get(delta, ()):
            n_out = n_f + n_t
            if n_out < prec:
                key = (n_out, r, beta)
                coeffs[key] = coeffs.get(key, Fraction(0)) + c
    return JacobiExpansion(group_s, f.weight + Fraction(n_vars, 2), index, prec, coeffs, h, dual=True)
