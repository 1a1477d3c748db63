"""Floating-point checks of the functional equations.

Exact arithmetic cannot express the slash relations symbolically (they
involve tau to half-integral powers), so this module evaluates truncated
expansions at sample points of the upper half plane and compares both sides
of each transformation law.  Only the generators S and T are checked
numerically; there the metaplectic square root is the principal branch.
General words are covered by the exact group-relation tests elsewhere.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .errors import DomainError
from .expansions import JacobiExpansion, VVExpansion
from .reps import HeisenbergElement, rho_s, sigma_b

TWO_PI_I = 2j * cmath.pi


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    residual: float
    tail_estimate: float
    label: str

    def __bool__(self):
        return self.passed


def _tail_estimate(form, im_tau: float) -> float:
    if not form.coeffs:
        return 0.0
    max_c = max(abs(float(c)) for c in form.coeffs.values())
    return float(cmath.exp(-2 * cmath.pi * float(form.prec) * im_tau).real) * max_c


def eval_vv(f: VVExpansion, tau: complex) -> list[complex]:
    """Componentwise value sum c(n, gamma) e(n tau); needs Im tau > 0."""
    if tau.imag <= 0:
        raise DomainError("evaluation point must be in the upper half plane")
    out = [0j] * f.group.order
    for (n, gi), c in f.coeffs.items():
        out[gi] += float(c) * cmath.exp(TWO_PI_I * float(n) * tau)
    return out


def eval_jacobi(phi: JacobiExpansion, tau: complex, z) -> list[complex]:
    """Componentwise value sum c(n, r, gamma) e(n tau + r . z)."""
    if tau.imag <= 0:
        raise DomainError("evaluation point must be in the upper half plane")
    z = tuple(complex(x) for x in z)
    if len(z) != phi.n_vars:
        raise DomainError("z has the wrong number of coordinates")
    out = [0j] * phi.group.order
    for (n, r, gi), c in phi.coeffs.items():
        phase = float(n) * tau + sum(float(x) * w for x, w in zip(r, z))
        out[gi] += float(c) * cmath.exp(TWO_PI_I * phase)
    return out


def _mat_apply(matrix: list[list[complex]], vec: list[complex]) -> list[complex]:
    return [sum(m * v for m, v in zip(row, vec)) for row in matrix]


def _max_abs_diff(a, b) -> float:
    return max(abs(x - y) for x, y in zip(a, b))


def check_S_transformation(form, tau: complex, tol: float = 1e-6) -> CheckResult:
    """Compare f(-1/tau) against tau^k rho(S) f(tau).

    For a Jacobi expansion the modular law is checked at a fixed small z:
    Phi(-1/tau, z/tau) = tau^k e(z^T M z / tau) rho(S) Phi(tau, z).
    """
    k = float(form.weight)
    rho = rho_s(form.group, form.dual).embed()
    factor = cmath.exp(k * cmath.log(tau))
    if isinstance(form, VVExpansion):
        lhs = eval_vv(form, -1 / tau)
        rhs = [factor * x for x in _mat_apply(rho, eval_vv(form, tau))]
    else:
        z = tuple(0.1 + 0.05j for _ in range(form.n_vars))
        lhs = eval_jacobi(form, -1 / tau, tuple(w / tau for w in z))
        zmz = sum(
            float(form.index.m[i][j]) * z[i] * z[j]
            for i in range(form.n_vars)
            for j in range(form.n_vars)
        )
        phase = cmath.exp(TWO_PI_I * zmz / tau)
        rhs = [factor * phase * x for x in _mat_apply(rho, eval_jacobi(form, tau, z))]
    residual = _max_abs_diff(lhs, rhs)
    tail = _tail_estimate(form, min(tau.imag, (-1 / tau).imag))
    return CheckResult(residual < tol, residual, tail, "S-transformation")


def check_T_transformation(form, tol: float = 0.0) -> CheckResult:
    """The T-law is an exact statement about exponent classes; residual 0.

    Every stored exponent must satisfy e(n) = e(-Q(gamma)) (dual) at the
    series level, which is the support condition; this check reports the
    number of violating keys as the residual.
    """
    if isinstance(form, VVExpansion):
        bad = len(form.support_violations())
    else:
        from .expansions import validate_support

        bad = sum(1 for v in validate_support(form) if v.startswith("(i)"))
    return CheckResult(bad == 0, float(bad), 0.0, "T-transformation")


def check_elliptic_transformation(
    phi: JacobiExpansion,
    h: HeisenbergElement,
    tau: complex,
    z,
    tol: float = 1e-6,
) -> CheckResult:
    """Compare Phi(tau, z + lambda tau + mu) against
    e(-tau lam^T M lam - tr M (2 lam z^T + t + mu lam^T)) sigma_B(h) Phi(tau, z)."""
    n = phi.n_vars
    if h.degree != n:
        raise DomainError("Heisenberg element degree does not match the index")
    z = tuple(complex(x) for x in z)
    shifted = tuple(w + h.lam[i] * tau + h.mu[i] for i, w in enumerate(z))
    lhs = eval_jacobi(phi, tau, shifted)
    m = phi.index.m
    lam_m_lam = sum(float(m[i][j]) * h.lam[i] * h.lam[j] for i in range(n) for j in range(n))
    # tr M (2 lam z^T + t + mu lam^T)
    tr = 0j
    for i in range(n):
        for j in range(n):
            tr += float(m[i][j]) * (2 * h.lam[j] * z[i] + h.t[j][i] + h.mu[j] * h.lam[i])
    phase = cmath.exp(TWO_PI_I * (-tau * lam_m_lam - tr))
    sigma = sigma_b(phi.group, phi.index.b, h).embed(conjugate=not phi.dual)
    rhs = [phase * x for x in _mat_apply(sigma, eval_jacobi(phi, tau, z))]
    residual = _max_abs_diff(lhs, rhs)
    return CheckResult(residual < tol, residual, _tail_estimate(phi, tau.imag), "elliptic transformation")


def _slash_S(phi: JacobiExpansion, tau: complex, z) -> list[complex]:
    """(Phi |_{k, M, B} S)(tau, z) computed through the evaluation hook."""
    k = float(phi.weight)
    n = phi.n_vars
    z = tuple(complex(x) for x in z)
    zmz = sum(float(phi.index.m[i][j]) * z[i] * z[j] for i in range(n) for j in range(n))
    rho_inv = [
        [x.conjugate() for x in row]
        for row in zip(*rho_s(phi.group, phi.dual).embed())
    ]
    value = eval_jacobi(phi, -1 / tau, tuple(w / tau for w in z))
    factor = cmath.exp(-k * cmath.log(tau)) * cmath.exp(-TWO_PI_I * zmz / tau)
    return [factor * x for x in _mat_apply(rho_inv, value)]


def _slash_heisenberg(phi: JacobiExpansion, h: HeisenbergElement, tau: complex, z) -> list[complex]:
    """(Phi |_{k, M, B} (lam, mu, t))(tau, z) through the evaluation hook."""
    n = phi.n_vars
    z = tuple(complex(x) for x in z)
    m = phi.index.m
    lam_m_lam = sum(float(m[i][j]) * h.lam[i] * h.lam[j] for i in range(n) for j in range(n))
    tr = 0j
    for i in range(n):
        for j in range(n):
            tr += float(m[i][j]) * (2 * h.lam[j] * z[i] + h.t[j][i] + h.mu[j] * h.lam[i])
    phase = cmath.exp(TWO_PI_I * (tau * lam_m_lam + tr))
    sigma_inv = [
        [x.conjugate() for x in row]
        for row in zip(*sigma_b(phi.group, phi.index.b, h).embed(conjugate=not phi.dual))
    ]
    shifted = tuple(w + h.lam[i] * tau + h.mu[i] for i, w in enumerate(z))
    return [phase * x for x in _mat_apply(sigma_inv, eval_jacobi(phi, tau, shifted))]


def check_u_slash_compat(
    phi: JacobiExpansion,
    ell: int,
    element,
    tau: complex,
    z,
    tol: float = 1e-6,
) -> CheckResult:
    """U_ell respects the slash operators.

    With element = "S": compare U_ell (Phi |_{k,M,B} S) against
    (U_ell Phi) |_{k, ell^2 M, ell B} S.  With a Heisenberg element h:
    compare U_ell (Phi |_{k,M,B} (ell lam, ell mu, ell^2 t)) against
    (U_ell Phi) |_{k, ell^2 M, ell B} (lam, mu, t).  The two sides run
    through different code paths (argument scaling versus the transformed
    expansion).
    """
    from .operators import u_ell_jacobi

    z = tuple(complex(x) for x in z)
    ell_z = tuple(ell * w for w in z)
    u_phi = u_ell_jacobi(phi, ell)
    if element == "S":
        lhs = _slash_S(phi, tau, ell_z)
        rhs = _slash_S(u_phi, tau, z)
        label = f"U_{ell} slash compatibility (S)"
    else:
        h = element
        scaled = HeisenbergElement(
            tuple(ell * x for x in h.lam),
            tuple(ell * x for x in h.mu),
            tuple(tuple(ell * ell * x for x in row) for row in h.t),
        )
        lhs = _slash_heisenberg(phi, scaled, tau, ell_z)
        rhs = _slash_heisenberg(u_phi, h, tau, z)
        label = f"U_{ell} slash compatibility (Heisenberg)"
    residual = _max_abs_diff(lhs, rhs)
    return CheckResult(residual < tol, residual, _tail_estimate(phi, tau.imag), label)
