"""Bridges between Kohnen plus spaces of level 4 and odd-weight forms of level 3.

The maps are implemented on scalar q-series by the multiply-and-restrict
recipes: restriction to integer exponents is the coset averaging in
disguise, so everything stays exact.  Scalarization of a vector-valued
expansion (summing all components after rescaling exponents by the level)
realizes the Bruinier-Bundschuh identification; it is validated on the two
printed prime-determinant pairs and should be considered experimental for
other Gram matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InternalError
from .exact import format_rational
from .expansions import (
    ScalarQSeries,
    VVExpansion,
    s_halve_on_residues,
    s_mul,
    s_rescale_q,
    s_restrict_integer,
)


@dataclass(frozen=True)
class PlusSpaceForm:
    """A form in the Kohnen plus space of weight k + 1/2.

    ``k`` is the sign convention: coefficients vanish unless
    (-1)^k n = 0, 1 mod 4.
    """

    series: ScalarQSeries
    k: int

    @property
    def weight(self) -> Fraction:
        return Fraction(self.k) + Fraction(1, 2)

    def violations(self) -> list[str]:
        return check_pattern(self.series, "kohnen_plus", self.k)


@dataclass(frozen=True)
class Level3Form:
    """A form in M_k(Gamma_0(3), chi) with k odd, in the plus or minus subspace."""

    series: ScalarQSeries
    weight: int
    sign: str

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise DomainError("sign must be '+' or '-'")
        if self.weight % 2 == 0:
            raise DomainError("level-3 bridge forms have odd weight")

    def violations(self) -> list[str]:
        return check_pattern(
            self.series, "level3_plus" if self.sign == "+" else "level3_minus"
        )


def check_pattern(series: ScalarQSeries, space: str, k: int | None = None) -> list[str]:
    """List exponents whose coefficients violate the vanishing pattern.

    Spaces: "kohnen_plus" (needs k; nonzero only when (-1)^k n = 0,1 mod 4),
    "level3_plus" (zero when n = 2 mod 3), "level3_minus" (zero when n = 1
    mod 3).
    """
    out = []
    for n, c in series.items():
        if n.denominator != 1:
            out.append(f"non-integer exponent {format_rational(n)}")
            continue
        v = n.numerator
        if space == "kohnen_plus":
            if k is None:
                raise DomainError("kohnen_plus pattern needs the integer k")
            residue = (v if k % 2 == 0 else -v) % 4
            if residue not in (0, 1):
                out.append(f"coefficient {format_rational(c)} at q^{v} breaks the plus condition")
        elif space == "level3_plus":
            if v % 3 == 2:
                out.append(f"coefficient {format_rational(c)} at q^{v} should vanish (n = 2 mod 3)")
        elif space == "level3_minus":
            if v % 3 == 1:
                out.append(f"coefficient {format_rational(c)} at q^{v} should vanish (n = 1 mod 3)")
        else:
            raise DomainError(f"unknown space descriptor {space!r}")
    return out


def theta_standard(prec) -> ScalarQSeries:
    """The weight 1/2 theta function 1 + 2q + 2q^4 + 2q^9 + ..."""
    prec = Fraction(prec)
    coeffs = {Fraction(0): Fraction(1)}
    n = 1
    while Fraction(n * n) < prec:
        coeffs[Fraction(n * n)] = Fraction(2)
        n += 1
    return ScalarQSeries(1, prec, coeffs)


def minus_to_plus(f: Level3Form) -> PlusSpaceForm:
    """M_k^- (level 3) -> M_{k+1/2}^+ (level 4).

    Halve the coefficients away from multiples of 3, substitute q -> q^{4/3},
    multiply by theta(tau/3), and keep integer exponents.
    """
    if f.sign != "-":
        raise DomainError("minus_to_plus expects a minus-space form")
    bad = f.violations()
    if bad:
        raise DomainError("input violates the minus-space pattern: " + "; ".join(bad))
    halved = s_halve_on_residues(f.series, 3, {1, 2})
    stretched = s_rescale_q(halved, Fraction(4, 3))
    theta = s_rescale_q(theta_standard(3 * stretched.prec), Fraction(1, 3))
    series = s_restrict_integer(s_mul(stretched, theta))
    out = PlusSpaceForm(series, f.weight)
    bad = out.violations()
    if bad:
        raise InternalError("output violates the plus condition: " + "; ".join(bad))
    return out


def plus_to_level3(f: PlusSpaceForm) -> Level3Form:
    """M_{k-1/2}^+ (level 4) -> M_k^+ (level 3), k odd.

    Multiply f(3 tau / 4) by theta(tau / 4) and keep integer exponents.
    """
    if f.k % 2 != 0:
        raise DomainError("plus_to_level3 expects the even-k plus spaces M_{k+1/2}^+")
    bad = f.violations()
    if bad:
        raise DomainError("input violates the plus condition: " + "; ".join(bad))
    stretched = s_rescale_q(f.series, Fraction(3, 4))
    theta = s_rescale_q(theta_standard(4 * stretched.prec), Fraction(1, 4))
    series = s_restrict_integer(s_mul(stretched, theta))
    out = Level3Form(series, f.k + 1, "+")
    bad = out.violations()
    if bad:
        raise InternalError("output violates the plus pattern: " + "; ".join(bad))
    return out


def bb_scalarize(f: VVExpansion) -> ScalarQSeries:
    """Sum all components of a dual expansion, rescaling q by the level.

    The output coefficient at level * n accumulates c(n, gamma) over all
    gamma.  The exponent rescale factor is the level of the discriminant
    group; only the printed prime-determinant pairs are battle-tested.
    """
    if not f.dual:
        raise DomainError("scalarization expects a dual-flagged expansion")
    level = f.group.level
    out: dict = {}
    for (n, _gi), c in f.coeffs.items():
        exponent = level * n
        if exponent.denominator != 1:
            raise InternalError(
                f"scalarization produced the non-integer exponent {exponent}"
            )
        out[exponent] = out.get(exponent, Fraction(0)) + c
    return ScalarQSeries(1, level * f.prec, out)
