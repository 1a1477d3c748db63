"""Printed test data and exact high-precision extensions.

The data directory holds the printed expansions at their printed
truncation.  The two weight-3 vector-valued fixtures can also be produced
to any precision: the scalar forms they correspond to live in the
two-dimensional space M_3(Gamma_0(3), chi), which is spanned by the cube of
the theta function of x^2 + xy + y^2 and by the eta quotient
eta(tau)^9 / eta(3 tau)^3.  Matching constant and q^1 coefficients gives

    minus form = (theta^3 + 2 eta-quotient) / 3,
    plus form  = (4 eta-quotient - theta^3) / 3,

and the vector-valued forms are recovered componentwise from the residue of
the exponent mod 3 (the two nonzero classes share each coefficient
equally).  Every printed coefficient is asserted against this construction
in the test suite.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import isqrt

from .errors import DomainError, InternalError, ParseError
from .expansions import ScalarQSeries, VVExpansion, from_json_dict
from .kohnen import Level3Form, PlusSpaceForm
from .lattice import discriminant_group, gram

_GRAM_A2 = ((2, 1), (1, 2))
_GRAM_A2_NEG = ((-2, -1), (-1, -2))

_FILES = {
    "E3_A2_dual": "e3_a2_dual.json",
    "E3_A2neg_dual": "e3_a2neg_dual.json",
    "cohen_5_2": "cohen_5_2.json",
    "cohen_7_2": "cohen_7_2.json",
    "theta_level3_plus": "theta_level3_plus.json",
    "E3_scalar_minus": "e3_scalar_minus.json",
    "E3_scalar_plus": "e3_scalar_plus.json",
}


def fixture_names() -> list[str]:
    return sorted(_FILES)


def _read(name: str) -> dict:
    try:
        filename = _FILES[name]
    except KeyError:
        raise DomainError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}") from None
    text = resources.files("weilforms.data").joinpath(filename).read_text()
    return json.loads(text)


def load_fixture(name: str):
    """The fixture at its printed truncation, as a library object."""
    data = _read(name)
    kind = data.get("kind")
    if kind in ("plusform", "level3form"):
        series = from_json_dict(data["series"])
        if kind == "plusform":
            return PlusSpaceForm(series, int(data["k"]))
        return Level3Form(series, int(data["weight"]), data["sign"])
    return from_json_dict(data)


def fixture_json(name: str) -> dict:
    return _read(name)


# ---------------------------------------------------------------------------
# exact scalar constructions


def _poly_mul(a: list, b: list, prec: int) -> list:
    out = [0] * prec
    for i, x in enumerate(a):
        if x and i < prec:
            top = min(prec - i, len(b))
            for j in range(top):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _poly_inverse(a: list, prec: int) -> list:
    if not a or a[0] == 0:
        raise DomainError("series inversion needs a unit constant term")
    if a[0] != 1:
        raise DomainError("series inversion implemented for constant term 1 only")
    out = [0] * prec
    out[0] = 1
    for n in range(1, prec):
        acc = 0
        for k in range(1, min(n, len(a) - 1) + 1):
            if a[k]:
                acc += a[k] * out[n - k]
        out[n] = -acc
    return out


def _eta_power(scale: int, power: int, prec: int) -> list:
    """prod_{n >= 1} (1 - q^{scale n})^{power} truncated at q^prec, power >= 0."""
    out = [0] * prec
    out[0] = 1
    for n in range(1, (prec - 1) // scale + 1):
        factor = [0] * (scale * n + 1)
        factor[0] = 1
        factor[scale * n] = -1
        for _ in range(power):
            out = _poly_mul(out, factor, prec)
    return out


@lru_cache(maxsize=None)
def hexagonal_theta(prec: int) -> tuple:
    """Representation numbers of x^2 + xy + y^2 as a coefficient tuple."""
    out = [0] * prec
    bound = isqrt(2 * prec) + 2
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            n = a * a + a * b + b * b
            if n < prec:
                out[n] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _scalar_e3_pair(prec: int) -> tuple[tuple, tuple]:
    """(minus series, plus series) of M_3(Gamma_0(3), chi) as integer tuples."""
    theta = list(hexagonal_theta(prec))
    a3 = _poly_mul(_poly_mul(theta, theta, prec), theta, prec)
    b3 = _poly_mul(
        _eta_power(1, 9, prec), _poly_inverse(_eta_power(3, 3, prec), prec), prec
    )
    minus = []
    plus = []
    for x, y in zip(a3, b3):
        m3, rm = divmod(x + 2 * y, 3)
        p3, rp = divmod(4 * y - x, 3)
        if rm or rp:
            raise InternalError("scalar weight-3 combination is not integral")
        minus.append(m3)
        plus.append(p3)
    return tuple(minus), tuple(plus)


def scalar_e3(sign: str, prec: int) -> ScalarQSeries:
    """The printed level-3 weight-3 scalar forms, to any precision."""
    minus, plus = _scalar_e3_pair(int(prec))
    coeffs = minus if sign == "-" else plus
    return ScalarQSeries(1, prec, {Fraction(n): c for n, c in enumerate(coeffs)})


def extended_fixture(name: str, prec) -> VVExpansion:
    """The two E3 fixtures at arbitrary precision via the scalar identities."""
    prec = Fraction(prec)
    if name == "E3_A2_dual":
        g = discriminant_group(gram(_GRAM_A2))
        sign = "-"
    elif name == "E3_A2neg_dual":
        g = discriminant_group(gram(_GRAM_A2_NEG))
        sign = "+"
    else:
        raise DomainError(f"no extension rule for fixture {name!r}")
    scalar_prec = 3 * (int(prec) + 1)
    series = scalar_e3(sign, scalar_prec)
    coeffs = {}
    zero_index = g.index_of((Fraction(0), Fraction(0)))
    for gi in range(g.order):
        residue = (-g.q_of(gi)) % 1
        n = residue
        while n < prec:
            value = series.coeff(3 * n)
            if value:
                coeffs[(n, gi)] = value if gi == zero_index else Fraction(value, 2)
            n += 1
    # the scalar forms must vanish on the residue class not hit by any gamma
    forbidden = 2 if sign == "-" else 1
    for m, c in series.items():
        if m.numerator % 3 == forbidden and c:
            raise InternalError("scalar form violates its vanishing pattern")
    return VVExpansion(g, 3, True, prec, coeffs)
