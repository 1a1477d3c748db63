"""Truncated Fourier expansions: vector-valued, Jacobi, and scalar q-series.

Coefficients are exact rationals; zero coefficients are never stored.  The
precision field ``prec`` is an exclusive upper bound on reliable exponents:
binary operations take the valley min(p1 + floor2, p2 + floor1) where the
floor of a series is min(0, lowest exponent), and a q-rescale by s
multiplies prec by s.

Support conventions depend on the dual flag: a dual expansion has exponents
n in Z - Q(gamma) and Jacobi r in Z^N - B^T S gamma; a non-dual one flips
both signs (the theta series of a positive definite lattice is non-dual).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import _linalg as la
from .errors import DomainError, InvalidIndexError, ParseError
from .exact import format_rational, mod1, parse_rational
from .lattice import (
    DiscriminantGroup,
    GramMatrix,
    direct_sum,
    discriminant_group,
    gram,
)

Coeffs = dict


def _sign(dual: bool) -> int:
    return -1 if dual else 1


def exponent_class(group: DiscriminantGroup, gi: int, dual: bool) -> Fraction:
    """The residue f in [0,1) with admissible exponents f + Z for element gi."""
    q = group.q_of(gi)
    return mod1(_sign(dual) * q)


class VVExpansion:
    """A truncated vector-valued Fourier expansion sum c(n, gamma) q^n e_gamma."""

    __slots__ = ("group", "weight", "dual", "prec", "coeffs")

    def __init__(self, group: DiscriminantGroup, weight, dual: bool, prec, coeffs: Coeffs):
        weight = Fraction(weight)
        if weight.denominator > 2:
            raise DomainError(f"weights are half-integers, got {weight}")
        self.group = group
        self.weight = weight
        self.dual = bool(dual)
        self.prec = Fraction(prec)
        clean: Coeffs = {}
        for (n, gi), c in coeffs.items():
            c = Fraction(c)
            if c == 0:
                continue
            n = Fraction(n)
            gi = int(gi)
            if not 0 <= gi < group.order:
                raise DomainError(f"bad element index {gi}")
            clean[(n, gi)] = c
        self.coeffs = clean

    def coeff(self, n, gamma) -> Fraction:
        """c(n, gamma); gamma may be an element index or a coordinate vector."""
        gi = gamma if isinstance(gamma, int) else self.group.index_of(gamma)
        return self.coeffs.get((Fraction(n), gi), Fraction(0))

    def floor_exponent(self) -> Fraction:
        return min((n for (n, _) in self.coeffs), default=Fraction(0))

    def pole_depth(self) -> Fraction:
        return max(Fraction(0), -self.floor_exponent())

    def support_violations(self) -> list[str]:
        out = []
        for (n, gi) in sorted(self.coeffs):
            if mod1(n) != exponent_class(self.group, gi, self.dual):
                out.append(
                    f"exponent {format_rational(n)} at gamma={_coords_str(self.group, gi)} "
                    f"is not in Z {'-' if self.dual else '+'} Q(gamma)"
                )
        return out

    def items(self):
        """Sorted (n, gamma_index, coefficient) triples."""
        for (n, gi) in sorted(self.coeffs, key=lambda k: (k[0], self.group.elements[k[1]])):
            yield n, gi, self.coeffs[(n, gi)]

    def truncated(self, bound) -> "VVExpansion":
        bound = min(Fraction(bound), self.prec)
        kept = {k: v for k, v in self.coeffs.items() if k[0] < bound}
        return VVExpansion(self.group, self.weight, self.dual, bound, kept)

    def _check_compatible(self, other: "VVExpansion"):
        if self.group != other.group or self.weight != other.weight or self.dual != other.dual:
            raise DomainError("expansions live in different spaces")

    def __add__(self, other: "VVExpansion") -> "VVExpansion":
        self._check_compatible(other)
        total = dict(self.coeffs)
        for k, v in other.coeffs.items():
            total[k] = total.get(k, Fraction(0)) + v
        return VVExpansion(self.group, self.weight, self.dual, min(self.prec, other.prec), total)

    def __sub__(self, other: "VVExpansion") -> "VVExpansion":
        return self + other.scale(-1)

    def scale(self, c) -> "VVExpansion":
        c = Fraction(c)
        return VVExpansion(
            self.group,
            self.weight,
            self.dual,
            self.prec,
            {k: c * v for k, v in self.coeffs.items()},
        )

    def tensor(self, other: "VVExpansion") -> "VVExpansion":
        """Tensor product: weights add, groups direct-sum, coefficients convolve."""
        if self.dual != other.dual:
            raise DomainError("cannot tensor a dual with a non-dual expansion")
        big = discriminant_group(direct_sum(self.group.gram, other.group.gram))
        prec = min(
            self.prec + min(Fraction(0), other.floor_exponent()),
            other.prec + min(Fraction(0), self.floor_exponent()),
        )
        out: Coeffs = {}
        for (n1, g1), c1 in self.coeffs.items():
            coords1 = self.group.elements[g1]
            for (n2, g2), c2 in other.coeffs.items():
                n = n1 + n2
                if n >= prec:
                    continue
                gi = big.index_of(coords1 + other.group.elements[g2])
                key = (n, gi)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return VVExpansion(big, self.weight + other.weight, self.dual, prec, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, VVExpansion):
            return NotImplemented
        return (
            self.group == other.group
            and self.weight == other.weight
            and self.dual == other.dual
            and self.prec == other.prec
            and self.coeffs == other.coeffs
        )

    def same_coefficients(self, other: "VVExpansion", bound=None) -> bool:
        """Coefficientwise equality below min(prec) (or an explicit bound)."""
        if self.group != other.group:
            return False
        if bound is None:
            bound = min(self.prec, other.prec)
        return self.truncated(bound).coeffs == other.truncated(bound).coeffs

    def __repr__(self):
        return (
            f"VVExpansion(gram={self.group.gram.to_json()}, weight={self.weight}, "
            f"dual={self.dual}, prec={self.prec}, terms={len(self.coeffs)})"
        )


@dataclass(frozen=True)
class JacobiIndex:
    """The index (M, B): M rational symmetric positive definite, B rational e x N."""

    m: tuple[tuple[Fraction, ...], ...]
    b: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = la.as_matrix(self.m)
        b = la.as_matrix(self.b)
        if not la.is_symmetric(m):
            raise InvalidIndexError("index M must be symmetric")
        if not la.is_positive_definite(m):
            raise InvalidIndexError("index M must be positive definite")
        if la.dims(b)[1] != len(m):
            raise InvalidIndexError("B must have N columns")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "b", b)

    @property
    def n_vars(self) -> int:
        return len(self.m)

    def m_inverse(self):
        return la.inverse(self.m)


def validate_index(s: GramMatrix, index: JacobiIndex) -> list[str]:
    """Condition (ii) and integrality of S*B; returns violation messages."""
    out = []
    if la.dims(index.b)[0] != s.size:
        return [f"B must have {s.size} rows"]
    sb = la.mat_mul(la.as_matrix(s.entries), index.b)
    if not la.is_integral(sb):
        out.append("S*B is not integral")
        return out
    btsb = la.mat_mul(la.transpose(index.b), sb)
    bottom = la.mat_add(la.mat_scale(index.m, 2), btsb)
    if not la.is_integral(bottom):
        out.append("2M + B^T S B is not integral")
    else:
        for i in range(index.n_vars):
            if Fraction(bottom[i][i]).numerator % 2 != 0:
                out.append("2M + B^T S B has odd diagonal")
                break
    return out


class JacobiExpansion:
    """A truncated Jacobi Fourier expansion sum c(n, r, gamma) q^n zeta^r e_gamma."""

    __slots__ = ("group", "weight", "dual", "index", "prec", "weak_bound", "coeffs")

    def __init__(
        self,
        group: DiscriminantGroup,
        weight,
        index: JacobiIndex,
        prec,
        coeffs: Coeffs,
        weak_bound=0,
        dual: bool = True,
    ):
        weight = Fraction(weight)
        if weight.denominator > 2:
            raise DomainError(f"weights are half-integers, got {weight}")
        if la.dims(index.b)[0] != group.gram.size:
            raise InvalidIndexError("B has wrong number of rows for this Gram matrix")
        self.group = group
        self.weight = weight
        self.dual = bool(dual)
        self.index = index
        self.prec = Fraction(prec)
        self.weak_bound = Fraction(weak_bound)
        if self.weak_bound < 0:
            raise DomainError("weak bound must be nonnegative")
        n_vars = index.n_vars
        clean: Coeffs = {}
        for (n, r, gi), c in coeffs.items():
            c = Fraction(c)
            if c == 0:
                continue
            r = tuple(Fraction(x) for x in r)
            if len(r) != n_vars:
                raise DomainError(f"r has wrong length: {r}")
            clean[(Fraction(n), r, int(gi))] = c
        self.coeffs = clean

    @property
    def n_vars(self) -> int:
        return self.index.n_vars

    def coeff(self, n, r, gamma) -> Fraction:
        gi = gamma if isinstance(gamma, int) else self.group.index_of(gamma)
        key = (Fraction(n), tuple(Fraction(x) for x in r), gi)
        return self.coeffs.get(key, Fraction(0))

    def r_class(self, gi: int) -> tuple[Fraction, ...]:
        """The residue of admissible r mod Z^N for element gi."""
        bts = la.mat_mul(la.transpose(self.index.b), la.as_matrix(self.group.gram.entries))
        v = la.mat_vec(bts, self.group.elements[gi])
        return tuple(mod1(_sign(self.dual) * x) for x in v)

    def floor_exponent(self) -> Fraction:
        return min((n for (n, _, _) in self.coeffs), default=Fraction(0))

    def items(self):
        for key in sorted(
            self.coeffs, key=lambda k: (k[0], self.group.elements[k[2]], k[1])
        ):
            n, r, gi = key
            yield n, r, gi, self.coeffs[key]

    def truncated(self, bound) -> "JacobiExpansion":
        bound = min(Fraction(bound), self.prec)
        kept = {k: v for k, v in self.coeffs.items() if k[0] < bound}
        return JacobiExpansion(self.group, self.weight, self.index, bound, kept, self.weak_bound, self.dual)

    def __add__(self, other: "JacobiExpansion") -> "JacobiExpansion":
        if (
            self.group != other.group
            or self.weight != other.weight
            or self.dual != other.dual
            or self.index != other.index
        ):
            raise DomainError("Jacobi expansions live in different spaces")
        total = dict(self.coeffs)
        for k, v in other.coeffs.items():
            total[k] = total.get(k, Fraction(0)) + v
        return JacobiExpansion(
            self.group,
            self.weight,
            self.index,
            min(self.prec, other.prec),
            total,
            max(self.weak_bound, other.weak_bound),
            self.dual,
        )

    def scale(self, c) -> "JacobiExpansion":
        c = Fraction(c)
        return JacobiExpansion(
            self.group,
            self.weight,
            self.index,
            self.prec,
            {k: c * v for k, v in self.coeffs.items()},
            self.weak_bound,
            self.dual,
        )

    def tensor(self, other: "JacobiExpansion") -> "JacobiExpansion":
        """Tensor product: indices add as (M1 + M2, stacked B)."""
        if self.dual != other.dual:
            raise DomainError("cannot tensor a dual with a non-dual expansion")
        if self.n_vars != other.n_vars:
            raise DomainError("tensor factors must share the number of elliptic variables")
        big = discriminant_group(direct_sum(self.group.gram, other.group.gram))
        index = JacobiIndex(la.mat_add(self.index.m, other.index.m), self.index.b + other.index.b)
        prec = min(
            self.prec + min(Fraction(0), other.floor_exponent()),
            other.prec + min(Fraction(0), self.floor_exponent()),
        )
        out: Coeffs = {}
        for (n1, r1, g1), c1 in self.coeffs.items():
            coords1 = self.group.elements[g1]
            for (n2, r2, g2), c2 in other.coeffs.items():
                n = n1 + n2
                if n >= prec:
                    continue
                r = tuple(x + y for x, y in zip(r1, r2))
                gi = big.index_of(coords1 + other.group.elements[g2])
                key = (n, r, gi)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return JacobiExpansion(
            big,
            self.weight + other.weight,
            index,
            prec,
            out,
            self.weak_bound + other.weak_bound,
            self.dual,
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, JacobiExpansion):
            return NotImplemented
        return (
            self.group == other.group
            and self.weight == other.weight
            and self.dual == other.dual
            and self.index == other.index
            and self.prec == other.prec
            and self.weak_bound == other.weak_bound
            and self.coeffs == other.coeffs
        )

    def same_coefficients(self, other: "JacobiExpansion", bound=None) -> bool:
        if self.group != other.group:
            return False
        if bound is None:
            bound = min(self.prec, other.prec)
        return self.truncated(bound).coeffs == other.truncated(bound).coeffs

    def __repr__(self):
        return (
            f"JacobiExpansion(gram={self.group.gram.to_json()}, weight={self.weight}, "
            f"dual={self.dual}, N={self.n_vars}, prec={self.prec}, terms={len(self.coeffs)})"
        )


def validate_support(phi: JacobiExpansion) -> list[str]:
    """Check support conditions (i), (iii), the index condition (ii), and the
    discriminant bound 4n - r^T M^{-1} r >= -4h.  Report-only."""
    out = list(validate_index(phi.group.gram, phi.index))
    m_inv = phi.index.m_inverse()
    classes = {}
    for (n, r, gi) in sorted(phi.coeffs, key=lambda k: (k[0], k[2], k[1])):
        if mod1(n) != exponent_class(phi.group, gi, phi.dual):
            out.append(
                f"(i) exponent {format_rational(n)} at gamma={_coords_str(phi.group, gi)} "
                "is outside its class"
            )
        if gi not in classes:
            classes[gi] = phi.r_class(gi)
        if tuple(mod1(x) for x in r) != classes[gi]:
            out.append(
                f"(iii) r=({','.join(format_rational(x) for x in r)}) at "
                f"gamma={_coords_str(phi.group, gi)} is outside its class"
            )
        disc = 4 * n - la.vec_dot(la.mat_vec(m_inv, r), r)
        if disc < -4 * phi.weak_bound:
            out.append(
                f"discriminant 4n - r^T M^-1 r = {format_rational(disc)} below "
                f"-4h = {format_rational(-4 * phi.weak_bound)} at n={format_rational(n)}"
            )
    return out


class ScalarQSeries:
    """A scalar q-series with exponents in (1/denom) Z."""

    __slots__ = ("denom", "prec", "floor", "coeffs")

    def __init__(self, denom: int, prec, coeffs: Coeffs, floor=None):
        denom = int(denom)
        if denom < 1:
            raise DomainError("denominator must be positive")
        self.denom = denom
        self.prec = Fraction(prec)
        clean: Coeffs = {}
        for n, c in coeffs.items():
            c = Fraction(c)
            if c == 0:
                continue
            n = Fraction(n)
            if denom % n.denominator != 0:
                raise DomainError(
                    f"exponent {format_rational(n)} has denominator not dividing {denom}"
                )
            clean[n] = c
        self.coeffs = clean
        if floor is None:
            floor = min(Fraction(0), min(clean, default=Fraction(0)))
        self.floor = Fraction(floor)
        low = min(clean, default=self.floor)
        if low < self.floor:
            raise DomainError("exponent below the stored floor")

    def coeff(self, n) -> Fraction:
        return self.coeffs.get(Fraction(n), Fraction(0))

    def items(self):
        for n in sorted(self.coeffs):
            yield n, self.coeffs[n]

    def truncated(self, bound) -> "ScalarQSeries":
        bound = min(Fraction(bound), self.prec)
        return ScalarQSeries(
            self.denom, bound, {n: c for n, c in self.coeffs.items() if n < bound}, self.floor
        )

    def __add__(self, other: "ScalarQSeries") -> "ScalarQSeries":
        total = dict(self.coeffs)
        for n, c in other.coeffs.items():
            total[n] = total.get(n, Fraction(0)) + c
        return ScalarQSeries(
            lcm(self.denom, other.denom),
            min(self.prec, other.prec),
            total,
            min(self.floor, other.floor),
        )

    def scale(self, c) -> "ScalarQSeries":
        c = Fraction(c)
        return ScalarQSeries(self.denom, self.prec, {n: c * v for n, v in self.coeffs.items()}, self.floor)

    def __eq__(self, other):
        if not isinstance(other, ScalarQSeries):
            return NotImplemented
        return (
            self.denom == other.denom
            and self.prec == other.prec
            and self.coeffs == other.coeffs
        )

    def same_coefficients(self, other: "ScalarQSeries", bound=None) -> bool:
        if bound is None:
            bound = min(self.prec, other.prec)
        return self.truncated(bound).coeffs == other.truncated(bound).coeffs

    def __repr__(self):
        head = " + ".join(
            f"{format_rational(c)}q^{format_rational(n)}" for n, c in list(self.items())[:6]
        )
        return f"ScalarQSeries({head or '0'}, prec={self.prec})"


def s_mul(f: ScalarQSeries, g: ScalarQSeries) -> ScalarQSeries:
    """Product with valley precision."""
    prec = min(f.prec + min(Fraction(0), g.floor), g.prec + min(Fraction(0), f.floor))
    out: Coeffs = {}
    for n1, c1 in f.coeffs.items():
        for n2, c2 in g.coeffs.items():
            n = n1 + n2
            if n >= prec:
                continue
            out[n] = out.get(n, Fraction(0)) + c1 * c2
    return ScalarQSeries(lcm(f.denom, g.denom), prec, out, f.floor + g.floor)


def s_rescale_q(f: ScalarQSeries, s) -> ScalarQSeries:
    """Substitute q -> q^s for a positive rational s."""
    s = Fraction(s)
    if s <= 0:
        raise DomainError("rescale factor must be positive")
    return ScalarQSeries(
        f.denom * s.denominator,
        f.prec * s,
        {n * s: c for n, c in f.coeffs.items()},
        f.floor * s,
    )


def s_restrict_integer(f: ScalarQSeries) -> ScalarQSeries:
    """Keep only integer exponents."""
    return ScalarQSeries(
        1,
        f.prec,
        {n: c for n, c in f.coeffs.items() if n.denominator == 1},
        min(f.floor, Fraction(0)),
    )


def s_halve_on_residues(f: ScalarQSeries, modulus: int, residues) -> ScalarQSeries:
    """Divide by two the coefficients at integer exponents in the given residues."""
    residues = {int(r) % modulus for r in residues}
    out: Coeffs = {}
    for n, c in f.coeffs.items():
        if n.denominator != 1:
            raise DomainError("residue halving needs integer exponents")
        out[n] = c / 2 if n.numerator % modulus in residues else c
    return ScalarQSeries(f.denom, f.prec, out, f.floor)


class SymmetryResult:
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"
    BOTH = "both"
    NEITHER = "neither"


def symmetry_check(form) -> str:
    """Classify c(n, -r, -gamma) against c(n, r, gamma) over all stored terms.

    Returns "symmetric", "antisymmetric", "both" (zero form), or "neither".
    Raises DomainError when the weight is incompatible with the signature
    (those spaces are zero).
    """
    group = form.group
    sig_half = Fraction(group.signature, 2)
    t = form.weight + sig_half if form.dual else form.weight - sig_half
    if t.denominator != 1:
        raise DomainError(
            f"weight {form.weight} with signature {group.signature} "
            "admits no nonzero forms"
        )
    sym_ok = anti_ok = True
    if isinstance(form, JacobiExpansion):
        pairs = (
            ((n, r, gi), (n, tuple(-x for x in r), group.neg_index(gi)))
            for (n, r, gi) in form.coeffs
        )
    else:
        pairs = (((n, gi), (n, group.neg_index(gi))) for (n, gi) in form.coeffs)
    for key, partner in pairs:
        c = form.coeffs[key]
        d = form.coeffs.get(partner, Fraction(0))
        if d != c:
            sym_ok = False
        if d != -c:
            anti_ok = False
        if not sym_ok and not anti_ok:
            return SymmetryResult.NEITHER
    if sym_ok and anti_ok:
        return SymmetryResult.BOTH
    return SymmetryResult.SYMMETRIC if sym_ok else SymmetryResult.ANTISYMMETRIC


def expected_symmetry(form) -> str:
    """The sign forced by the transformation under Z = S^2."""
    sig_half = Fraction(form.group.signature, 2)
    t = form.weight + sig_half if form.dual else form.weight - sig_half
    if t.denominator != 1:
        raise DomainError("weight incompatible with signature")
    return SymmetryResult.SYMMETRIC if t.numerator % 2 == 0 else SymmetryResult.ANTISYMMETRIC


# ---------------------------------------------------------------------------
# serialization


def _coords_str(group: DiscriminantGroup, gi: int) -> str:
    return "(" + ",".join(format_rational(x) for x in group.elements[gi]) + ")"


def _matrix_to_json(m) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m]


def _matrix_from_json(data, what: str):
    try:
        return la.as_matrix([[parse_rational(x) for x in row] for row in data])
    except (TypeError, ParseError) as exc:
        raise ParseError(f"bad {what}: {data!r}") from exc


def to_json_dict(form) -> dict:
    """Canonical JSON representation of any expansion type."""
    if isinstance(form, VVExpansion):
        return {
            "kind": "vvform",
            "gram": form.group.gram.to_json(),
            "dual": form.dual,
            "weight": format_rational(form.weight),
            "prec": format_rational(form.prec),
            "coeffs": [
                {
                    "n": format_rational(n),
                    "gamma": [format_rational(x) for x in form.group.elements[gi]],
                    "c": format_rational(c),
                }
                for n, gi, c in form.items()
            ],
        }
    if isinstance(form, JacobiExpansion):
        return {
            "kind": "jacobiform",
            "gram": form.group.gram.to_json(),
            "dual": form.dual,
            "weight": format_rational(form.weight),
            "prec": format_rational(form.prec),
            "index_m": _matrix_to_json(form.index.m),
            "index_b": _matrix_to_json(form.index.b),
            "weak_bound": format_rational(form.weak_bound),
            "coeffs": [
                {
                    "n": format_rational(n),
                    "gamma": [format_rational(x) for x in form.group.elements[gi]],
                    "r": [format_rational(x) for x in r],
                    "c": format_rational(c),
                }
                for n, r, gi, c in form.items()
            ],
        }
    if isinstance(form, ScalarQSeries):
        return {
            "kind": "qseries",
            "denom": form.denom,
            "prec": format_rational(form.prec),
            "coeffs": [[format_rational(n), format_rational(c)] for n, c in form.items()],
        }
    raise DomainError(f"cannot serialize {type(form).__name__}")


def from_json_dict(data):
    """Parse any expansion type; raises ParseError with a location hint."""
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object")
    kind = data.get("kind")
    try:
        if kind == "vvform":
            g = discriminant_group(gram(data["gram"]))
            coeffs = {}
            for entry in data["coeffs"]:
                gi = g.index_of([parse_rational(x) for x in entry["gamma"]])
                coeffs[(parse_rational(entry["n"]), gi)] = parse_rational(entry["c"])
            return VVExpansion(
                g, parse_rational(data["weight"]), bool(data["dual"]), parse_rational(data["prec"]), coeffs
            )
        if kind == "jacobiform":
            g = discriminant_group(gram(data["gram"]))
            index = JacobiIndex(
                _matrix_from_json(data["index_m"], "index_m"),
                _matrix_from_json(data["index_b"], "index_b"),
            )
            coeffs = {}
            for entry in data["coeffs"]:
                gi = g.index_of([parse_rational(x) for x in entry["gamma"]])
                r = tuple(parse_rational(x) for x in entry["r"])
                coeffs[(parse_rational(entry["n"]), r, gi)] = parse_rational(entry["c"])
            return JacobiExpansion(
                g,
                parse_rational(data["weight"]),
                index,
                parse_rational(data["prec"]),
                coeffs,
                parse_rational(data.get("weak_bound", "0")),
                bool(data["dual"]),
            )
        if kind == "qseries":
            coeffs = {parse_rational(n): parse_rational(c) for n, c in data["coeffs"]}
            return ScalarQSeries(int(data["denom"]), parse_rational(data["prec"]), coeffs)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, DomainError) as exc:
        raise ParseError(f"malformed {kind or 'expansion'} payload: {exc}") from exc
    raise ParseError(f"unknown kind field: {kind!r}")


def dumps(form) -> str:
    return json.dumps(to_json_dict(form), indent=1)


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at offset {exc.pos}: {exc.msg}") from exc
    return from_json_dict(data)
