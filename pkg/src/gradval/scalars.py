"""Exact coefficient fields with a discrete or trivial valuation.

Supported fields: the rationals, real quadratic-style extensions Q(sqrt(a))
for a squarefree non-square integer a, and prime fields F_p.  A p-adic
valuation is available on the rationals only; everything else carries the
trivial valuation.  All arithmetic is exact (``fractions.Fraction`` under the
hood); values are kept in canonical reduced form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bounds import POS_INF, Bound
from .errors import (
    DescriptorMismatch,
    DivisionByZero,
    GradvalError,
    NegativeValue,
    ParseError,
    ValuationUnsupported,
)

RAT = "rationals"
QUAD = "quadratic"
PRIME = "prime"

TRIVIAL = "trivial"
PADIC = "padic"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Descriptor of a coefficient field and its valuation."""

    kind: str
    valuation: str = TRIVIAL
    prime: Optional[int] = None  # valuation prime (padic) or field characteristic
    quad: Optional[int] = None  # the a of sqrt(a)

    def __post_init__(self):
        if self.kind not in (RAT, QUAD, PRIME):
            raise GradvalError(f"unknown field kind {self.kind!r}")
        if self.valuation not in (TRIVIAL, PADIC):
            raise GradvalError(f"unknown valuation {self.valuation!r}")
        if self.kind == QUAD:
            a = self.quad
            if a is None or a in (0, 1) or not _is_squarefree(a):
                raise GradvalError("quadratic extension needs a squarefree a not in {0,1}")
        if self.kind == PRIME:
            if self.prime is None or not _is_prime(self.prime):
                raise GradvalError("prime field needs a prime characteristic")
            if self.valuation != TRIVIAL:
                raise ValuationUnsupported("prime fields carry the trivial valuation")
        if self.valuation == PADIC:
            if self.kind != RAT:
                raise ValuationUnsupported("p-adic valuations are supported on Q only")
            if self.prime is None or not _is_prime(self.prime):
                raise GradvalError("p-adic valuation needs a prime")

    def describe(self) -> str:
        if self.kind == RAT:
            base = "Q"
        elif self.kind == QUAD:
            base = f"Q(sqrt({self.quad}))"
        else:
            base = f"F{self.prime}"
        if self.valuation == PADIC:
            return f"{base} with {self.prime}-adic valuation"
        return f"{base} with trivial valuation"

    def residue_spec(self) -> "FieldSpec":
        """Descriptor of the residue field of the valuation ring."""
        if self.valuation == PADIC:
            return FieldSpec(PRIME, TRIVIAL, prime=self.prime)
        return self


@dataclass(frozen=True)
class Scalar:
    """An exact field element: rat + irr*sqrt(a), or a residue mod p."""

    spec: FieldSpec
    rat: Fraction
    irr: Fraction = Fraction(0)

    def __post_init__(self):
        if self.spec.kind == PRIME:
            p = self.spec.prime
            object.__setattr__(self, "rat", Fraction(int(self.rat) % p))
            object.__setattr__(self, "irr", Fraction(0))
        elif self.spec.kind == RAT and self.irr != 0:
            raise GradvalError("rational scalar with irrational part")

    def is_zero(self) -> bool:
        return self.rat == 0 and self.irr == 0

    def __str__(self) -> str:
        if self.spec.kind != QUAD or self.irr == 0:
            return str(self.rat)
        parts = []
        if self.rat != 0:
            parts.append(str(self.rat))
        if self.irr == 1:
            term = "sqrt"
        elif self.irr == -1:
            term = "-sqrt"
        else:
            term = f"{self.irr}*sqrt"
        parts.append(term)
        head = parts[0]
        for extra in parts[1:]:
            head += extra if extra.startswith("-") else "+" + extra
        return head


def scalar(spec: FieldSpec, rat, irr=0) -> Scalar:
    return Scalar(spec, Fraction(rat), Fraction(irr))


def zero(spec: FieldSpec) -> Scalar:
    return scalar(spec, 0)


def one(spec: FieldSpec) -> Scalar:
    return scalar(spec, 1)


def _check(x: Scalar, y: Scalar) -> None:
    if x.spec != y.spec:
        raise DescriptorMismatch(f"{x.spec} vs {y.spec}")


def add(x: Scalar, y: Scalar) -> Scalar:
    _check(x, y)
    return Scalar(x.spec, x.rat + y.rat, x.irr + y.irr)


def neg(x: Scalar) -> Scalar:
    return Scalar(x.spec, -x.rat, -x.irr)


def sub(x: Scalar, y: Scalar) -> Scalar:
    return add(x, neg(y))


def mul(x: Scalar, y: Scalar) -> Scalar:
    _check(x, y)
    if x.spec.kind == QUAD:
        a = x.spec.quad
        return Scalar(
            x.spec,
            x.rat * y.rat + a * x.irr * y.irr,
            x.rat * y.irr + x.irr * y.rat,
        )
    return Scalar(x.spec, x.rat * y.rat)


def inverse(x: Scalar) -> Scalar:
    if x.is_zero():
        raise DivisionByZero("scalar inverse of zero")
    if x.spec.kind == QUAD:
        a = x.spec.quad
        norm = x.rat * x.rat - a * x.irr * x.irr
        if norm == 0:
            raise DivisionByZero("zero norm; a must be a non-square")
        return Scalar(x.spec, x.rat / norm, -x.irr / norm)
    if x.spec.kind == PRIME:
        return Scalar(x.spec, pow(int(x.rat), -1, x.spec.prime))
    return Scalar(x.spec, 1 / x.rat)


def div(x: Scalar, y: Scalar) -> Scalar:
    _check(x, y)
    return mul(x, inverse(y))


def arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    table = {"+": add, "-": sub, "*": mul, "/": div}
    if op not in table:
        raise GradvalError(f"unknown operation {op!r}")
    return table[op](x, y)


# -- valuation --------------------------------------------------------------


def _padic_val_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuate(x: Scalar) -> Bound:
    """The valuation of x; infinity exactly at zero."""
    if x.is_zero():
        return POS_INF
    if x.spec.valuation == TRIVIAL:
        return 0
    p = x.spec.prime
    return _padic_val_int(x.rat.numerator, p) - _padic_val_int(x.rat.denominator, p)


def uniformizer(spec: FieldSpec) -> Scalar:
    if spec.valuation != PADIC:
        return one(spec)
    return scalar(spec, spec.prime)


def scalar_of_value(spec: FieldSpec, v: int) -> Scalar:
    """The canonical scalar pi^v of valuation v (1 under the trivial valuation)."""
    if spec.valuation == TRIVIAL:
        if v != 0:
            raise GradvalError("trivial valuation only attains 0")
        return one(spec)
    return scalar(spec, Fraction(spec.prime) ** v)


def residue(x: Scalar) -> Scalar:
    """Image of x in the residue field of the valuation ring."""
    v = valuate(x)
    if v != POS_INF and v < 0:
        raise NegativeValue(f"residue of {x} with valuation {v}")
    rspec = x.spec.residue_spec()
    if x.spec.valuation == TRIVIAL:
        return x
    if x.is_zero():
        return zero(rspec)
    p = x.spec.prime
    num, den = x.rat.numerator, x.rat.denominator
    return Scalar(rspec, (num % p) * pow(den % p, -1, p) % p)


def unit_residue(x: Scalar) -> Scalar:
    """Residue of the unit part x * pi^(-w(x)); zero stays zero."""
    if x.is_zero():
        return zero(x.spec.residue_spec())
    v = valuate(x)
    return residue(mul(x, inverse(scalar_of_value(x.spec, int(v)))))


# -- automorphisms -----------------------------------------------------------

IDENTITY = "identity"
CONJUGATION = "conjugation"


@dataclass(frozen=True)
class FieldAutomorphism:
    """Either the identity, or sqrt(a) -> -sqrt(a) on a quadratic extension."""

    kind: str

    def __post_init__(self):
        if self.kind not in (IDENTITY, CONJUGATION):
            raise GradvalError(f"unknown automorphism {self.kind!r}")

    def __call__(self, x: Scalar) -> Scalar:
        if self.kind == IDENTITY:
            return x
        if x.spec.kind != QUAD:
            raise DescriptorMismatch("conjugation lives on quadratic extensions")
        return Scalar(x.spec, x.rat, -x.irr)

    def compose(self, other: "FieldAutomorphism") -> "FieldAutomorphism":
        if self.kind == other.kind:
            return FieldAutomorphism(IDENTITY)
        return FieldAutomorphism(CONJUGATION)


# -- parsing ------------------------------------------------------------------

_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_scalar(spec: FieldSpec, text: str) -> Scalar:
    """Parse '3/4', '-5', '1+2*sqrt', 'sqrt-1', ... for the given field."""
    raw = text.strip().replace(" ", "")
    if not raw:
        raise ParseError("empty scalar")
    # split into signed terms at the top level
    terms = []
    start = 0
    for i, ch in enumerate(raw):
        if ch in "+-" and i > start and raw[i - 1] not in "+-/*(":
            terms.append(raw[start:i])
            start = i
    terms.append(raw[start:])
    total = zero(spec)
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ParseError(f"dangling sign in {text!r}")
        if term.endswith("sqrt"):
            if spec.kind != QUAD:
                raise ParseError(f"'sqrt' needs a quadratic field: {text!r}")
            coeff_text = term[: -len("sqrt")].rstrip("*")
            coeff = Fraction(coeff_text) if coeff_text else Fraction(1)
            total = add(total, Scalar(spec, Fraction(0), sign * coeff))
        elif _RAT_RE.match(term):
            total = add(total, scalar(spec, sign * Fraction(term)))
        else:
            raise ParseError(f"cannot parse scalar term {term!r} in {text!r}")
    return total
