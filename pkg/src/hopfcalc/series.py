"""Exact calculus on truncated Poincaré-Hilbert series.

A graded connected algebra that is free with cofree underlying coalgebra is
pinned down, at the level of dimensions, by any one of four integer sequences:

* ``R``: dimensions of the graded pieces, as the series 1 + r_1 h + r_2 h^2 + ...
* ``P``: dimensions of the primitive elements, P = 1 - 1/R
* ``S``: dimensions of the indecomposable primitives, 1 - S = prod (1-h^n)^{p_n}
* ``D``: decoration counts of the tree model, D = (R-1)/R^2, R = 2/(1+sqrt(1-4D))

This module converts between the four profiles with exact rational arithmetic
(truncated at a fixed order, no floats anywhere) and provides the two
realizability gates built on those conversions.  A profile stores only the
coefficients of h^1..h^N; the constant term is implied by the kind (1 for R,
0 for P, S, D).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Coefficient = Union[int, Fraction, str]

KINDS = ("R", "P", "S", "D")

#: constant term (degree-0 coefficient) implied by each profile kind
_CONSTANT_TERM = {"R": 1, "P": 0, "S": 0, "D": 0}


class NonIntegerExponent(ValueError):
    """A product (1-h^n)^{p_n} was requested with a non-integer exponent."""


@dataclass(frozen=True)
class SeriesProfile:
    """A truncated series of one of the four kinds, coefficients for h^1..h^order."""

    kind: str
    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown series kind {self.kind!r}, expected one of {KINDS}")
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.order:
            raise ValueError(f"expected {self.order} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def make(cls, kind: str, coeffs: Iterable[Coefficient]) -> SeriesProfile:
        cs = tuple(Fraction(c) for c in coeffs)
        return cls(kind, len(cs), cs)

    def coeff(self, n: int) -> Fraction:
        """Coefficient of h^n, 0 <= n <= order (degree 0 comes from the kind)."""
        if n == 0:
            return Fraction(_CONSTANT_TERM[self.kind])
        if not 1 <= n <= self.order:
            raise ValueError(f"coefficient index {n} outside 0..{self.order}")
        return self.coeffs[n - 1]

    def truncate(self, order: int) -> SeriesProfile:
        if not 1 <= order <= self.order:
            raise ValueError(f"cannot truncate order-{self.order} profile to {order}")
        return SeriesProfile(self.kind, order, self.coeffs[:order])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def first_nonintegral(self) -> Optional[int]:
        """Least n with a non-integer coefficient, or None."""
        for n, c in enumerate(self.coeffs, start=1):
            if c.denominator != 1:
                return n
        return None

    def as_dense(self) -> list[Fraction]:
        """Coefficients indexed 0..order, constant term included."""
        return [Fraction(_CONSTANT_TERM[self.kind]), *self.coeffs]


@dataclass(frozen=True)
class GateVerdict:
    """Outcome of a realizability gate.

    ``witness`` is the offending coefficient at ``first_failure`` when the gate
    fails; both are None on a pass.
    """

    passed: bool
    first_failure: Optional[int] = None
    witness: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "first_failure": self.first_failure,
            "witness": _format_rational(self.witness) if self.witness is not None else None,
        }


# ---------------------------------------------------------------------------
# dense helpers: lists indexed by degree 0..N


def _mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if not ai:
            continue
        top = min(order - i, len(b) - 1)
        for j in range(top + 1):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def _invert_unit(a: Sequence[Fraction], order: int) -> list[Fraction]:
    # requires a[0] == 1; b_n = -sum_{k=1..n} a_k b_{n-k}
    if a[0] != 1:
        raise ValueError("can only invert a series with constant term 1")
    b = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            ak = a[k] if k < len(a) else Fraction(0)
            if ak:
                acc += ak * b[n - k]
        b[n] = -acc
    return b

def _sqrt_unit(a: Sequence[Fraction], order: int) -> list[Fraction]:
    # branch with constant term +1; t_n = (a_n - sum_{1<=i<=n-1} t_i t_{n-i}) / 2
    if a[0] != 1:
        raise ValueError("can only take the square root of a series with constant term 1")
    t = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        an = a[n] if n < len(a) else Fraction(0)
        acc = sum((t[i] * t[n - i] for i in range(1, n)), Fraction(0))
        t[n] = (an - acc) / 2
    return t


def _one_minus_power(step: int, power: Fraction, order: int) -> list[Fraction]:
    """(1 - h^step)^power as a dense list, power an integer (possibly negative)."""
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    coeff = Fraction(1)
    k = 0
    while (k + 1) * step <= order:
        # falling-factorial binomial: binom(power, k+1) * (-1)^(k+1)
        coeff = coeff * (power - k) / (k + 1)
        k += 1
        out[k * step] = coeff * (-1) ** k
    return out


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return small + large

def _mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def _require_kind(series: SeriesProfile, kind: str, op: str) -> None:
    if series.kind != kind:
        raise ValueError(f"{op} expects a {kind}-profile, got {series.kind}")


def _profile(kind: str, dense: Sequence[Fraction], order: int) -> SeriesProfile:
    return SeriesProfile(kind, order, tuple(dense[1 : order + 1]))


# ---------------------------------------------------------------------------
# conversions


def series_invert(a: SeriesProfile, order: Optional[int] = None) -> SeriesProfile:
    """Multiplicative inverse of an R-profile (constant term 1), truncated."""
    _require_kind(a, "R", "series_invert")
    order = a.order if order is None else order
    if not 1 <= order <= a.order:
        raise ValueError(f"inversion order {order} outside 1..{a.order}")
    return _profile("R", _invert_unit(a.as_dense(), order), order)


def p_from_r(r: SeriesProfile) -> SeriesProfile:
    """Primitive dimensions from graded dimensions: P = 1 - 1/R."""
    _require_kind(r, "R", "p_from_r")
    inv = _invert_unit(r.as_dense(), r.order)
    return _profile("P", [Fraction(0)] + [-c for c in inv[1:]], r.order)


def r_from_p(p: SeriesProfile) -> SeriesProfile:
    """Graded dimensions from primitive dimensions: R = 1/(1 - P)."""
    _require_kind(p, "P", "r_from_p")
    one_minus = [Fraction(1)] + [-c for c in p.coeffs]
    return _profile("R", _invert_unit(one_minus, p.order), p.order)


def s_from_p(p: SeriesProfile) -> SeriesProfile:
    """Indecomposable-primitive dimensions: 1 - S = prod_n (1 - h^n)^{p_n}.

    The exponents p_n must be integers (they count free generators of a free
    Lie algebra); a rational exponent raises NonIntegerExponent.
    """
    _require_kind(p, "P", "s_from_p")
    order = p.order
    bad = p.first_nonintegral()
    if bad is not None:
        raise NonIntegerExponent(
            f"p_{bad} = {p.coeff(bad)} is not an integer, product exponents must be integers"
        )
    prod = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        e = p.coeff(n)
        if e:
            prod = _mul(prod, _one_minus_power(n, e, order), order)
    return _profile("S", [Fraction(0)] + [-c for c in prod[1:]], order)


def p_from_s(s: SeriesProfile) -> SeriesProfile:
    """Invert the product formula by Möbius inversion (Witt-style).

    With a_m = m [h^m](-log(1 - S)) one has a_m = sum_{n | m} n p_n, so
    m p_m = sum_{d | m} mu(m/d) a_d.  The result can be non-integral when s is
    not realizable by integer generator counts; it is returned anyway, and
    ``result.is_integral()`` / ``result.first_nonintegral()`` report the flag.
    """
    _require_kind(s, "S", "p_from_s")
    order = s.order
    one_minus = [Fraction(1)] + [-c for c in s.coeffs]
    # -log(1-S) degree by degree: log' = (1-S)'/(1-S)
    deriv = [n * one_minus[n] for n in range(1, order + 1)]
    inv = _invert_unit(one_minus, order)
    logderiv = _mul(deriv, inv, order - 1)  # coefficients of h^0..h^{order-1}
    # logderiv[m-1] = [h^{m-1}] d/dh log(1-S) = m [h^m] log(1-S), so a_m = -logderiv[m-1]
    a = [Fraction(0)] * (order + 1)
    for m in range(1, order + 1):
        a[m] = -logderiv[m - 1]
    p = [Fraction(0)] * (order + 1)
    for m in range(1, order + 1):
        acc = Fraction(0)
        for d in _divisors(m):
            mu = _mobius(m // d)
            if mu:
                acc += mu * a[d]
        p[m] = acc / m
    return _profile("P", p, order)


def p_from_s_stepwise(s: SeriesProfile) -> SeriesProfile:
    """Second, independent inversion of the product formula.

    Solves for one exponent at a time: with p_1..p_{n-1} known, the partial
    product prod_{k<n} (1-h^k)^{p_k} determines p_n because (1-h^n)^{p_n}
    contributes exactly -p_n at h^n.  Used to cross-check p_from_s.
    """
    _require_kind(s, "S", "p_from_s_stepwise")
    order = s.order
    target = [Fraction(1)] + [-c for c in s.coeffs]
    partial = [Fraction(1)] + [Fraction(0)] * order
    p = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        p[n] = partial[n] - target[n]
        if p[n]:
            partial = _mul(partial, _one_minus_power(n, p[n], order), order)
    return _profile("P", p, order)


def s_from_r(r: SeriesProfile) -> SeriesProfile:
    return s_from_p(p_from_r(r))


def r_from_s(s: SeriesProfile) -> SeriesProfile:
    return r_from_p(p_from_s(s))


def d_from_r(r: SeriesProfile) -> SeriesProfile:
    """Decoration counts of the tree model: D = (R - 1) / R^2."""
    _require_kind(r, "R", "d_from_r")
    order = r.order
    dense = r.as_dense()
    inv = _invert_unit(dense, order)
    inv2 = _mul(inv, inv, order)
    numer = [Fraction(0)] + dense[1:]
    return _profile("D", _mul(numer, inv2, order), order)


def r_from_d(d: SeriesProfile) -> SeriesProfile:
    """Graded dimensions from decoration counts: R = 2 / (1 + sqrt(1 - 4D)).

    This branch is the one with R(0) = 1; it avoids dividing by the
    zero-constant-term series D.
    """
    _require_kind(d, "D", "r_from_d")
    order = d.order
    radicand = [Fraction(1)] + [-4 * c for c in d.coeffs]
    root = _sqrt_unit(radicand, order)
    half = [(Fraction(1) + root[0]) / 2] + [c / 2 for c in root[1:]]
    return _profile("R", _invert_unit(half, order), order)


def convert(series: SeriesProfile, to_kind: str) -> SeriesProfile:
    """Convert between any two of the four profile kinds."""
    if to_kind not in KINDS:
        raise ValueError(f"unknown series kind {to_kind!r}, expected one of {KINDS}")
    if series.kind == to_kind:
        return series
    to_r = {"R": lambda x: x, "P": r_from_p, "S": r_from_s, "D": r_from_d}
    from_r = {"R": lambda x: x, "P": p_from_r, "S": s_from_r, "D": d_from_r}
    return from_r[to_kind](to_r[series.kind](series))


# ---------------------------------------------------------------------------
# realizability gates


def _gate(values: SeriesProfile) -> GateVerdict:
    for n in range(1, values.order + 1):
        c = values.coeff(n)
        if c.denominator != 1 or c < 0:
            return GateVerdict(False, n, c)
    return GateVerdict(True)


def gate_free_cofree(r: SeriesProfile) -> GateVerdict:
    """Pass iff every s_n derived from r is a nonnegative integer."""
    _require_kind(r, "R", "gate_free_cofree")
    if not r.is_integral():
        raise ValueError("gate_free_cofree expects an integer dimension series")
    return _gate(s_from_r(r))


def gate_nck(r: SeriesProfile) -> GateVerdict:
    """Pass iff every d_n derived from r is a nonnegative integer."""
    _require_kind(r, "R", "gate_nck")
    if not r.is_integral():
        raise ValueError("gate_nck expects an integer dimension series")
    return _gate(d_from_r(r))


# ---------------------------------------------------------------------------
# exchange format


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def series_to_json(series: SeriesProfile) -> str:
    payload = {
        "kind": series.kind,
        "order": series.order,
        "coeffs": [_format_rational(c) for c in series.coeffs],
    }
    return json.dumps(payload)


def series_from_json(text: str) -> SeriesProfile:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid series JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValueError("series JSON must be an object")
    missing = {"kind", "order", "coeffs"} - payload.keys()
    if missing:
        raise ValueError(f"series JSON missing keys: {sorted(missing)}")
    kind, order, raw = payload["kind"], payload["order"], payload["coeffs"]
    if not isinstance(order, int) or not isinstance(raw, list):
        raise ValueError("series JSON: order must be an int and coeffs a list")
    try:
        coeffs = tuple(Fraction(str(c)) for c in raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"series JSON: bad coefficient ({exc})") from exc
    return SeriesProfile(kind, order, coeffs)
