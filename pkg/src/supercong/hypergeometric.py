"""Declarative truncated hypergeometric sums and their exact evaluation.

A :class:`HypSum` describes a weighted, truncated, generalized hypergeometric
sum whose parameters may be deformed along a formal variable x:

    sum_{k=0}^{K}  (w1*k + w0) * prod_i (upper_i)_k
                   ------------------------------- * z^k
                    k! * prod_j (lower_j)_k

with every parameter affine in x (``base + slope*x``).  Scalar evaluation
specializes x = 0; series evaluation expands each rising factorial with
:func:`supercong.power_series.pochhammer_series` and inverts the denominator.
The explicit k! matches the usual (r+1)F(r) normalization, and the affine
weight is kept separate from the parameter lists because a weight encoded as
a parameter pair would not survive deformation of those parameters.

The module also evaluates Gamma-function ratios whose arguments pair up to
integer shifts (reducing each pair by the recurrence G(x+1) = x*G(x)), and
checks six classical evaluation identities by exact rational arithmetic at
sampled parameter points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

from .power_series import (
    TruncSeries,
    constant,
    pochhammer_series,
    ps_invert,
    ps_mul,
)
from .exact_core import rising_factorial


class PoleError(ArithmeticError):
    """A lower-parameter rising factorial or a Gamma argument hits a pole."""


class UnpairableError(ValueError):
    """Gamma-ratio arguments cannot be paired up to integer shifts."""


@dataclass(frozen=True)
class AffineParam:
    """A hypergeometric parameter base + slope*x; scalar evaluation uses base."""

    base: Fraction
    slope: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "base", Fraction(self.base))
        object.__setattr__(self, "slope", Fraction(self.slope))


def param(value) -> AffineParam:
    """Coerce a number, ``(base, slope)`` pair, or AffineParam to AffineParam."""
    if isinstance(value, AffineParam):
        return value
    if isinstance(value, tuple):
        base, slope = value
        return AffineParam(Fraction(base), Fraction(slope))
    return AffineParam(Fraction(value))


@dataclass(frozen=True)
class HypSum:
    """Declarative spec of a weighted truncated hypergeometric sum."""

    upper: tuple[AffineParam, ...]
    lower: tuple[AffineParam, ...]
    argument: Fraction
    truncation: int
    weight: tuple[Fraction, Fraction] = (Fraction(0), Fraction(1))

    def __post_init__(self):
        if self.truncation < 0:
            raise ValueError("truncation index must be nonnegative")
        w1, w0 = self.weight
        object.__setattr__(self, "weight", (Fraction(w1), Fraction(w0)))
        object.__setattr__(self, "argument", Fraction(self.argument))


def hyp_sum(upper, lower, z, K: int, weight=(0, 1)) -> HypSum:
    """Convenience constructor accepting bare numbers or (base, slope) pairs."""
    return HypSum(
        upper=tuple(param(u) for u in upper),
        lower=tuple(param(l) for l in lower),
        argument=Fraction(z),
        truncation=K,
        weight=(Fraction(weight[0]), Fraction(weight[1])),
    )


def scalarized(s: HypSum) -> HypSum:
    """The same sum with every deformation slope set to zero (x = 0)."""
    return specialize(s, 0)


def specialize(s: HypSum, x0) -> HypSum:
    """The sum with the deformation variable pinned to the value x0."""
    x0 = Fraction(x0)
    return HypSum(
        upper=tuple(AffineParam(u.base + u.slope * x0) for u in s.upper),
        lower=tuple(AffineParam(l.base + l.slope * x0) for l in s.lower),
        argument=s.argument,
        truncation=s.truncation,
        weight=s.weight,
    )


def termination_index(s: HypSum) -> int | None:
    """Smallest n >= 0 with an undeformed upper base equal to -n, else None."""
    best = None
    for u in s.upper:
        if u.slope == 0 and u.base.denominator == 1 and u.base <= 0:
            n = -int(u.base)
            if best is None or n < best:
                best = n
    return best


def _check_lower_poles(s: HypSum) -> None:
    # (b)_k for k <= K contains a zero factor iff b is an integer in (-K, 0].
    for l in s.lower:
        b = l.base
        if b.denominator == 1 and -s.truncation < b <= 0:
            if b == 0 and l.slope != 0:
                raise PoleError(
                    "lower parameter with zero base is not an invertible series factor"
                )
            raise PoleError(
                f"lower parameter {b} makes a rising factorial vanish before k = {s.truncation}"
            )


def eval_hyp_sum(s: HypSum) -> Fraction:
    """Exact value of the weighted truncated sum at x = 0."""
    _check_lower_poles(s)
    w1, w0 = s.weight
    total = Fraction(0)
    core = Fraction(1)  # prod (upper)_k / (k! prod (lower)_k) * z^k
    for k in range(s.truncation + 1):
        total += (w1 * k + w0) * core
        if k == s.truncation:
            break
        num = Fraction(1)
        for u in s.upper:
            num *= u.base + k
        den = Fraction(k + 1)
        for l in s.lower:
            den *= l.base + k
        core = core * num * s.argument / den
    return total


def eval_hyp_sum_series(s: HypSum, order: int) -> TruncSeries:
    """The sum as a truncated power series in the deformation variable x.

    The constant coefficient always equals ``eval_hyp_sum(scalarized(s))``.
    """
    _check_lower_poles(s)
    w1, w0 = s.weight
    total = constant(0, order)
    zk = Fraction(1)
    for k in range(s.truncation + 1):
        num = constant(1, order)
        for u in s.upper:
            num = ps_mul(num, pochhammer_series(u.base, u.slope, k, order))
        den = constant(factorial(k), order)
        for l in s.lower:
            den = ps_mul(den, pochhammer_series(l.base, l.slope, k, order))
        total = total + ((w1 * k + w0) * zk) * ps_mul(num, ps_invert(den))
        zk *= s.argument
    return total


@dataclass(frozen=True)
class GammaRatioExpr:
    """A ratio of Gamma values, prod G(numerator) / prod G(denominator)."""

    numerator_args: tuple[Fraction, ...]
    denominator_args: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "numerator_args", tuple(Fraction(a) for a in self.numerator_args))
        object.__setattr__(self, "denominator_args", tuple(Fraction(a) for a in self.denominator_args))


def _fractional_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def gamma_ratio_value(g: GammaRatioExpr) -> Fraction:
    """Exact rational value of a Gamma ratio whose arguments pair by fractional part.

    Arguments are grouped by fractional part; each group is sorted and paired
    in order, and each pair G(d + m)/G(d) telescopes to a rising factorial
    (or its reciprocal).  Validity does not depend on the pairing choice.
    Nonpositive-integer arguments are refused outright.
    """
    for x in g.numerator_args + g.denominator_args:
        if x.denominator == 1 and x <= 0:
            raise PoleError(f"Gamma argument {x} is a nonpositive integer")
    groups: dict[Fraction, tuple[list[Fraction], list[Fraction]]] = {}
    for x in g.numerator_args:
        groups.setdefault(_fractional_part(x), ([], []))[0].append(x)
    for x in g.denominator_args:
        groups.setdefault(_fractional_part(x), ([], []))[1].append(x)
    value = Fraction(1)
    for frac, (nums, dens) in groups.items():
        if len(nums) != len(dens):
            raise UnpairableError(
                f"fractional part {frac}: {len(nums)} numerator vs {len(dens)} denominator arguments"
            )
        for nx, dx in zip(sorted(nums), sorted(dens)):
            m = int(nx - dx)
            if m >= 0:
                value *= rising_factorial(dx, m)
            else:
                value /= rising_factorial(nx, -m)
    return value


class IdentityId(str, Enum):
    """The six hypergeometric evaluation identities verified pointwise."""

    WHIPPLE_4F3 = "WHIPPLE_4F3"
    WHIPPLE_6F5 = "WHIPPLE_6F5"
    WHIPPLE_7F6 = "WHIPPLE_7F6"
    GESSEL_31_1 = "GESSEL_31_1"
    GOSPER_STRANGE = "GOSPER_STRANGE"
    GESSEL_P544 = "GESSEL_P544"


def _terminating_n(params: Mapping) -> int:
    n = params["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError("the terminating parameter n must be a nonnegative integer")
    return n


def _whipple_4f3_sides(params):
    # 4F3[a, 1+a/2, c, -n ; a/2, 1+a-c, 1+a+n ; -1]
    #   = G(1+a-c) G(1+a+n) / (G(1+a) G(1+a-c+n))
    a, c = Fraction(params["a"]), Fraction(params["c"])
    n = _terminating_n(params)
    lhs = eval_hyp_sum(
        hyp_sum(
            [a, 1 + a / 2, c, -n],
            [a / 2, 1 + a - c, 1 + a + n],
            z=-1,
            K=n,
        )
    )
    rhs = gamma_ratio_value(
        GammaRatioExpr((1 + a - c, 1 + a + n), (1 + a, 1 + a - c + n))
    )
    return lhs, rhs


def _whipple_6f5_sides(params):
    # 6F5[a, 1+a/2, b, c, d, -n ; a/2, 1+a-b, 1+a-c, 1+a-d, 1+a+n ; -1]
    #   = G(1+a-d) G(1+a+n) / (G(1+a) G(1+a-d+n))
    #     * 3F2[1+a-b-c, d, -n ; 1+a-b, 1+a-c ; 1]
    a, b = Fraction(params["a"]), Fraction(params["b"])
    c, d = Fraction(params["c"]), Fraction(params["d"])
    n = _terminating_n(params)
    e = Fraction(-n)
    lhs = eval_hyp_sum(
        hyp_sum(
            [a, 1 + a / 2, b, c, d, e],
            [a / 2, 1 + a - b, 1 + a - c, 1 + a - d, 1 + a - e],
            z=-1,
            K=n,
        )
    )
    rhs = gamma_ratio_value(
        GammaRatioExpr((1 + a - d, 1 + a - e), (1 + a, 1 + a - d - e))
    ) * eval_hyp_sum(
        hyp_sum([1 + a - b - c, d, e], [1 + a - b, 1 + a - c], z=1, K=n)
    )
    return lhs, rhs


def _whipple_7f6_sides(params):
    # 7F6[a, 1+a/2, c, d, e, f, -n ; a/2, 1+a-c, 1+a-d, 1+a-e, 1+a-f, 1+a+n ; 1]
    #   = G(1+a-e) G(1+a-f) G(1+a-g) G(1+a-e-f-g)
    #     / (G(1+a) G(1+a-f-g) G(1+a-e-g) G(1+a-e-f))
    #     * 4F3[1+a-c-d, e, f, g ; e+f+g-a, 1+a-c, 1+a-d ; 1],     g = -n.
    # Both Gamma lists sum to 4 + 4a - 2(e+f+g): the ratio is balanced.
    a, c = Fraction(params["a"]), Fraction(params["c"])
    d, e = Fraction(params["d"]), Fraction(params["e"])
    f = Fraction(params["f"])
    n = _terminating_n(params)
    g = Fraction(-n)
    lhs = eval_hyp_sum(
        hyp_sum(
            [a, 1 + a / 2, c, d, e, f, g],
            [a / 2, 1 + a - c, 1 + a - d, 1 + a - e, 1 + a - f, 1 + a - g],
            z=1,
            K=n,
        )
    )
    prefactor = gamma_ratio_value(
        GammaRatioExpr(
            (1 + a - e, 1 + a - f, 1 + a - g, 1 + a - e - f - g),
            (1 + a, 1 + a - f - g, 1 + a - e - g, 1 + a - e - f),
        )
    )
    rhs = prefactor * eval_hyp_sum(
        hyp_sum(
            [1 + a - c - d, e, f, g],
            [e + f + g - a, 1 + a - c, 1 + a - d],
            z=1,
            K=n,
        )
    )
    return lhs, rhs


def _gessel_31_1_sides(params):
    # 5F4[1/2+a-c, -n, n+1, 2-2c+n, 5/3-2c/3+n/3 ;
    #     2-c+n, 2/3-2c/3+n/3, n-2a+2, 3/2-c ; 1/4]
    #   = (2-c)_n (2-2a)_n / ((3-2c)_n (3/2-a)_n)
    a, c = Fraction(params["a"]), Fraction(params["c"])
    n = _terminating_n(params)
    lhs = eval_hyp_sum(
        hyp_sum(
            [
                Fraction(1, 2) + a - c,
                -n,
                n + 1,
                2 - 2 * c + n,
                Fraction(5, 3) - 2 * c / 3 + Fraction(n, 3),
            ],
            [
                2 - c + n,
                Fraction(2, 3) - 2 * c / 3 + Fraction(n, 3),
                n - 2 * a + 2,
                Fraction(3, 2) - c,
            ],
            z=Fraction(1, 4),
            K=n,
        )
    )
    rhs = gamma_ratio_value(
        GammaRatioExpr(
            (2 - c + n, 2 - 2 * a + n, 3 - 2 * c, Fraction(3, 2) - a),
            (2 - c, 2 - 2 * a, 3 - 2 * c + n, Fraction(3, 2) - a + n),
        )
    )
    return lhs, rhs


def _gosper_strange_sides(params):
    # 5F4[2a, 2b, 1-2b, 1+2a/3, -n ; a-b+1, a+b+1/2, 2a/3, 1+2a+2n ; 1/4]
    #   = (a+1/2)_n (a+1)_n / ((a+b+1/2)_n (a-b+1)_n)
    a, b = Fraction(params["a"]), Fraction(params["b"])
    n = _terminating_n(params)
    lhs = eval_hyp_sum(
        hyp_sum(
            [2 * a, 2 * b, 1 - 2 * b, 1 + 2 * a / 3, -n],
            [a - b + 1, a + b + Fraction(1, 2), 2 * a / 3, 1 + 2 * a + 2 * n],
            z=Fraction(1, 4),
            K=n,
        )
    )
    rhs = gamma_ratio_value(
        GammaRatioExpr(
            (a + Fraction(1, 2) + n, a + 1 + n, a + b + Fraction(1, 2), a - b + 1),
            (a + Fraction(1, 2), a + 1, a + b + Fraction(1, 2) + n, a - b + 1 + n),
        )
    )
    return lhs, rhs


def _gessel_p544_sides(params):
    # 4F3[2a+n+1, n+1, 2a/3+n/3+4/3, -n ; a+3/2+n, 2a/3+n/3+1/3, 1+a ; -1/8]
    #   = 2^n (a+3/2)_n / (2a+2)_n
    a = Fraction(params["a"])
    n = _terminating_n(params)
    third = Fraction(n, 3)
    lhs = eval_hyp_sum(
        hyp_sum(
            [2 * a + n + 1, n + 1, 2 * a / 3 + third + Fraction(4, 3), -n],
            [a + Fraction(3, 2) + n, 2 * a / 3 + third + Fraction(1, 3), 1 + a],
            z=Fraction(-1, 8),
            K=n,
        )
    )
    rhs = Fraction(2) ** n * gamma_ratio_value(
        GammaRatioExpr(
            (a + Fraction(3, 2) + n, 2 * a + 2),
            (a + Fraction(3, 2), 2 * a + 2 + n),
        )
    )
    return lhs, rhs


_IDENTITY_SIDES = {
    IdentityId.WHIPPLE_4F3: _whipple_4f3_sides,
    IdentityId.WHIPPLE_6F5: _whipple_6f5_sides,
    IdentityId.WHIPPLE_7F6: _whipple_7f6_sides,
    IdentityId.GESSEL_31_1: _gessel_31_1_sides,
    IdentityId.GOSPER_STRANGE: _gosper_strange_sides,
    IdentityId.GESSEL_P544: _gessel_p544_sides,
}

_IDENTITY_FREE_PARAMS = {
    IdentityId.WHIPPLE_4F3: ("a", "c"),
    IdentityId.WHIPPLE_6F5: ("a", "b", "c", "d"),
    IdentityId.WHIPPLE_7F6: ("a", "c", "d", "e", "f"),
    IdentityId.GESSEL_31_1: ("a", "c"),
    IdentityId.GOSPER_STRANGE: ("a", "b"),
    IdentityId.GESSEL_P544: ("a",),
}

#: Seed of the reproducible randomized identity suite.
IDENTITY_SUITE_SEED = 112358


def identity_sides(identity: IdentityId, params: Mapping) -> tuple[Fraction, Fraction]:
    """Evaluate both sides of the identity exactly at the given parameters."""
    return _IDENTITY_SIDES[IdentityId(identity)](params)


def check_identity(identity: IdentityId, params: Mapping) -> bool:
    """True iff both sides of the identity agree exactly at the parameters."""
    lhs, rhs = identity_sides(identity, params)
    return lhs == rhs


def draw_identity_params(identity: IdentityId, rng: random.Random) -> dict:
    """One raw random parameter record: small rationals plus a terminating n."""
    params = {
        name: Fraction(rng.randint(-20, 20), rng.randint(1, 20))
        for name in _IDENTITY_FREE_PARAMS[IdentityId(identity)]
    }
    params["n"] = rng.randint(0, 8)
    return params


@lru_cache(maxsize=None)
def _identity_suite_cached(identity: IdentityId, count: int, seed: int):
    rng = random.Random(f"{seed}:{identity.value}")
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 500 * count:
            raise RuntimeError(f"rejection sampling for {identity.value} stalled")
        params = draw_identity_params(identity, rng)
        try:
            identity_sides(identity, params)
        except (PoleError, UnpairableError, ZeroDivisionError):
            continue
        out.append(params)
    return tuple(out)


def sample_identity_params(
    identity: IdentityId, count: int = 50, seed: int = IDENTITY_SUITE_SEED
) -> tuple[dict, ...]:
    """Reproducible pole-free parameter draws for the randomized identity suite."""
    return _identity_suite_cached(IdentityId(identity), count, seed)
