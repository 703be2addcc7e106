"""Cosmetic-surgery obstruction gates.

An instance is excluded from carrying a purely cosmetic surgery as soon as one
gate fires, in this order: nonzero leading Alexander coefficient, nontrivial
Conway polynomial, V''(1) != 0, V'''(1) != 0, V''''(1) != 0 (equivalently
j_4 != 0 once the earlier gates pass), and optionally V at a fifth root of
unity different from 1.  Instances surviving every gate are exceptions and
must be certified trivial elsewhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence

from .laurent import Cyclo5, HalfLaurent
from .seifert import ConwaySeries


@dataclass(frozen=True)
class HExpansion:
    """Coefficients j_0..j_N of h^n in V(e^h)."""

    j: tuple[Fraction, ...]

    def __getitem__(self, n: int) -> Fraction:
        return self.j[n]


def h_coeffs(V: HalfLaurent, N: int = 6) -> HExpansion:
    """Expand V(e^h) exactly: a term c t^(e/2) contributes c (e/2)^n / n!."""
    if not V.is_knot_valued():
        raise ValueError("h-expansion needs integral powers of t")
    js = []
    for n in range(N + 1):
        total = Fraction(0)
        for e, c in V.terms.items():
            total += Fraction(c) * Fraction(e, 2) ** n
        js.append(total / factorial(n))
    return HExpansion(tuple(js))


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def h_coeffs_from_derivs(derivs: Sequence[Fraction], N: int = 6) -> HExpansion:
    """Same expansion via Stirling numbers: j_n = sum_k V^(k)(1) S(n,k) / n!."""
    if len(derivs) <= N:
        raise ValueError(f"need derivatives up to order {N}")
    js = []
    for n in range(N + 1):
        total = sum((Fraction(derivs[k]) * _stirling2(n, k) for k in range(n + 1)),
                    Fraction(0))
        js.append(total / factorial(n))
    return HExpansion(tuple(js))


@dataclass(frozen=True)
class FiniteTypeInvariants:
    v4: Fraction
    w4: Fraction
    v6: Fraction


def finite_type(a2, a4, a6, j4) -> FiniteTypeInvariants:
    """The degree-4/6 invariants from Conway coefficients and j_4, as printed."""
    a2, a4, a6, j4 = (Fraction(x) for x in (a2, a4, a6, j4))
    v4 = -Fraction(1, 2) * a4 - Fraction(1, 24) * a2 + Fraction(1, 4) * a2 ** 2
    w4 = Fraction(1, 96) * j4 + Fraction(3, 32) * a4 - Fraction(9, 2) * a2 ** 2
    v6 = (-Fraction(1, 2) * a6 - Fraction(1, 12) * a4 - Fraction(1, 720) * a2
          + Fraction(1, 24) * a2 ** 2 + Fraction(1, 2) * a2 * a4
          - Fraction(1, 6) * a2 ** 3)
    return FiniteTypeInvariants(v4, w4, v6)


def ito_residual(p: int, q: int, ft: FiniteTypeInvariants) -> Fraction:
    """Left side of the slope relation p^2(24 w4 - 5 v4) + 5 v4 + q^2(210 v6 + 5 v4)."""
    from math import gcd
    if gcd(p, q) != 1:
        raise ValueError("slope must be in lowest terms")
    return (p * p * (24 * ft.w4 - 5 * ft.v4) + 5 * ft.v4
            + q * q * (210 * ft.v6 + 5 * ft.v4))


def fourth_derivative_gate(V: HalfLaurent, conway: ConwaySeries) -> bool:
    """True when the instance is excluded: trivial Conway polynomial but j_4 != 0.

    j_4 is computed both from the h-expansion and from the derivatives at 1;
    the two must agree exactly.
    """
    if not conway.is_trivial():
        return False
    js = h_coeffs(V, 4)
    derivs = V.derivs_at_one(4)
    j4_from_derivs = h_coeffs_from_derivs(derivs + [Fraction(0), Fraction(0)], 4)[4]
    if js[4] != j4_from_derivs:
        raise AssertionError("h-expansion routes disagree")
    return js[4] != 0


class Root5Verdict(enum.Enum):
    EXCLUDES = "EXCLUDES"
    INCONCLUSIVE = "INCONCLUSIVE"


def root5_gate(V: HalfLaurent) -> Root5Verdict:
    """Excludes when V at a primitive fifth root of unity differs from 1."""
    return Root5Verdict.INCONCLUSIVE if V.eval_root5() == Cyclo5.one() else Root5Verdict.EXCLUDES


GATE_ORDER = ("alexander_leading", "conway", "d2", "d3", "d4", "root5")


@dataclass(frozen=True)
class ObstructionVerdict:
    instance: str
    alex_leading: Fraction
    conway_trivial: bool
    d2: Fraction
    d3: Fraction
    d4: Fraction
    j4: Fraction
    root5: Optional[Root5Verdict]
    classification: str

    @property
    def is_exception(self) -> bool:
        return self.classification == "EXCEPTION"

    @property
    def excluded_by(self) -> Optional[str]:
        if self.is_exception:
            return None
        return self.classification[len("EXCLUDED("):-1]

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "alexander_leading": str(self.alex_leading),
            "conway_trivial": self.conway_trivial,
            "d2": str(self.d2),
            "d3": str(self.d3),
            "d4": str(self.d4),
            "j4": str(self.j4),
            "root5": self.root5.value if self.root5 is not None else None,
            "classification": self.classification,
        }


def cosmetic_gate(jones: Optional[HalfLaurent], derivs: Sequence[Fraction],
                  conway: ConwaySeries, alex_leading,
                  use_root5: bool = False, instance: str = "") -> ObstructionVerdict:
    """Apply the gates in order and record the first that excludes.

    ``jones`` may be None when the root-of-unity gate is disabled; every other
    gate runs from the derivative values and the Conway series.
    """
    alex_leading = Fraction(alex_leading)
    d2, d3, d4 = (Fraction(derivs[k]) for k in (2, 3, 4))
    j4 = (d4 + 6 * d3 + 7 * d2 + Fraction(derivs[1])) / 24
    root5 = None
    if use_root5:
        if jones is None:
            raise ValueError("root-of-unity gate needs the Jones polynomial")
        root5 = root5_gate(jones)

    if alex_leading != 0:
        classification = "EXCLUDED(alexander_leading)"
    elif not conway.is_trivial():
        classification = "EXCLUDED(conway)"
    elif d2 != 0:
        classification = "EXCLUDED(d2)"
    elif d3 != 0:
        classification = "EXCLUDED(d3)"
    elif d4 != 0:
        classification = "EXCLUDED(d4)"
    elif root5 is Root5Verdict.EXCLUDES:
        classification = "EXCLUDED(root5)"
    else:
        classification = "EXCEPTION"
    return ObstructionVerdict(instance, alex_leading, conway.is_trivial(),
                              d2, d3, d4, j4, root5, classification)
