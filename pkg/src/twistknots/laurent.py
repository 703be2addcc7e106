"""Exact Laurent polynomials in t^(1/2) and residues at a fifth root of unity.

Exponents are stored doubled, so the key ``e`` represents t^(e/2) and all
arithmetic stays in arbitrary-precision integers/rationals.  Values produced
from knots have only even keys (integral powers of t).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


def falling_factorial(x: Fraction, k: int) -> Fraction:
    """x (x-1) ... (x-k+1), with ff(x, 0) = 1."""
    out = Fraction(1)
    for r in range(k):
        out *= x - r
    return out


class HalfLaurent:
    """Immutable Laurent polynomial in t^(1/2) with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        if terms:
            for e2, c in terms.items():
                if c:
                    clean[int(e2)] = clean.get(int(e2), 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls) -> "HalfLaurent":
        return cls()

    @classmethod
    def one(cls) -> "HalfLaurent":
        return cls({0: 1})

    @classmethod
    def t_power(cls, e2: int, coeff=1) -> "HalfLaurent":
        """coeff * t^(e2/2)."""
        return cls({e2: coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, HalfLaurent) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "HalfLaurent") -> "HalfLaurent":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return HalfLaurent(out)

    def __neg__(self) -> "HalfLaurent":
        return HalfLaurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "HalfLaurent") -> "HalfLaurent":
        return self + (-other)

    def __mul__(self, other: "HalfLaurent") -> "HalfLaurent":
        out: dict[int, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return HalfLaurent(out)

    def scale(self, k) -> "HalfLaurent":
        return HalfLaurent({e: k * c for e, c in self.terms.items()})

    def shift(self, e2: int) -> "HalfLaurent":
        """Multiply by t^(e2/2)."""
        return HalfLaurent({e + e2: c for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "HalfLaurent":
        if n < 0:
            raise ValueError("negative powers not supported")
        out = HalfLaurent.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def mirror(self) -> "HalfLaurent":
        """t -> t^(-1); mirror image on Jones polynomials."""
        return HalfLaurent({-e: c for e, c in self.terms.items()})

    def is_knot_valued(self) -> bool:
        """True when every power of t is integral."""
        return all(e % 2 == 0 for e in self.terms)

    def eval_at_one(self):
        return sum(self.terms.values())

    def derivs_at_one(self, kmax: int) -> list[Fraction]:
        """Exact d^k/dt^k at t=1 for k = 0..kmax (kmax <= 8)."""
        if kmax > 8:
            raise ValueError("kmax > 8")
        out = []
        for k in range(kmax + 1):
            out.append(sum((c * falling_factorial(Fraction(e, 2), k)
                            for e, c in self.terms.items()), Fraction(0)))
        return out

    def eval_root5(self) -> "Cyclo5":
        """Image under t -> primitive fifth root of unity; integral powers only."""
        if not self.is_knot_valued():
            raise ValueError("half-integral exponent; value is not knot-valued")
        out = Cyclo5.zero()
        for e, c in self.terms.items():
            out = out + Cyclo5.t_power(e // 2).scale(c)
        return out

    def equal_up_to_unit(self, other: "HalfLaurent") -> bool:
        """True when other = ±t^(k/2) * self for some k."""
        if not self.terms or not other.terms:
            return self.terms == other.terms
        if len(self.terms) != len(other.terms):
            return False
        e0 = min(self.terms)
        f0 = min(other.terms)
        shifted = self.shift(f0 - e0)
        return shifted == other or shifted == -other

    def format(self) -> str:
        """Canonical text form, exponents descending: '-t^(5/2) - t^(1/2)'."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                if e % 2 == 0:
                    expo = e // 2
                    power = "t" if expo == 1 else f"t^{expo}" if expo > 0 else f"t^({expo})"
                else:
                    power = f"t^({e}/2)"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"HalfLaurent({self.format()})"


# Jones polynomial of the 2-component unlink; multiplying by it realizes
# disjoint union with an unknot.
def unlink_factor() -> HalfLaurent:
    return HalfLaurent({1: -1, -1: -1})


class Cyclo5:
    """Element of Q[x]/(1 + x + x^2 + x^3 + x^4) in the basis 1, x, x^2, x^3."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[Fraction]):
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != 4:
            raise ValueError("Cyclo5 needs 4 coordinates")
        self.coords = cs

    @classmethod
    def zero(cls) -> "Cyclo5":
        return cls((0, 0, 0, 0))

    @classmethod
    def one(cls) -> "Cyclo5":
        return cls((1, 0, 0, 0))

    @classmethod
    def t_power(cls, k: int) -> "Cyclo5":
        """x^k reduced mod the fifth cyclotomic polynomial."""
        r = k % 5
        if r < 4:
            coords = [0, 0, 0, 0]
            coords[r] = 1
            return cls(coords)
        return cls((-1, -1, -1, -1))  # x^4 = -1 - x - x^2 - x^3

    def scale(self, k) -> "Cyclo5":
        return Cyclo5(tuple(c * k for c in self.coords))

    def __add__(self, other: "Cyclo5") -> "Cyclo5":
        return Cyclo5(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other: "Cyclo5") -> "Cyclo5":
        prod = [Fraction(0)] * 7
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                prod[i + j] += a * b
        out = Cyclo5.zero()
        for k, c in enumerate(prod):
            if c:
                out = out + Cyclo5.t_power(k).scale(c)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Cyclo5) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_one(self) -> bool:
        return self == Cyclo5.one()

    def __repr__(self):
        return f"Cyclo5{tuple(str(c) for c in self.coords)}"
