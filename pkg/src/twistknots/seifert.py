"""Parametric Seifert matrices, Alexander and Conway polynomials.

Each family ships a 4x4 template whose entries are affine polynomials in the
twist parameters with the band signs baked in.  The Alexander polynomial of an
instance is det(S - t S^T); the Conway polynomial is det(t^(1/2) S - t^(-1/2) S^T)
rewritten exactly in powers of z = t^(1/2) - t^(-1/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .laurent import HalfLaurent
from .multipoly import MultiPoly

PARAM_LETTERS = ("a", "b", "c", "d", "e")


class SeifertError(ValueError):
    pass


@dataclass(frozen=True)
class SeifertTemplate:
    family: str
    variables: tuple[str, ...]
    rows: tuple[tuple[MultiPoly, ...], ...]   # 4x4, affine entries
    genus: int = 2

    def instantiate(self, twists) -> tuple[tuple[int, ...], ...]:
        """Integer Seifert matrix at a twist vector."""
        point = dict(zip(self.variables, twists))
        out = []
        for row in self.rows:
            vals = []
            for entry in row:
                v = entry.eval(point)
                if v.denominator != 1:
                    raise SeifertError("non-integer Seifert entry; template bug")
                vals.append(int(v))
            out.append(tuple(vals))
        return tuple(out)


def _signs5(signs) -> tuple[int, ...]:
    signs = tuple(signs)
    if len(signs) != 5 or any(s not in (+1, -1) for s in signs):
        raise SeifertError("need 5 band signs")
    return signs


def template_7_6(signs) -> SeifertTemplate:
    """Genus-2 matrix for the three-odd/two-even skeleton.

    Built from the unsubstituted self-linking matrix in the raw twist counts
    n_i, then specialized with n_i = s_i (2 t_i - 1) on the odd bands and
    n_i = 2 s_i t_i on the even bands.
    """
    s = _signs5(signs)
    V = PARAM_LETTERS
    half = Fraction(1, 2)

    def odd(i):   # n_i as a polynomial in t_i for odd bands 1..3
        return MultiPoly.var(V, V[i]).scale(2 * s[i]) - MultiPoly.const(V, s[i])

    def even(i):  # n_i for even bands 4..5
        return MultiPoly.var(V, V[i]).scale(2 * s[i])

    n1, n2, n3 = odd(0), odd(1), odd(2)
    n4, n5 = even(3), even(4)
    one = MultiPoly.const(V, 1)
    zero = MultiPoly.zero(V)
    rows = (
        ((n1 + n2).scale(-half), (n1 + one).scale(-half), zero, one),
        ((n1 - one).scale(-half), (n1 + n3).scale(-half), zero, one),
        (zero, zero, n4.scale(-half), one),
        (zero, zero, zero, n5.scale(-half)),
    )
    return SeifertTemplate("7_6", V, rows)


def template_10_58(signs) -> SeifertTemplate:
    """Genus-2 matrix for the all-even skeleton; n_i = 2 s_i t_i throughout."""
    s = _signs5(signs)
    V = PARAM_LETTERS

    # every band is even, so self-linking counts full twists: s_i t_i per band
    def ns(i):
        return MultiPoly.var(V, V[i]).scale(s[i])

    m1, m2, m3, m4, m5 = (ns(i) for i in range(5))
    one = MultiPoly.const(V, 1)
    zero = MultiPoly.zero(V)
    rows = (
        (-(m1 + m5), m1, one, zero),
        (m1, -(m1 + m4), zero, one),
        (zero, zero, -m2, zero),
        (zero, zero, zero, -m3),
    )
    return SeifertTemplate("10_58", V, rows)


def template_8_12(signs) -> SeifertTemplate:
    """The all-even matrix with the fifth band at zero twists."""
    signs = tuple(signs)
    if len(signs) == 4:
        signs = signs + (+1,)
    s = _signs5(signs)
    V = PARAM_LETTERS[:4]

    def ns(i):
        return MultiPoly.var(V, V[i]).scale(s[i])

    m1, m2, m3, m4 = (ns(i) for i in range(4))
    one = MultiPoly.const(V, 1)
    zero = MultiPoly.zero(V)
    rows = (
        (-m1, m1, one, zero),
        (m1, -(m1 + m4), zero, one),
        (zero, zero, -m2, zero),
        (zero, zero, zero, -m3),
    )
    return SeifertTemplate("8_12", V, rows)


TEMPLATE_BUILDERS = {"7_6": template_7_6, "10_58": template_10_58, "8_12": template_8_12}


def template_for(family: str, signs) -> SeifertTemplate:
    try:
        builder = TEMPLATE_BUILDERS[family]
    except KeyError:
        raise SeifertError(f"no Seifert template for family {family!r}")
    return builder(signs)


# --- determinants -------------------------------------------------------------

def _det4_laurent(entries) -> HalfLaurent:
    """Permanent-style cofactor determinant of a 4x4 matrix of HalfLaurent."""
    total = HalfLaurent.zero()
    for perm in permutations(range(4)):
        inv = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        term = HalfLaurent.one()
        for i in range(4):
            term = term * entries[i][perm[i]]
            if not term:
                break
        if inv % 2:
            term = -term
        total = total + term
    return total


def det_symbolic(rows) -> MultiPoly:
    variables = rows[0][0].vars
    total = MultiPoly.zero(variables)
    for perm in permutations(range(len(rows))):
        inv = sum(1 for i in range(len(rows)) for j in range(i + 1, len(rows)) if perm[i] > perm[j])
        term = MultiPoly.const(variables, 1)
        for i in range(len(rows)):
            term = term * rows[i][perm[i]]
            if not term:
                break
        total = total + term if inv % 2 == 0 else total - term
    return total


def alexander_poly(tpl: SeifertTemplate, twists) -> HalfLaurent:
    """det(S - t S^T) at an instance; must be a unit at t = 1."""
    S = tpl.instantiate(twists)
    size = len(S)
    entries = [[HalfLaurent({0: S[i][j], 2: -S[j][i]}) for j in range(size)]
               for i in range(size)]
    delta = _det4_laurent(entries)
    if delta.eval_at_one() not in (1, -1):
        raise SeifertError(f"Alexander value at 1 is {delta.eval_at_one()}, not a unit")
    return delta


def alexander_coeffs(tpl: SeifertTemplate, twists) -> dict[int, int]:
    """Coefficients of det(S - t S^T) keyed by the power of t."""
    delta = alexander_poly(tpl, twists)
    return {e // 2: c for e, c in delta.terms.items()}


@dataclass(frozen=True)
class ConwaySeries:
    """Coefficients of z^0, z^2, z^4, z^6 of the Conway polynomial."""

    a0: Fraction
    a2: Fraction
    a4: Fraction
    a6: Fraction

    def is_trivial(self) -> bool:
        return not (self.a2 or self.a4 or self.a6)


def _rewrite_in_z(poly: HalfLaurent) -> dict[int, Fraction]:
    """Rewrite a balanced Laurent polynomial in u = t^(1/2) as a polynomial in
    z = u - u^(-1); exact, and the remainder must vanish."""
    z = HalfLaurent({1: 1, -1: -1})
    z_powers = [HalfLaurent.one()]
    rest = poly
    out: dict[int, Fraction] = {}
    while rest:
        d = max(rest.terms)
        if d < 0:
            raise SeifertError("rewrite in z left negative-degree remainder")
        c = rest.terms[d]
        out[d] = out.get(d, 0) + c
        while len(z_powers) <= d:
            z_powers.append(z_powers[-1] * z)
        rest = rest - z_powers[d].scale(c)
    return out


def conway_poly(tpl: SeifertTemplate, twists) -> ConwaySeries:
    """det(t^(1/2) S - t^(-1/2) S^T) rewritten in z; normalized so a0 = 1."""
    S = tpl.instantiate(twists)
    size = len(S)
    entries = [[HalfLaurent({1: S[i][j], -1: -S[j][i]}) for j in range(size)]
               for i in range(size)]
    z_coeffs = _rewrite_in_z(_det4_laurent(entries))
    if any(d % 2 for d in z_coeffs):
        raise SeifertError("odd z-powers in a knot Conway polynomial")
    if z_coeffs.get(0, 0) != 1:
        raise SeifertError(f"Conway normalization is {z_coeffs.get(0, 0)}, not 1")
    return ConwaySeries(Fraction(1), Fraction(z_coeffs.get(2, 0)),
                        Fraction(z_coeffs.get(4, 0)), Fraction(z_coeffs.get(6, 0)))


def leading_coeff_symbolic(tpl: SeifertTemplate) -> MultiPoly:
    """det(S): the coefficient of t^4 in det(S - t S^T), sign convention det(S)."""
    return det_symbolic(tpl.rows)


def conway_symbolic(tpl: SeifertTemplate) -> dict[int, MultiPoly]:
    """Conway z-coefficients as polynomials in the twist parameters."""
    variables = tpl.variables
    size = len(tpl.rows)
    # Laurent in u with MultiPoly coefficients, as {exponent: MultiPoly}
    entries = [[{1: tpl.rows[i][j], -1: -tpl.rows[j][i]} for j in range(size)]
               for i in range(size)]

    def lmul(p, q):
        out: dict[int, MultiPoly] = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                prod = c1 * c2
                if not prod:
                    continue
                e = e1 + e2
                out[e] = out[e] + prod if e in out else prod
        return {e: c for e, c in out.items() if c}

    total: dict[int, MultiPoly] = {}
    for perm in permutations(range(size)):
        inv = sum(1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j])
        term = {0: MultiPoly.const(variables, 1)}
        for i in range(size):
            term = lmul(term, entries[i][perm[i]])
            if not term:
                break
        for e, c in term.items():
            c = -c if inv % 2 else c
            total[e] = total[e] + c if e in total else c
    total = {e: c for e, c in total.items() if c}

    # rewrite in z = u - 1/u with polynomial coefficients
    z = {1: MultiPoly.const(variables, 1), -1: MultiPoly.const(variables, -1)}
    z_powers = [{0: MultiPoly.const(variables, 1)}]
    out: dict[int, MultiPoly] = {}
    rest = total
    while rest:
        d = max(rest)
        if d < 0:
            raise SeifertError("symbolic rewrite in z failed")
        c = rest[d]
        out[d] = out[d] + c if d in out else c
        while len(z_powers) <= d:
            z_powers.append(lmul(z_powers[-1], z))
        new_rest: dict[int, MultiPoly] = dict(rest)
        for e, zc in z_powers[d].items():
            sub = zc * c
            if not sub:
                continue
            new_rest[e] = new_rest[e] - sub if e in new_rest else -sub
        rest = {e: v for e, v in new_rest.items() if v}
    return {d: c for d, c in out.items() if c}
