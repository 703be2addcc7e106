"""Twist-family engine: Jones polynomials of knots obtained by adding twists in bands.

A family is a knot skeleton with k twist bands.  Band i carries s_i(2n_i - m_i)
crossings, where s_i is the band sign, m_i the parity (1 for odd bands, 0 for
even) and n_i >= 1 the twist parameter.  The Jones polynomial of an instance is
assembled as a sum over the 2^k ways of either resolving each band (state 0) or
retaining it with its residual -s_i m_i half-twists (state 1):

    V(n_1..n_k) = sum over states x of  (prod_i  pre(s_i, x_i, n_i)) * V_x

with pre(s, 1, n) = t^(2sn) and pre(s, 0, n) an explicit geometric sum, and V_x
the Jones polynomial of the fully degenerate base link, supplied per family by
a data-driven base-case provider.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import product
from math import factorial

from .laurent import HalfLaurent, unlink_factor
from .multipoly import MultiPoly, falling_factorial_poly, power_sum_poly

PARAM_LETTERS = ("a", "b", "c", "d", "e")


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class BandSpec:
    sign: int        # +1 or -1
    parity: int      # 1 = odd band, 0 = even band
    frozen: bool = False  # frozen bands carry no twists and no parameter

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise FamilyError("band sign must be +1 or -1")
        if self.parity not in (0, 1):
            raise FamilyError("band parity must be 0 or 1")
        if self.frozen and self.parity != 0:
            raise FamilyError("frozen bands must be even")


@dataclass(frozen=True)
class FamilySpec:
    """A family with concrete band signs; twist parameters stay free."""

    name: str
    bands: tuple[BandSpec, ...]
    provider: "BaseCaseProvider"

    @property
    def active_bands(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.bands) if not b.frozen)

    @property
    def variables(self) -> tuple[str, ...]:
        return PARAM_LETTERS[: len(self.active_bands)]

    def signs_str(self) -> str:
        return "".join("+" if b.sign > 0 else "-" for b in self.bands)

    def mirrored(self) -> "FamilySpec":
        flipped = tuple(BandSpec(-b.sign, b.parity, b.frozen) for b in self.bands)
        return FamilySpec(self.name, flipped, self.provider)


def parse_signs(text: str, k: int) -> tuple[int, ...]:
    if len(text) != k or any(ch not in "+-" for ch in text):
        raise FamilyError(f"sign case must be {k} characters over +/-: {text!r}")
    return tuple(+1 if ch == "+" else -1 for ch in text)


def check_twists(spec: FamilySpec, twists) -> tuple[int, ...]:
    n = tuple(int(v) for v in twists)
    if len(n) != len(spec.active_bands):
        raise FamilyError(
            f"{spec.name} takes {len(spec.active_bands)} twist parameters, got {len(n)}")
    if any(v < 1 for v in n):
        raise FamilyError("twist parameters must be >= 1")
    return n


# --- prefactors ------------------------------------------------------------

def prefactor(s: int, x: int, n: int) -> HalfLaurent:
    """Skein prefactor of one band: t^(2sn) if the band is retained, else the
    geometric-sum form (1 + t^(2s) + ... + t^(2s(n-1))) * (s t^s) * (t^(1/2) - t^(-1/2))."""
    if n < 1:
        raise FamilyError("twist parameter must be >= 1")
    if x == 1:
        return HalfLaurent.t_power(4 * s * n)
    geo = HalfLaurent({4 * s * j: 1 for j in range(n)})
    factor = HalfLaurent({3 * s: 1, s: -1})
    return geo * factor


@lru_cache(maxsize=None)
def _prefactor_deriv_cached(s: int, x: int, k: int, variables: tuple[str, ...], name: str) -> MultiPoly:
    if x == 1:
        # k-th derivative of t^(2sn) at 1 is the falling factorial of 2sn
        lin = MultiPoly.var(variables, name).scale(2 * s)
        return falling_factorial_poly(lin, k)
    # resolved band: sum over the geometric expansion, term exponents s(2j + 3/2)
    # and s(2j + 1/2); the j-sum becomes a power-sum polynomial in n
    jv = ("j",)
    j = MultiPoly.var(jv, "j")
    hi = falling_factorial_poly((j.scale(2) + MultiPoly.const(jv, Fraction(3, 2))).scale(s), k)
    lo = falling_factorial_poly((j.scale(2) + MultiPoly.const(jv, Fraction(1, 2))).scale(s), k)
    per_j = hi - lo
    out = MultiPoly.zero(variables)
    for mono, coeff in per_j.terms.items():
        out = out + power_sum_poly(mono[0], variables, name).scale(coeff)
    return out


def prefactor_deriv_poly(s: int, x: int, k: int, variables: tuple[str, ...] = ("n",),
                         name: str = "n") -> MultiPoly:
    """d^k/dt^k of the band prefactor at t=1, as an exact polynomial in the
    twist parameter.  Derived symbolically, never transcribed from a table."""
    if k > 8:
        raise FamilyError("k > 8 not supported")
    return _prefactor_deriv_cached(s, x, k, tuple(variables), name)


# --- base-case links --------------------------------------------------------

@lru_cache(maxsize=None)
def _x_chain(sign: int, n: int) -> HalfLaurent:
    """Jones value of n same-sign odd bands joining two circles."""
    if n == 0:
        return unlink_factor()
    if n == 1:
        return HalfLaurent.one()
    prev2, prev1 = unlink_factor(), HalfLaurent.one()
    step2 = HalfLaurent.t_power(4 * sign)                    # t^(2 sign)
    step1 = HalfLaurent({3 * sign: 1, sign: -1})             # t^(3s/2) - t^(s/2)
    for _ in range(2, n + 1):
        prev2, prev1 = prev1, step2 * prev2 + step1 * prev1
    return prev1


def xn_jones(args) -> HalfLaurent:
    """Jones polynomial of the two-circle pattern with the given residual bands.

    Zero entries are dropped, and adjacent opposite-sign pairs cancel; the
    bands are treated as cyclically arranged, so cancellation wraps around.
    """
    current = [a for a in args if a != 0]
    if any(a not in (+1, -1) for a in current):
        raise FamilyError("band arguments must be -1, 0 or +1")
    changed = True
    while changed and len(current) >= 2:
        changed = False
        m = len(current)
        for i in range(m):
            j = (i + 1) % m
            if i != j and current[i] == -current[j]:
                for idx in sorted((i, j), reverse=True):
                    current.pop(idx)
                changed = True
                break
    if not current:
        return unlink_factor()
    if len(set(current)) != 1:
        raise FamilyError("mixed signs survived cancellation")
    return _x_chain(current[0], len(current))


class BaseCaseProvider:
    def jones(self, spec: FamilySpec, full_state: tuple[int, ...]) -> HalfLaurent:
        raise NotImplementedError


@dataclass(frozen=True)
class ComposeProvider(BaseCaseProvider):
    """Base links described as connected sums of two-circle patterns, plus
    disjoint unknots, keyed by the states of the even bands."""

    even_bands: tuple[int, ...]                       # 0-based indices
    rows: tuple[tuple[tuple[int, ...], tuple], ...]   # (key, factors)

    def jones(self, spec, full_state):
        key = tuple(full_state[i] for i in self.even_bands)
        for row_key, factors in self.rows:
            if row_key == key:
                break
        else:
            raise FamilyError(f"no base-case row for even-band states {key}")
        value = HalfLaurent.one()
        for factor in factors:
            if factor[0] == "U":
                value = value * unlink_factor()
            else:
                args = []
                for band in factor[1]:
                    i = band - 1
                    args.append(0 if full_state[i] == 0 else -spec.bands[i].sign)
                value = value * xn_jones(args)
        return value


@dataclass(frozen=True)
class CountProvider(BaseCaseProvider):
    """Base links that are disjoint unions of unknots; a table gives the
    component count as an expression in the band states."""

    order: tuple[int, ...]                       # 0-based indices of the key bands
    rows: tuple[tuple[tuple[int, ...], str], ...]

    def jones(self, spec, full_state):
        key = tuple(full_state[i] for i in self.order)
        for row_key, expr in self.rows:
            if row_key == key:
                break
        else:
            raise FamilyError(f"no unknot-count row for states {key}")
        count = eval_count_expr(expr, full_state)
        if count < 1:
            raise FamilyError(f"unknot count {count} < 1 for states {full_state}")
        return unlink_factor() ** (count - 1)


def eval_count_expr(text: str, full_state: tuple[int, ...]) -> int:
    """Evaluate an integer expression over x1..xk with +, -, integers and abs()."""
    tokens = re.findall(r"abs|x\d+|\d+|[()+\-]", text.replace(" ", ""))
    if "".join(tokens) != text.replace(" ", ""):
        raise FamilyError(f"bad count expression {text!r}")
    pos = 0

    def parse_expr():
        nonlocal pos
        value = parse_atom_signed()
        while pos < len(tokens) and tokens[pos] in "+-":
            op = tokens[pos]
            pos += 1
            rhs = parse_atom_signed()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_atom_signed():
        nonlocal pos
        if pos < len(tokens) and tokens[pos] == "-":
            pos += 1
            return -parse_atom_signed()
        return parse_atom()

    def parse_atom():
        nonlocal pos
        tok = tokens[pos]
        if tok == "abs":
            pos += 1
            if tokens[pos] != "(":
                raise FamilyError(f"abs needs parentheses in {text!r}")
            pos += 1
            inner = parse_expr()
            if tokens[pos] != ")":
                raise FamilyError(f"unbalanced abs in {text!r}")
            pos += 1
            return abs(inner)
        if tok == "(":
            pos += 1
            inner = parse_expr()
            if tokens[pos] != ")":
                raise FamilyError(f"unbalanced parens in {text!r}")
            pos += 1
            return inner
        if tok.startswith("x"):
            pos += 1
            return full_state[int(tok[1:]) - 1]
        pos += 1
        return int(tok)

    value = parse_expr()
    if pos != len(tokens):
        raise FamilyError(f"trailing tokens in {text!r}")
    return value


# --- family definition files -------------------------------------------------

@dataclass(frozen=True)
class FamilyDef:
    name: str
    parities: tuple[int, ...]
    frozen: tuple[bool, ...]
    provider: BaseCaseProvider

    def with_signs(self, signs) -> FamilySpec:
        if isinstance(signs, str):
            signs = parse_signs(signs, len(self.parities))
        if len(signs) != len(self.parities):
            raise FamilyError("sign count does not match band count")
        bands = tuple(BandSpec(s, p, f)
                      for s, p, f in zip(signs, self.parities, self.frozen))
        return FamilySpec(self.name, bands, self.provider)


def parse_family_file(text: str) -> FamilyDef:
    name = None
    parities: list[int] = []
    frozen: list[bool] = []
    base_kind = None
    compose_rows: list[tuple[tuple[int, ...], tuple]] = []
    count_rows: list[tuple[tuple[int, ...], str]] = []
    order: tuple[int, ...] | None = None

    for raw in text.splitlines():
        line = raw.strip()
        # '#' is the connected-sum symbol, so comments are whole-line only
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "family":
            name = rest
        elif head == "band":
            fields = rest.split()
            idx = int(fields[0])
            if idx != len(parities) + 1:
                raise FamilyError("bands must be listed in order starting at 1")
            parities.append(1 if fields[1] == "odd" else 0)
            frozen.append("frozen" in fields[2:])
        elif head == "base":
            base_kind = rest
        elif head == "order":
            order = tuple(int(v) - 1 for v in rest.split())
        elif head == "compose":
            key_text, _, expr = rest.partition("->")
            key = tuple(int(v) for v in key_text.split())
            compose_rows.append((key, _parse_compose_expr(expr.strip())))
        elif head == "count":
            key_text, _, expr = rest.partition("->")
            key = tuple(int(v) for v in key_text.split())
            count_rows.append((key, expr.strip()))
        else:
            raise FamilyError(f"unknown directive {head!r}")

    if name is None or base_kind is None:
        raise FamilyError("family file needs 'family' and 'base' lines")
    if base_kind == "compose":
        even = tuple(i for i, p in enumerate(parities) if p == 0)
        provider: BaseCaseProvider = ComposeProvider(even, tuple(compose_rows))
    elif base_kind == "count":
        if order is None:
            raise FamilyError("count provider needs an 'order' line")
        provider = CountProvider(order, tuple(count_rows))
    else:
        raise FamilyError(f"unknown base-case provider {base_kind!r}")
    return FamilyDef(name, tuple(parities), tuple(frozen), provider)


def _parse_compose_expr(expr: str) -> tuple:
    factors = []
    for chunk in expr.split("#"):
        for token in chunk.split():
            token = token.strip()
            if token == "U":
                factors.append(("U",))
            elif token.startswith("X(") and token.endswith(")"):
                bands = tuple(int(v) for v in token[2:-1].split(","))
                factors.append(("X", bands))
            else:
                raise FamilyError(f"bad base-case factor {token!r}")
    return tuple(factors)


BUILTIN_FAMILIES = {"7_6": "SEVEN_SIX", "10_58": "TEN_FIFTY_EIGHT", "8_12": "EIGHT_TWELVE"}


@lru_cache(maxsize=None)
def load_family(name: str) -> FamilyDef:
    """Load a family definition shipped with the package, or from a path."""
    if name in BUILTIN_FAMILIES:
        data = resources.files("twistknots").joinpath(f"data/families/{name}.family")
        return parse_family_file(data.read_text())
    with open(name) as fh:
        return parse_family_file(fh.read())


# --- assembly ----------------------------------------------------------------

def _base_values(spec: FamilySpec) -> dict[tuple[int, ...], HalfLaurent]:
    active = spec.active_bands
    out = {}
    for x in product((0, 1), repeat=len(active)):
        full = [1] * len(spec.bands)
        for j, i in enumerate(active):
            full[i] = x[j]
        out[x] = spec.provider.jones(spec, tuple(full))
    return out


def base_case_jones(spec: FamilySpec, resolution: tuple[int, ...]) -> HalfLaurent:
    """Base link value for one resolution vector over the active bands."""
    active = spec.active_bands
    if len(resolution) != len(active) or any(v not in (0, 1) for v in resolution):
        raise FamilyError("resolution vector must be 0/1 per active band")
    full = [1] * len(spec.bands)
    for j, i in enumerate(active):
        full[i] = resolution[j]
    return spec.provider.jones(spec, tuple(full))


def _assemble(spec: FamilySpec, n: tuple[int, ...], forced: dict[int, int] | None = None) -> HalfLaurent:
    active = spec.active_bands
    forced = forced or {}
    total = HalfLaurent.zero()
    free = [j for j, i in enumerate(active) if i not in forced]
    for bits in product((0, 1), repeat=len(free)):
        x = [0] * len(active)
        for j, i in enumerate(active):
            if i in forced:
                x[j] = forced[i]
        for b, j in zip(bits, free):
            x[j] = b
        pref = HalfLaurent.one()
        for j, i in enumerate(active):
            if i in forced:
                continue
            pref = pref * prefactor(spec.bands[i].sign, x[j], n[j])
        total = total + pref * base_case_jones(spec, tuple(x))
    return total


def assemble_jones(spec: FamilySpec, twists) -> HalfLaurent:
    """Jones polynomial of one family instance; integral powers of t only."""
    n = check_twists(spec, twists)
    total = _assemble(spec, n)
    if not total.is_knot_valued():
        raise FamilyError("assembled Jones polynomial is not knot-valued")
    return total


def assemble_partial(spec: FamilySpec, twists, forced: dict[int, int]) -> HalfLaurent:
    """Assembly with some bands forced to a state and their prefactor omitted.

    forced maps 0-based band index to 0 (resolved) or 1 (retained); used for
    skein-recursion checks.
    """
    n = check_twists(spec, twists)
    return _assemble(spec, n, forced)


def _weak_compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def symbolic_derivs(spec: FamilySpec, kmax: int = 4) -> list[MultiPoly]:
    """d^k/dt^k of the family Jones polynomial at t=1 as polynomials in the
    twist parameters, for k = 0..kmax, via the Leibniz rule over the assembly."""
    variables = spec.variables
    active = spec.active_bands
    bases = _base_values(spec)
    base_derivs = {x: v.derivs_at_one(kmax) for x, v in bases.items()}
    out = []
    for k in range(kmax + 1):
        acc = MultiPoly.zero(variables)
        for x, bd in base_derivs.items():
            for parts in _weak_compositions(k, len(active) + 1):
                coeff = factorial(k)
                for p in parts:
                    coeff //= factorial(p)
                term = MultiPoly.const(variables, Fraction(coeff) * bd[parts[-1]])
                if not term:
                    continue
                for j, i in enumerate(active):
                    d = prefactor_deriv_poly(spec.bands[i].sign, x[j], parts[j],
                                             variables, variables[j])
                    term = term * d
                    if not term:
                        break
                acc = acc + term
        out.append(acc)
    return out


def jones_derivs(spec: FamilySpec, twists, kmax: int = 4) -> list[Fraction]:
    """Derivatives of the instance Jones polynomial at 1, computed both from
    the assembled polynomial and by the Leibniz rule; the routes must agree."""
    n = check_twists(spec, twists)
    route_a = assemble_jones(spec, n).derivs_at_one(kmax)
    point = dict(zip(spec.variables, n))
    route_b = [p.eval(point) for p in symbolic_derivs(spec, kmax)]
    if route_a != route_b:
        raise FamilyError(
            f"derivative routes disagree for {spec.name}[{spec.signs_str()}] at {n}")
    return route_a
