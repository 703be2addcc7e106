"""Multivariate polynomials over exact rationals in a fixed set of named variables.

Used for symbolic twist-parameter computations: derivative polynomials in the
twist counts, leading Alexander coefficients, and the per-case formula checks.
Substitution of a rational expression for a variable is done fraction-free by
clearing the denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping

Monomial = tuple[int, ...]


class MultiPoly:
    """Immutable polynomial in the variables ``vars`` with Fraction coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Monomial, object] | None = None):
        self.vars = tuple(variables)
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if not c:
                    continue
                mono = tuple(int(x) for x in mono)
                if len(mono) != len(self.vars):
                    raise ValueError("monomial arity does not match variable set")
                clean[mono] = clean.get(mono, Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    # --- constructors -------------------------------------------------

    @classmethod
    def const(cls, variables: Iterable[str], value) -> "MultiPoly":
        variables = tuple(variables)
        zero = (0,) * len(variables)
        return cls(variables, {zero: Fraction(value)})

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def var(cls, variables: Iterable[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        mono = [0] * len(variables)
        mono[variables.index(name)] = 1
        return cls(variables, {tuple(mono): Fraction(1)})

    # --- ring structure -----------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise ValueError(f"variable sets differ: {self.vars} vs {other.vars}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiPoly) and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return MultiPoly(self.vars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return MultiPoly(self.vars, out)

    def scale(self, k) -> "MultiPoly":
        k = Fraction(k)
        return MultiPoly(self.vars, {m: k * c for m, c in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # --- queries --------------------------------------------------------

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((m[i] for m in self.terms), default=0)

    def coefficients_in(self, name: str) -> dict[int, "MultiPoly"]:
        """Split as a polynomial in one variable with MultiPoly coefficients."""
        i = self.vars.index(name)
        buckets: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            d = m[i]
            rest = m[:i] + (0,) + m[i + 1:]
            buckets.setdefault(d, {})[rest] = buckets.get(d, {}).get(rest, Fraction(0)) + c
        return {d: MultiPoly(self.vars, t) for d, t in buckets.items()}

    def eval(self, point: Mapping[str, object]) -> Fraction:
        """Exact evaluation; every variable must be assigned."""
        vals = []
        for v in self.vars:
            if v not in point:
                raise KeyError(f"missing variable {v!r}")
            vals.append(Fraction(point[v]))
        out = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for val, exp in zip(vals, m):
                if exp:
                    term *= val ** exp
            out += term
        return out

    def eval_int(self, values: tuple[int, ...], powers: list[list[int]] | None = None):
        """Fast path: integer coefficients and integer point (values in var order)."""
        out = 0
        if powers is None:
            maxdeg = [0] * len(self.vars)
            for m in self.terms:
                for i, e in enumerate(m):
                    if e > maxdeg[i]:
                        maxdeg[i] = e
            powers = [[v ** e for e in range(d + 1)] for v, d in zip(values, maxdeg)]
        for m, c in self.terms.items():
            term = c.numerator if isinstance(c, Fraction) else c
            for i, e in enumerate(m):
                if e:
                    term *= powers[i][e]
            out += term
        return out

    def is_integer_poly(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def substitute(self, assignment: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Replace variables by polynomials (same variable context)."""
        out = MultiPoly.zero(self.vars)
        for m, c in self.terms.items():
            term = MultiPoly.const(self.vars, c)
            for name, exp in zip(self.vars, m):
                if not exp:
                    continue
                repl = assignment.get(name)
                if repl is None:
                    repl = MultiPoly.var(self.vars, name)
                term = term * repl ** exp
            out = out + term
        return out

    def substitute_cleared(self, name: str, num: "MultiPoly", den: "MultiPoly") -> tuple["MultiPoly", int]:
        """den^d * self with ``name`` replaced by num/den, d = degree in ``name``.

        Returns the cleared polynomial and the degree d, so callers can track
        which power of the denominator was multiplied in.
        """
        self._check(num)
        self._check(den)
        d = self.degree_in(name)
        parts = self.coefficients_in(name)
        out = MultiPoly.zero(self.vars)
        for j, coeff in parts.items():
            out = out + coeff * num ** j * den ** (d - j)
        return out, d

    def shifted_by_one(self, names: Iterable[str] | None = None) -> "MultiPoly":
        """Substitute v -> v + 1 for the given variables (default: all).

        All-nonnegative coefficients of the result with a positive constant
        certify strict positivity on the region where those variables are >= 1.
        """
        names = tuple(names) if names is not None else self.vars
        assignment = {}
        for v in names:
            assignment[v] = MultiPoly.var(self.vars, v) + MultiPoly.const(self.vars, 1)
        return self.substitute(assignment)

    # --- formatting -------------------------------------------------------

    @staticmethod
    def _order_key(mono: Monomial):
        # graded lexicographic, largest first
        return (-sum(mono), tuple(-e for e in mono))

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=self._order_key):
            c = self.terms[mono]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = []
            for v, e in zip(self.vars, mono):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            if not factors:
                body = str(mag)
            else:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{mag}*{body}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MultiPoly[{','.join(self.vars)}]({self.format()})"


# --- expression parsing ----------------------------------------------------

class ExprError(ValueError):
    pass


def parse_poly(text: str, variables: Iterable[str]) -> MultiPoly:
    """Parse '+', '-', '*', '/', '^', parentheses, integers and variable names.

    Division is only allowed by constant subexpressions (the parsed divisor
    must be a rational constant); everything else stays polynomial.
    """
    variables = tuple(variables)
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ExprError(f"unexpected token {tok!r} in {text!r}")
        pos += 1
        return tok

    def parse_expr() -> MultiPoly:
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term() -> MultiPoly:
        node = parse_factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_factor()
            if op == "*":
                node = node * rhs
            else:
                if rhs.total_degree() != 0:
                    raise ExprError(f"division by non-constant in {text!r}")
                const = rhs.terms.get((0,) * len(variables), Fraction(0))
                if not const:
                    raise ExprError(f"division by zero in {text!r}")
                node = node.scale(Fraction(1) / const)
        return node

    def parse_factor() -> MultiPoly:
        if peek() == "-":
            take()
            return -parse_factor()
        if peek() == "+":
            take()
            return parse_factor()
        node = parse_atom()
        while peek() == "^":
            take()
            expo = take()
            if not isinstance(expo, int):
                raise ExprError(f"exponent must be an integer in {text!r}")
            node = node ** expo
        return node

    def parse_atom() -> MultiPoly:
        tok = peek()
        if tok == "(":
            take()
            node = parse_expr()
            take(")")
            return node
        if isinstance(tok, int):
            take()
            return MultiPoly.const(variables, tok)
        if isinstance(tok, str) and tok not in "+-*/^()":
            take()
            if tok not in variables:
                raise ExprError(f"unknown variable {tok!r} in {text!r}")
            return MultiPoly.var(variables, tok)
        raise ExprError(f"unexpected token {tok!r} in {text!r}")

    node = parse_expr()
    if pos != len(tokens):
        raise ExprError(f"trailing input in {text!r}")
    return node


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(int(text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ExprError(f"bad character {ch!r} in {text!r}")
    return tokens


# --- standard symbolic helpers ----------------------------------------------

def power_sum_poly(m: int, variables: Iterable[str], name: str) -> MultiPoly:
    """S_m as a polynomial in ``name``: sum of j^m for j = 0..n-1."""
    variables = tuple(variables)
    n = MultiPoly.var(variables, name)
    sums: list[MultiPoly] = [n]  # S_0(n) = n
    for p in range(1, m + 1):
        acc = n ** (p + 1)
        for r in range(p):
            acc = acc - sums[r].scale(comb(p + 1, r))
        sums.append(acc.scale(Fraction(1, p + 1)))
    return sums[m]


def falling_factorial_poly(linear: MultiPoly, k: int) -> MultiPoly:
    """L (L-1) ... (L-k+1) for a polynomial argument L."""
    out = MultiPoly.const(linear.vars, 1)
    for r in range(k):
        out = out * (linear - MultiPoly.const(linear.vars, r))
    return out
