"""Planar diagram codes and the Kauffman bracket state sum.

A crossing is a 4-tuple of arc labels listed counterclockwise from the incoming
under-strand, plus a marker saying at which tuple position (1 or 3) the over
strand enters.  With the corners of the tuple at south/east/north/west, a
crossing is positive exactly when the over strand enters at position 3.

The bracket is a plain enumeration over all 2^c smoothings with union-find loop
counting; it is deliberately simple so it can serve as an independent oracle.
Exponents of the bracket variable A are kept quadrupled (A = t^(-1/4)), so the
result converts exactly to a Laurent polynomial in t^(1/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .laurent import HalfLaurent

MAX_CROSSINGS = 24


class PDError(ValueError):
    pass


class BudgetExceeded(PDError):
    pass


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]
    over_in: tuple[int, ...]          # per crossing: 1 or 3
    free_loops: int = 0               # crossingless unknot components

    def __post_init__(self):
        if len(self.over_in) != len(self.crossings):
            raise PDError("need one over-strand marker per crossing")
        if any(p not in (1, 3) for p in self.over_in):
            raise PDError("over-strand marker must be position 1 or 3")
        seen: dict[int, int] = {}
        for quad in self.crossings:
            for arc in quad:
                seen[arc] = seen.get(arc, 0) + 1
        bad = [a for a, k in seen.items() if k != 2]
        if bad:
            raise PDError(f"arcs must appear exactly twice, got {sorted(bad)}")

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def arcs(self) -> list[int]:
        out = set()
        for quad in self.crossings:
            out.update(quad)
        return sorted(out)

    def crossing_signs(self) -> tuple[int, ...]:
        return tuple(+1 if p == 3 else -1 for p in self.over_in)

    def writhe(self) -> int:
        return sum(self.crossing_signs())

    def n_components(self) -> int:
        return len(self._components()) + self.free_loops

    def _components(self) -> list[list[int]]:
        """Arc cycles; within a crossing the strand pairs are (0,2) and (1,3)."""
        incid: dict[int, list[tuple[int, int]]] = {}
        for ci, quad in enumerate(self.crossings):
            for pos, arc in enumerate(quad):
                incid.setdefault(arc, []).append((ci, pos))
        comps = []
        seen_arcs: set[int] = set()
        for start in self.arcs():
            if start in seen_arcs:
                continue
            cycle = []
            arc = start
            # walk: at each step choose the incidence not used to enter
            prev: tuple[int, int] | None = None
            while arc not in seen_arcs:
                seen_arcs.add(arc)
                cycle.append(arc)
                a_inc = incid[arc]
                nxt = a_inc[1] if prev == a_inc[0] else a_inc[0]
                if prev is not None and nxt == prev:
                    nxt = a_inc[1] if a_inc[0] == prev else a_inc[0]
                ci, pos = nxt
                out_pos = (pos + 2) % 4
                arc_next = self.crossings[ci][out_pos]
                prev = (ci, out_pos)
                arc = arc_next
            comps.append(cycle)
        return comps

    def validate_orientation(self) -> None:
        """Each arc must be produced once and consumed once.

        Under strand: in at 0, out at 2.  Over strand: in/out at over_in and
        its opposite.
        """
        heads: dict[int, int] = {}
        tails: dict[int, int] = {}
        for ci, quad in enumerate(self.crossings):
            over = self.over_in[ci]
            roles = {0: "head", 2: "tail", over: "head", (over + 2) % 4: "tail"}
            for pos, arc in enumerate(quad):
                store = heads if roles[pos] == "head" else tails
                if arc in store:
                    raise PDError(f"arc {arc} oriented inconsistently")
                store[arc] = ci
        if set(heads) != set(tails):
            raise PDError("open strand ends present")


def kauffman_bracket_stats(pd: PDCode) -> tuple[dict[int, int], int]:
    """Bracket polynomial keyed by quadrupled exponent, plus states processed."""
    c = pd.n_crossings
    if c > MAX_CROSSINGS:
        raise BudgetExceeded(f"{c} crossings exceeds the {MAX_CROSSINGS}-crossing budget")
    arcs = pd.arcs()
    index = {a: i for i, a in enumerate(arcs)}
    n_arcs = len(arcs)
    pairs_a = []   # A-smoothing joins (a,b) and (c,d)
    pairs_b = []   # B-smoothing joins (a,d) and (b,c)
    for quad in pd.crossings:
        a, b, cc, d = (index[x] for x in quad)
        pairs_a.append((a, b, cc, d))
        pairs_b.append((a, d, b, cc))
    out: dict[int, int] = {}
    states = 0
    parent = list(range(n_arcs))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for state in range(1 << c):
        for i in range(n_arcs):
            parent[i] = i
        sigma = 0
        for i in range(c):
            if state >> i & 1:
                sigma += 1
                x, y, z, w = pairs_a[i]
            else:
                sigma -= 1
                x, y, z, w = pairs_b[i]
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
            rz, rw = find(z), find(w)
            if rz != rw:
                parent[rz] = rw
        loops = sum(1 for i in range(n_arcs) if find(i) == i)
        if pd.free_loops:
            loops += pd.free_loops
        # expand A^sigma * delta^(loops-1) with delta = -A^2 - A^(-2)
        sign = -1 if (loops - 1) % 2 else 1
        m = loops - 1
        for j in range(m + 1):
            expo = sigma + 2 * j - 2 * (m - j)
            out[expo] = out.get(expo, 0) + sign * comb(m, j)
        states += 1
    return {e: v for e, v in out.items() if v}, states


def kauffman_bracket(pd: PDCode) -> dict[int, int]:
    """State-sum bracket; keys are exponents of A."""
    poly, _ = kauffman_bracket_stats(pd)
    return poly


def bracket_to_t(poly_in_a: dict[int, int]) -> HalfLaurent:
    """Convert a polynomial in A to t^(1/2) powers via A = t^(-1/4)."""
    out: dict[int, int] = {}
    for e, ccoef in poly_in_a.items():
        if e % 2:
            raise PDError("odd power of A cannot convert to half-integral t")
        out[-e // 2] = out.get(-e // 2, 0) + ccoef
    return HalfLaurent(out)


def jones_from_pd(pd: PDCode) -> HalfLaurent:
    """Writhe-normalized bracket: (-A^3)^(-writhe) <L> expressed in t."""
    pd.validate_orientation()
    w = pd.writhe()
    bracket = kauffman_bracket(pd)
    shifted = {e - 3 * w: c for e, c in bracket.items()}
    value = bracket_to_t(shifted)
    return value if w % 2 == 0 else -value


# --- text format ----------------------------------------------------------------

def parse_pd(text: str) -> PDCode:
    """One crossing per line 'X a b c d', then a line 'orient <b|d>...' with one
    letter per crossing for the over-strand entry position; 'loops n' adds
    crossingless components."""
    crossings = []
    over = []
    loops = 0
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "X":
            if len(fields) != 5:
                raise PDError(f"crossing line needs 4 arcs: {line!r}")
            crossings.append(tuple(int(v) for v in fields[1:]))
        elif fields[0] == "orient":
            for letter in fields[1:]:
                if letter not in ("b", "d"):
                    raise PDError(f"orientation letters must be b or d: {line!r}")
                over.append(1 if letter == "b" else 3)
        elif fields[0] == "loops":
            loops = int(fields[1])
        else:
            raise PDError(f"unknown PD directive {fields[0]!r}")
    pd = PDCode(tuple(crossings), tuple(over), loops)
    pd.validate_orientation()
    return pd


def format_pd(pd: PDCode) -> str:
    lines = [f"X {a} {b} {c} {d}" for a, b, c, d in pd.crossings]
    lines.append("orient " + " ".join("b" if p == 1 else "d" for p in pd.over_in))
    if pd.free_loops:
        lines.append(f"loops {pd.free_loops}")
    return "\n".join(lines) + "\n"


def disjoint_union(p1: PDCode, p2: PDCode) -> PDCode:
    shift = max(p1.arcs(), default=0)
    crossings = p1.crossings + tuple(
        tuple(a + shift for a in quad) for quad in p2.crossings)
    return PDCode(crossings, p1.over_in + p2.over_in, p1.free_loops + p2.free_loops)


def connected_sum(p1: PDCode, p2: PDCode, arc1: int, arc2: int) -> PDCode:
    """Splice arc1 of p1 to arc2 of p2 (orientations must align: head of arc1
    feeds the consumer of arc2 and vice versa)."""
    p1.validate_orientation()
    p2.validate_orientation()
    shift = max(p1.arcs(), default=0)
    fresh = shift + max(p2.arcs(), default=0) + 1

    def role(pd, ci, pos):
        over = pd.over_in[ci]
        return {0: "head", 2: "tail", over: "head", (over + 2) % 4: "tail"}[pos]

    def rewrite(pd, target, is_first):
        quads = []
        for ci, quad in enumerate(pd.crossings):
            new = []
            for pos, arc in enumerate(quad):
                label = arc if is_first else arc + shift
                if arc == target:
                    r = role(pd, ci, pos)
                    if is_first:
                        # tail keeps the old label, head takes the fresh one
                        label = target if r == "tail" else fresh
                    else:
                        label = target + shift if r == "head" else fresh
                new.append(label)
            quads.append(tuple(new))
        return quads

    q1 = rewrite(p1, arc1, True)
    q2 = rewrite(p2, arc2, False)
    # p1's tail end (label arc1) must be consumed by p2's head slot: p2's head
    # of arc2 was relabeled arc2+shift; merge the two labels
    merged = []
    for quad in q2:
        merged.append(tuple(arc1 if a == arc2 + shift else a for a in quad))
    out = PDCode(tuple(q1) + tuple(merged), p1.over_in + p2.over_in,
                 p1.free_loops + p2.free_loops)
    out.validate_orientation()
    return out
