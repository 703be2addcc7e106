"""Diagram templates: build planar diagrams for twist families and expand twists.

Templates are recipes whose leaves are the twist regions, one per band.  Two
layouts exist: columns of continued-fraction tangles closed cyclically (layer
attachments twist the south/east/north/west leg pairs of a tangle), and
two-disk band layouts where each disk's boundary visits band feet in a given
cyclic order.  Expanding a template at a sign case and twist vector rebuilds
the diagram with s_i (2 n_i - m_i) crossings in band i's region (times a
per-band handedness calibration recorded in the template file).

Strand orientations are recovered by traversal; a twist region along a band of
a spanning surface has anti-parallel strands, and for links the component
orientations are chosen to make every region anti-parallel.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from itertools import product

from .families import FamilySpec, check_twists
from .pdcodes import BudgetExceeded, PDCode, jones_from_pd

# slot indices inside a crossing
NW, NE, SW, SE = 0, 1, 2, 3
_CCW_ORDER = (NW, SW, SE, NE)   # counterclockwise walk around a crossing
_PARTNER = {NW: SE, SE: NW, NE: SW, SW: NE}


class DiagramError(ValueError):
    pass


class _Builder:
    def __init__(self):
        self.crossings: list[list[int]] = []   # port id per slot
        self.over_diag: list[str] = []         # 'L' (NW-SE over) or 'R'
        self.regions: dict[int, list[int]] = {}
        self._ports = 0
        self._parent: dict[int, int] = {}

    def new_port(self, virtual: bool = False) -> int:
        # virtual ports carry pass-through strands; they dissolve into arcs
        self._ports += 1
        p = self._ports
        self._parent[p] = p
        return p

    def find(self, p: int) -> int:
        while self._parent[p] != p:
            self._parent[p] = self._parent[self._parent[p]]
            p = self._parent[p]
        return p

    def weld(self, p: int, q: int):
        rp, rq = self.find(p), self.find(q)
        if rp != rq:
            self._parent[rp] = rq

    def add_crossing(self, over: str) -> list[int]:
        slots = [self.new_port() for _ in range(4)]
        self.crossings.append(slots)
        self.over_diag.append(over)
        return slots

    # --- twist regions ------------------------------------------------

    def vertical_region(self, count: int, band: int | None = None):
        """Ports (nw, ne, sw, se); a positive count gives the same chirality as
        the positive one-band two-circle pattern (calibrated against the
        family engine's Hopf-link value)."""
        if count == 0:
            ports = [self.new_port(virtual=True) for _ in range(4)]
            self.weld(ports[NW], ports[SW])
            self.weld(ports[NE], ports[SE])
            return tuple(ports)
        over = "L" if count > 0 else "R"
        first = None
        prev = None
        for _ in range(abs(count)):
            slots = self.add_crossing(over)
            if band is not None:
                self.regions.setdefault(band, []).append(len(self.crossings) - 1)
            if prev is None:
                first = slots
            else:
                self.weld(prev[SW], slots[NW])
                self.weld(prev[SE], slots[NE])
            prev = slots
        return (first[NW], first[NE], prev[SW], prev[SE])

    def horizontal_region(self, count: int, band: int | None = None):
        """Ports (nw, ne, sw, se) of the block; strands run sideways."""
        if count == 0:
            ports = [self.new_port(virtual=True) for _ in range(4)]
            self.weld(ports[NW], ports[NE])
            self.weld(ports[SW], ports[SE])
            return tuple(ports)
        over = "L" if count > 0 else "R"
        first = None
        prev = None
        for _ in range(abs(count)):
            slots = self.add_crossing(over)
            if band is not None:
                self.regions.setdefault(band, []).append(len(self.crossings) - 1)
            if prev is None:
                first = slots
            else:
                self.weld(prev[NE], slots[NW])
                self.weld(prev[SE], slots[SW])
            prev = slots
        return (first[NW], prev[NE], first[SW], prev[SE])

    def cut_region(self):
        """Oriented smoothing of a band: cap the top ports, cup the bottom ones."""
        ports = [self.new_port(virtual=True) for _ in range(4)]
        self.weld(ports[NW], ports[NE])
        self.weld(ports[SW], ports[SE])
        return tuple(ports)

    # --- assembly into a PDCode ------------------------------------------

    def realize(self) -> PDCode:
        classes: dict[int, list[tuple[int, int]]] = {}
        for ci, slots in enumerate(self.crossings):
            for pos, port in enumerate(slots):
                classes.setdefault(self.find(port), []).append((ci, pos))
        for port in list(self._parent):
            classes.setdefault(self.find(port), [])
        free_loops = sum(1 for members in classes.values() if not members)
        arc_ids: dict[int, int] = {}
        next_arc = 1
        for root in sorted(classes, key=lambda r: sorted(classes[r]) or [(10 ** 9, r)]):
            members = classes[root]
            if not members:
                continue
            if len(members) != 2:
                raise DiagramError(f"arc class with {len(members)} endpoints; diagram not closed")
            arc_ids[root] = next_arc
            next_arc += 1

        arcs = [[arc_ids[self.find(p)] for p in slots] for slots in self.crossings]
        orientation = self._orient(arcs)
        crossings = []
        over_in = []
        for ci, slots in enumerate(arcs):
            over = self.over_diag[ci]
            under_slots = (NE, SW) if over == "L" else (NW, SE)
            under_in = next(s for s in under_slots if orientation[(ci, s)] == "in")
            order = []
            idx = _CCW_ORDER.index(under_in)
            for k in range(4):
                order.append(_CCW_ORDER[(idx + k) % 4])
            crossings.append(tuple(slots[s] for s in order))
            over_slots = (NW, SE) if over == "L" else (NE, SW)
            over_entry = next(s for s in over_slots if orientation[(ci, s)] == "in")
            over_in.append(order.index(over_entry))
        pd = PDCode(tuple(crossings), tuple(over_in), free_loops)
        pd.validate_orientation()
        return pd

    def _components(self, arcs) -> list[list[tuple[int, int]]]:
        """Strand cycles as lists of (crossing, slot) where the strand enters."""
        incidence: dict[int, list[tuple[int, int]]] = {}
        for ci, slots in enumerate(arcs):
            for pos, arc in enumerate(slots):
                incidence.setdefault(arc, []).append((ci, pos))
        seen: set[tuple[int, int]] = set()
        comps = []
        for ci0 in range(len(arcs)):
            for pos0 in range(4):
                if (ci0, pos0) in seen:
                    continue
                walk = []
                ci, pos = ci0, pos0
                while (ci, pos) not in seen:
                    seen.add((ci, pos))
                    out_pos = _PARTNER[pos]
                    seen.add((ci, out_pos))
                    walk.append((ci, pos))
                    arc = arcs[ci][out_pos]
                    a, b = incidence[arc]
                    ci, pos = b if a == (ci, out_pos) else a
                comps.append(walk)
        return comps

    def _orient(self, arcs) -> dict[tuple[int, int], str]:
        """Orient the strands.  A knot has a canonical choice (reversal does not
        change the Jones polynomial); for links the component orientations are
        chosen so that every marked twist region has anti-parallel strands,
        matching the two-circle band patterns the fixtures realize."""
        comps = self._components(arcs)
        if len(comps) > 6:
            raise DiagramError("too many components to orient")
        for flips in product((False, True), repeat=max(len(comps) - 1, 0)):
            flip = (False,) + flips
            orientation: dict[tuple[int, int], str] = {}
            for k, comp in enumerate(comps):
                entries = comp if not flip[k] else [
                    (ci, _PARTNER[pos]) for ci, pos in reversed(comp)]
                for ci, pos in entries:
                    orientation[(ci, pos)] = "in"
                    orientation[(ci, _PARTNER[pos])] = "out"
            if len(comps) == 1 or self._antiparallel_ok(orientation):
                return orientation
        raise DiagramError("no orientation makes every twist region anti-parallel")

    def _antiparallel_ok(self, orientation) -> bool:
        for band, cr_list in self.regions.items():
            for ci in cr_list:
                top_in = (orientation[(ci, NW)] == "in", orientation[(ci, NE)] == "in")
                if top_in[0] == top_in[1]:
                    return False
        return True


# --- recipes ------------------------------------------------------------------

@dataclass(frozen=True)
class DiagramTemplate:
    family: str
    structure: tuple          # nested tuples; leaves ("band", i)
    mult: tuple[int, ...]     # per-band handedness calibration
    base_pd: str              # the diagram at unit twists, all-plus signs

    def bands(self) -> list[int]:
        found = []

        def walk(node):
            if node[0] == "band":
                found.append(node[1])
            else:
                for child in node[1:]:
                    if isinstance(child, tuple):
                        walk(child)
        walk(self.structure)
        return sorted(found)


def build_diagram(tpl: DiagramTemplate, spec: FamilySpec, twists,
                  resolved: frozenset[int] = frozenset(),
                  zeroed: frozenset[int] = frozenset()) -> PDCode:
    """Instantiate the template at a sign case and twist vector.

    ``resolved`` lists 0-based band indices replaced by the oriented smoothing
    (the cut band); ``zeroed`` bands keep their strands but drop all crossings.
    Both are used for skein and base-case cross-checks.
    """
    n = check_twists(spec, twists)
    by_band = dict(zip(spec.active_bands, n))
    builder = _Builder()

    def band_count(i0: int) -> int:
        band = spec.bands[i0]
        if band.frozen or i0 in zeroed:
            return 0
        return tpl.mult[i0] * band.sign * (2 * by_band[i0] - band.parity)

    def instantiate(node, kind: str):
        head = node[0]
        if head == "band":
            i0 = node[1] - 1
            if i0 in resolved:
                return builder.cut_region()
            count = band_count(i0)
            if kind == "h":
                return builder.horizontal_region(count, band=i0)
            return builder.vertical_region(count, band=i0)
        if head == "bottom":
            # twist the two south legs around each other: a vertical layer below
            t = instantiate(node[1], "v")
            r = instantiate(node[2], "v")
            builder.weld(t[2], r[0])   # t.sw -> r.nw
            builder.weld(t[3], r[1])   # t.se -> r.ne
            return (t[0], t[1], r[2], r[3])
        if head == "right":
            # twist the two east legs around each other: a horizontal layer
            t = instantiate(node[1], "v")
            r = instantiate(node[2], "h")
            builder.weld(t[1], r[0])   # t.ne -> r.nw (west end of the top rail)
            builder.weld(t[3], r[2])   # t.se -> r.sw (west end of the bottom rail)
            return (t[0], r[1], t[2], r[3])
        if head == "top":
            # twist the two north legs: a vertical layer above
            t = instantiate(node[1], "v")
            r = instantiate(node[2], "v")
            builder.weld(r[2], t[0])   # r.sw -> t.nw
            builder.weld(r[3], t[1])   # r.se -> t.ne
            return (r[0], r[1], t[2], t[3])
        if head == "left":
            # twist the two west legs: a horizontal layer on the west side
            t = instantiate(node[1], "v")
            r = instantiate(node[2], "h")
            builder.weld(r[1], t[0])   # r.ne -> t.nw
            builder.weld(r[3], t[2])   # r.se -> t.sw
            return (r[0], t[1], r[2], t[3])
        if head == "vstack":
            t1 = instantiate(node[1], "v")
            t2 = instantiate(node[2], "v")
            builder.weld(t1[2], t2[0])
            builder.weld(t1[3], t2[1])
            return (t1[0], t1[1], t2[2], t2[3])
        raise DiagramError(f"unknown template node {head!r}")

    if tpl.structure[0] == "montesinos":
        columns = [instantiate(child, "v") for child in tpl.structure[1:]]
        m = len(columns)
        for i in range(m):
            nxt = columns[(i + 1) % m]
            builder.weld(columns[i][1], nxt[0])   # ne -> nw
            builder.weld(columns[i][3], nxt[2])   # se -> sw
        return builder.realize()
    if tpl.structure[0] == "disks":
        # two fat vertices; each foot of a band occupies two consecutive ports
        # along a disk boundary, and boundary arcs join consecutive feet
        ports: dict[int, tuple] = {}

        def region(bd: int):
            i0 = bd - 1
            if i0 not in ports:
                if i0 in resolved:
                    ports[i0] = builder.cut_region()
                else:
                    ports[i0] = builder.vertical_region(band_count(i0), band=i0)
            return ports[i0]

        for feet in tpl.structure[1:]:
            walk = []
            for band_no, end, flip in feet:
                p = region(band_no)
                pair = (p[NW], p[NE]) if end == 0 else (p[SW], p[SE])
                walk.append(pair if not flip else (pair[1], pair[0]))
            for k, (left, right) in enumerate(walk):
                nxt = walk[(k + 1) % len(walk)]
                builder.weld(right, nxt[0])
        return builder.realize()
    raise DiagramError("template must be a closed column arrangement")


def expand_twists(tpl: DiagramTemplate, spec: FamilySpec, twists) -> PDCode:
    return build_diagram(tpl, spec, twists)


def pretzel_pd(*counts: int) -> PDCode:
    """Columns of vertical twists closed cyclically; fixture generator."""
    builder = _Builder()
    cols = [builder.vertical_region(k, band=i) for i, k in enumerate(counts)]
    m = len(cols)
    for i in range(m):
        nxt = cols[(i + 1) % m]
        builder.weld(cols[i][1], nxt[0])
        builder.weld(cols[i][3], nxt[2])
    return builder.realize()


def crosscheck(spec: FamilySpec, tpl: DiagramTemplate, twists,
               budget: int = 18) -> bool:
    """True when the state-sum Jones of the expanded diagram matches the
    family-engine assembly exactly."""
    from .families import assemble_jones
    pd = build_diagram(tpl, spec, twists)
    if pd.n_crossings > budget:
        raise BudgetExceeded(
            f"{pd.n_crossings} crossings over the spot-check budget {budget}")
    return jones_from_pd(pd) == assemble_jones(spec, twists)


# --- template files -------------------------------------------------------------

def _to_tuple(node):
    if isinstance(node, list):
        return tuple(_to_tuple(x) for x in node)
    return node


def parse_template(text: str) -> DiagramTemplate:
    data = json.loads(text)
    mult_map = {int(k): int(v) for k, v in data["mult"].items()}
    k = max(mult_map)
    mult = tuple(mult_map.get(i, 1) for i in range(1, k + 1))
    return DiagramTemplate(data["family"], _to_tuple(data["structure"]),
                           mult, data.get("base_pd", ""))


def load_template(family: str) -> DiagramTemplate:
    data = resources.files("twistknots").joinpath(f"data/templates/{family}.pdt")
    return parse_template(data.read_text())
