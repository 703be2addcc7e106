from fractions import Fraction
from itertools import product

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from twistknots.families import (
    FamilyError,
    assemble_jones,
    assemble_partial,
    base_case_jones,
    check_twists,
    jones_derivs,
    load_family,
    parse_family_file,
    parse_signs,
    prefactor,
    prefactor_deriv_poly,
    symbolic_derivs,
    xn_jones,
)
from twistknots.laurent import HalfLaurent, unlink_factor
from twistknots.multipoly import MultiPoly, parse_poly

HL = HalfLaurent
DELTA = unlink_factor()   # -(t^(1/2) + t^(-1/2))

SEVEN = load_family("7_6")
TEN = load_family("10_58")
EIGHT = load_family("8_12")


# --- prefactors --------------------------------------------------------------

def test_prefactor_retained():
    assert prefactor(+1, 1, 3) == HL({12: 1})          # t^6
    assert prefactor(-1, 1, 2) == HL({-8: 1})          # t^(-4)


def test_prefactor_resolved_small():
    # n=1 leaves only the twist factor: (s t^s)(t^(1/2) - t^(-1/2))
    assert prefactor(+1, 0, 1) == HL({3: 1, 1: -1})    # t^(3/2) - t^(1/2)
    assert prefactor(-1, 0, 1) == HL({-3: 1, -1: -1})  # t^(-3/2) - t^(-1/2)


def test_prefactor_geometric_growth():
    # n=2 adds one full twist worth of exponent shift
    assert prefactor(+1, 0, 2) == prefactor(+1, 0, 1) + prefactor(+1, 0, 1).shift(4)


# The published derivative table for the prefactors, k = 0..4; upper signs for
# s = +1, lower for s = -1.  These are test expectations only: the module
# re-derives each entry symbolically.
TABLE = {
    (+1, 0, 0): "0",
    (-1, 0, 0): "0",
    (+1, 1, 0): "1",
    (-1, 1, 0): "1",
    (+1, 0, 1): "n",
    (-1, 0, 1): "-n",
    (+1, 1, 1): "2*n",
    (-1, 1, 1): "-2*n",
    (+1, 0, 2): "2*n^2 - n",
    (-1, 0, 2): "2*n^2 + n",
    (+1, 1, 2): "2*n*(2*n - 1)",
    (-1, 1, 2): "2*n*(2*n + 1)",
    (+1, 0, 3): "n/4*(5 - 24*n + 16*n^2)",
    (-1, 0, 3): "n/4*(-5 - 24*n - 16*n^2)",
    (+1, 1, 3): "4*n*(1 - 3*n + 2*n^2)",
    (-1, 1, 3): "4*n*(-1 - 3*n - 2*n^2)",
    (+1, 0, 4): "n/2*(-3 + 38*n - 48*n^2 + 16*n^3)",
    (-1, 0, 4): "n/2*(3 + 38*n + 48*n^2 + 16*n^3)",
    (+1, 1, 4): "4*n*(-3 + 11*n - 12*n^2 + 4*n^3)",
    (-1, 1, 4): "4*n*(3 + 11*n + 12*n^2 + 4*n^3)",
}


@pytest.mark.parametrize("s,x,k", sorted(TABLE))
def test_prefactor_deriv_table(s, x, k):
    expected = parse_poly(TABLE[(s, x, k)], ("n",))
    assert prefactor_deriv_poly(s, x, k) == expected


@pytest.mark.parametrize("s", (+1, -1))
@pytest.mark.parametrize("x", (0, 1))
def test_prefactor_deriv_matches_instances(s, x):
    # independent route: differentiate the explicit polynomial at fixed n
    for k in range(5):
        poly = prefactor_deriv_poly(s, x, k)
        for n in range(1, 6):
            assert poly.eval({"n": n}) == prefactor(s, x, n).derivs_at_one(k)[k]


# --- two-circle patterns -------------------------------------------------------

def test_xn_base_values():
    assert xn_jones([]) == DELTA
    assert xn_jones([+1]) == HL.one()
    assert xn_jones([-1]) == HL.one()


def test_xn_two_and_three():
    assert xn_jones([+1, +1]) == HL({5: -1, 1: -1})          # positive Hopf link
    assert xn_jones([+1, +1, +1]) == HL({8: -1, 6: 1, 2: 1})  # right trefoil
    assert xn_jones([-1, -1, -1]) == xn_jones([1, 1, 1]).mirror()


def test_xn_cancellation():
    assert xn_jones([+1, -1]) == DELTA
    assert xn_jones([+1, -1, +1]) == HL.one()
    assert xn_jones([0, +1, 0, -1]) == DELTA
    assert xn_jones([+1, +1, -1, -1]) == DELTA
    assert xn_jones([-1, +1, +1]) == HL.one()


def test_xn_recursion_consistency():
    z_up = HL({3: 1, 1: -1})
    for n in range(2, 7):
        lhs = xn_jones([1] * n)
        rhs = HL({4: 1}) * xn_jones([1] * (n - 2)) + z_up * xn_jones([1] * (n - 1))
        assert lhs == rhs


def test_xn_rejects_bad_args():
    with pytest.raises(FamilyError):
        xn_jones([2])


# --- base cases ----------------------------------------------------------------

def test_base_case_7_6_examples():
    spec = SEVEN.with_signs("+++++")
    # all odd bands retained, even bands resolved: mirrored trefoil pattern
    assert base_case_jones(spec, (1, 1, 1, 0, 0)) == xn_jones([-1, -1, -1])
    # band 5 retained splits a connected summand; value is the 2-unlink factor
    assert base_case_jones(spec, (0, 0, 1, 0, 1)) == DELTA
    # only band 4 retained: two-circle pattern plus a disjoint unknot
    assert base_case_jones(spec, (0, 0, 0, 1, 0)) == DELTA * DELTA


def test_base_case_10_58_counts():
    spec = TEN.with_signs("+++++")
    assert base_case_jones(spec, (0, 0, 0, 0, 0)) == DELTA            # 2 unknots
    assert base_case_jones(spec, (1, 1, 1, 1, 1)) == HL.one()         # 1 unknot
    assert base_case_jones(spec, (0, 1, 0, 1, 1)) == HL.one()         # 2-|0-1| = 1


def test_base_case_8_12_uses_retained_fifth_band():
    s8 = EIGHT.with_signs("+++++")
    s10 = TEN.with_signs("+++++")
    for x in product((0, 1), repeat=4):
        assert base_case_jones(s8, x) == base_case_jones(s10, x + (1,))


# --- assembly -------------------------------------------------------------------

def test_unknot_exception_instances():
    spec = SEVEN.with_signs("++-+-")
    for d in (1, 2, 3):
        for e in (1, 2):
            assert assemble_jones(spec, (1, e + 1, 1, d, e)) == HL.one()


def test_assembly_matches_mirror_family():
    spec = SEVEN.with_signs("++-+-")
    mirror = spec.mirrored()
    assert mirror.signs_str() == "--+-+"
    n = (1, 2, 2, 1, 3)
    assert assemble_jones(mirror, n) == assemble_jones(spec, n).mirror()


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["7_6", "10_58", "8_12"]),
       st.tuples(*[st.sampled_from("+-")] * 5).map("".join),
       st.tuples(*[st.integers(min_value=1, max_value=3)] * 5))
def test_assembly_properties(name, signs, raw_n):
    fam = load_family(name)
    spec = fam.with_signs(signs)
    n = raw_n[: len(spec.active_bands)]
    v = assemble_jones(spec, n)
    assert v.is_knot_valued()
    assert v.eval_at_one() == 1
    assert v.derivs_at_one(1)[1] == 0
    assert assemble_jones(spec.mirrored(), n) == v.mirror()


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(["7_6", "10_58"]),
       st.tuples(*[st.sampled_from("+-")] * 5).map("".join),
       st.tuples(*[st.integers(min_value=1, max_value=3)] * 5),
       st.integers(min_value=0, max_value=4))
def test_skein_recursion_per_band(name, signs, n, band):
    """Per-band recursion: V(n_i) = t^(2s) V(n_i - 1) + s t^s z Q_resolved."""
    fam = load_family(name)
    spec = fam.with_signs(signs)
    if n[band] < 2:
        n = n[:band] + (n[band] + 1,) + n[band + 1:]
    s = spec.bands[band].sign
    lower = n[:band] + (n[band] - 1,) + n[band + 1:]
    resolved = assemble_partial(spec, n, {band: 0})
    z = HL({1: 1, -1: -1})
    rhs = HL({4 * s: 1}) * assemble_jones(spec, lower) + HL({2 * s: s}) * z * resolved
    assert assemble_jones(spec, n) == rhs


def test_state_split_identity():
    # V = pre(s,1,n)*<retained part> + pre(s,0,n)*<resolved part> for each band
    spec = TEN.with_signs("+-++-")
    n = (2, 1, 2, 1, 1)
    for band in range(5):
        s = spec.bands[band].sign
        retained = assemble_partial(spec, n, {band: 1})
        resolved = assemble_partial(spec, n, {band: 0})
        combined = prefactor(s, 1, n[band]) * retained + prefactor(s, 0, n[band]) * resolved
        assert combined == assemble_jones(spec, n)


def test_jones_derivs_examples():
    spec = SEVEN.with_signs("++-+-")
    assert jones_derivs(spec, (1, 2, 1, 1, 1)) == [1, 0, 0, 0, 0]
    spec2 = SEVEN.with_signs("++-++")
    derivs = jones_derivs(spec2, (1, 1, 1, 1, 1))
    assert derivs[1] == 0
    assert derivs[2] == -6


def test_symbolic_derivs_match_published_cases():
    V = ("a", "b", "c", "d", "e")
    cases = {
        "++-++": "-6*(a*b - c*(a+b+d-1) + d*(b+e))",
        "+--++": "6*(-b*c + a*(b+c-1) + d*(b+c-e-1))",
    }
    for signs, expr in cases.items():
        sd = symbolic_derivs(SEVEN.with_signs(signs), 2)
        assert not sd[1]
        assert sd[2] == parse_poly(expr, V)


def test_symbolic_first_derivative_vanishes():
    for signs in ("+++++", "+-+-+", "--+--"):
        for fam in (SEVEN, TEN, EIGHT):
            sd = symbolic_derivs(fam.with_signs(signs), 1)
            assert sd[0] == MultiPoly.const(fam.with_signs(signs).variables, 1)
            assert not sd[1]


def test_symbolic_evaluates_to_instance_derivs():
    spec = TEN.with_signs("++-+-")
    sd = symbolic_derivs(spec, 4)
    for n in [(1, 1, 1, 1, 1), (2, 1, 3, 1, 2)]:
        point = dict(zip(spec.variables, n))
        assert [p.eval(point) for p in sd] == jones_derivs(spec, n)


# --- validation and file format --------------------------------------------------

def test_parse_signs_rejects_bad_input():
    with pytest.raises(FamilyError):
        parse_signs("++++", 5)
    with pytest.raises(FamilyError):
        parse_signs("++x++", 5)


def test_check_twists():
    spec = SEVEN.with_signs("+++++")
    with pytest.raises(FamilyError):
        check_twists(spec, (1, 1, 1, 1))
    with pytest.raises(FamilyError):
        check_twists(spec, (1, 1, 0, 1, 1))
    s8 = EIGHT.with_signs("+++++")
    assert check_twists(s8, (1, 2, 3, 4)) == (1, 2, 3, 4)


def test_family_file_errors():
    with pytest.raises(FamilyError):
        parse_family_file("family x\nband 2 odd\nbase compose\n")
    with pytest.raises(FamilyError):
        parse_family_file("family x\nband 1 odd\nbase count\n")


def test_count_provider_rejects_nonpositive_counts():
    text = """family bad
band 1 even
base count
order 1
count 0 -> 0
count 1 -> 1
"""
    fam = parse_family_file(text)
    spec = fam.with_signs("+")
    with pytest.raises(FamilyError):
        base_case_jones(spec, (0,))
