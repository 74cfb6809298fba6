"""Acceptance gate: one group of tests per criterion.

conftest.py aggregates the outcomes and prints one PASS/FAIL line per
criterion at the end of the run.  Run directly with
``python3 tests/test_acceptance.py`` to execute only this gate.
"""

import sys
from itertools import product

import pytest

from helpers import induced_subsets, iposets_upto, posets, posets_upto
from iposets.algebra import (
    LaxOutcome,
    commute_symmetries,
    find_refinement,
    glue,
    isomorphic,
    par,
    subsumes,
    verify_lax_interchange,
)
from iposets.canonical import canonical_form, from_key
from iposets.cli import main
from iposets.core import (
    EMPTY,
    connected_components,
    delete_point,
    identity,
    is_interface_consistent,
    make_iposet,
    singleton,
)
from iposets.enumeration import GENERATORS, generate_gp_closure, hierarchy_levels
from iposets.forbidden import explaining_fixture, fixture, known_forbidden, minimal_forbidden
from iposets.recognition import (
    NotIntervalOrder,
    build_witness,
    gp_level,
    interval_representation,
    is_gp,
    is_interval_order,
    is_sp,
    is_step_sequence,
    representation_is_valid,
)

# expected counts per size, columns P, SP, IO, GP, IP, GPI
TABLE = {
    0: (1, 1, 1, 1, 1, 1),
    1: (1, 1, 1, 1, 4, 4),
    2: (2, 2, 2, 2, 17, 16),
    3: (5, 5, 5, 5, 86, 74),
    4: (16, 15, 15, 16, 532, 419),
    5: (63, 48, 53, 63, 4068, 2980),
    6: (318, 167, 217, 313, 38933, 26566),
    7: (2045, 602, 1014, 1903, 474822, 289279),
}
COLUMNS = ("P", "SP", "IO", "GP", "IP", "GPI")
SIX = ("NN", "N+", "N-", "3C", "LN")

POINT = singleton(False, False)
TWO_PLUS_TWO = make_iposet(4, [(0, 1), (2, 3)])
SWAPPED_2_2 = make_iposet(4, [(0, 1), (2, 3)], [0, 2], [3, 1])


def run_census(capsys, argv):
    assert main(argv) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "n\tclass\tcount"
    table = {}
    for line in rows[1:]:
        n, cls, count = line.split("\t")
        table[int(n), cls] = int(count)
    return table


def by_dom(items):
    table = {}
    for P in items:
        table.setdefault(P.dom, []).append(P)
    return table


def has_induced(P, key, k):
    return any(canonical_form(Q) == key for Q in induced_subsets(P, k))


# -- 1 -------------------------------------------------------------------------------

C1 = pytest.mark.criterion(1, "census --max-n 6 reproduces rows 0-6, all six columns")


@C1
def test_census_rows_to_six(capsys):
    table = run_census(capsys, ["census", "--max-n", "6"])
    for n in range(7):
        assert tuple(table[n, c] for c in COLUMNS) == TABLE[n], n


# -- 2 -------------------------------------------------------------------------------

C2 = pytest.mark.criterion(2, "census row 7: P, SP, IO, GP and flag-gated IP, GPI")


@C2
def test_census_row_seven(capsys):
    table = run_census(capsys, ["census", "--max-n", "7", "--extended", "--jobs", "2"])
    assert tuple(table[7, c] for c in COLUMNS) == TABLE[7]


# -- 3 -------------------------------------------------------------------------------

C3 = pytest.mark.criterion(3, "forbidden mining at 6, 7, 8 and GP(7) = P(7) - 142")


def keys_of(items):
    return sorted(canonical_form(P) for P in items)


@C3
def test_mining_six_seven_eight():
    six = minimal_forbidden(6)
    assert keys_of(six) == keys_of(fixture(n) for n in SIX)
    assert keys_of(minimal_forbidden(7)) == keys_of(six)
    eight = minimal_forbidden(8)
    assert len(eight) == 6
    assert keys_of(eight) == keys_of([fixture(n) for n in SIX] + [fixture("F8")])


@C3
def test_seven_point_non_gp_explained():
    bad = [P for P in posets(7) if not is_gp(P)]
    assert len(bad) == 142 == TABLE[7][0] - TABLE[7][3]
    small = [fx for fx in known_forbidden() if fx.n_points == 6]
    assert all(explaining_fixture(P, small) is not None for P in bad)


# -- 4 -------------------------------------------------------------------------------

C4 = pytest.mark.criterion(4, "all 11 fixtures are non-gp and every point deletion is gp")


@C4
@pytest.mark.parametrize("fx", known_forbidden(), ids=lambda fx: fx.name)
def test_fixture_minimality(fx):
    P = fx.poset
    assert not is_gp(P)
    for x in range(P.n):
        assert is_gp(delete_point(P, x)), (fx.name, x)


# -- 5 -------------------------------------------------------------------------------

C5 = pytest.mark.criterion(5, "algebraic laws, exhaustive at the stated sizes")


@C5
def test_unit_and_associativity_laws():
    items = iposets_upto(3)
    doms = by_dom(items)
    for P in items:
        assert glue(P, identity(P.cod)) == P
        assert isomorphic(glue(identity(P.dom), P), P)
        assert par(P, EMPTY) == P == par(EMPTY, P)
        for Q in doms.get(P.cod, ()):
            for R in doms.get(Q.cod, ()):
                assert isomorphic(glue(glue(P, Q), R), glue(P, glue(Q, R)))
    for P, Q in product(items, repeat=2):
        PQ = par(P, Q)
        for R in items:
            assert par(PQ, R) == par(P, par(Q, R))


@C5
def test_lax_interchange_all_quadruples():
    items = iposets_upto(2)
    doms = by_dom(items)
    seen = set()
    for P, P2 in product(items, repeat=2):
        for Q in doms.get(P.cod, ()):
            for Q2 in doms.get(P2.cod, ()):
                seen.add(verify_lax_interchange(P, P2, Q, Q2))
    assert seen == {LaxOutcome.ISO_HOLDS, LaxOutcome.STRICT_SUBSUMPTION}


@C5
def test_singleton_interchange():
    items = iposets_upto(3)
    doms = by_dom(items)
    for i, j in product((False, True), repeat=2):
        left_s, right_s = singleton(i, True), singleton(True, j)
        for P in items:
            for Q in doms.get(P.cod, ()):
                assert verify_lax_interchange(left_s, P, right_s, Q) is LaxOutcome.ISO_HOLDS
                assert verify_lax_interchange(P, left_s, Q, right_s) is LaxOutcome.ISO_HOLDS


@C5
def test_symmetry_commutation():
    items = iposets_upto(3)
    for P1, P2 in product(items, repeat=2):
        sigma, tau = commute_symmetries(P1, P2)
        assert isomorphic(glue(sigma, glue(par(P2, P1), tau)), par(P1, P2))


@C5
def test_commutativity_characterisation():
    connected = [P for P in iposets_upto(3) if P.n and len(connected_components(P)) == 1]
    for P1, P2 in product(connected, repeat=2):
        if isomorphic(P1, P2):
            continue
        predicted = (P1.dom == 0 or P2.dom == 0) and (P1.cod == 0 or P2.cod == 0)
        assert isomorphic(par(P1, P2), par(P2, P1)) == predicted


@C5
def test_subsumption_antisymmetry():
    groups = {}
    for P in iposets_upto(4):
        groups.setdefault((P.n, P.dom, P.cod), []).append(P)
    for group in groups.values():
        for P, Q in product(group, repeat=2):
            if P is not Q and subsumes(P, Q) is not None and subsumes(Q, P) is not None:
                assert canonical_form(P) == canonical_form(Q)


# -- 6 -------------------------------------------------------------------------------

C6 = pytest.mark.criterion(6, "class-equivalence oracles")


@C6
def test_interval_order_three_routes():
    tt = canonical_form(TWO_PLUS_TWO)
    for P in posets_upto(6):
        try:
            by_rep = representation_is_valid(P, interval_representation(P))
        except NotIntervalOrder:
            by_rep = False
        assert is_interval_order(P) == (not has_induced(P, tt, 4)) == by_rep


@C6
def test_sp_two_routes():
    n_key = canonical_form(make_iposet(4, [(0, 2), (1, 2), (1, 3)]))
    for P in posets_upto(6):
        assert is_sp(P) == (not has_induced(P, n_key, 4))


@C6
def test_first_gp_level_is_consistent_interval():
    levels = hierarchy_levels(GENERATORS, 1, 4)
    for P in iposets_upto(4):
        assert (canonical_form(P) in levels[1]) == (is_interface_consistent(P) and is_interval_order(P))


@C6
def test_first_sp_level_is_step_sequences():
    levels = hierarchy_levels([EMPTY, POINT], 1, 5)
    for P in posets_upto(5):
        assert (canonical_form(P) in levels[1]) == is_step_sequence(P)


@C6
def test_gp_closure_to_six_is_consistent():
    keys = generate_gp_closure(6)
    sizes = [0] * 7
    for key in keys:
        assert is_interface_consistent(from_key(key))
        sizes[key[0]] += 1
    assert sizes == [TABLE[n][5] for n in range(7)]


@C6
def test_gp_closed_under_deletion():
    for P in posets_upto(6):
        if is_gp(P):
            assert all(is_gp(delete_point(P, x)) for x in range(P.n))


# -- 7 -------------------------------------------------------------------------------

C7 = pytest.mark.criterion(7, "gp closure equals is_gp filter on at most 5 points")


@C7
def test_closure_equals_filter():
    closed = generate_gp_closure(5)
    filtered = {canonical_form(P) for P in iposets_upto(5) if is_gp(P)}
    assert closed == filtered


# -- 8 -------------------------------------------------------------------------------

C8 = pytest.mark.criterion(8, "named counterexamples")


@C8
def test_levi_counterexample():
    P = make_iposet(3, [(0, 1)], [], [2])
    U = make_iposet(3, [(0, 1)], [], [1])
    V = make_iposet(2, [(0, 1)], [0], [])
    assert isomorphic(glue(P, V), glue(U, V))
    assert find_refinement(P, V, U, V) is None


@C8
def test_interchange_strictness():
    assert verify_lax_interchange(POINT, POINT, POINT, POINT) is LaxOutcome.STRICT_SUBSUMPTION


@C8
def test_swapped_two_plus_two():
    assert is_interface_consistent(SWAPPED_2_2)
    assert not is_gp(SWAPPED_2_2)


@C8
def test_second_witness():
    P2 = build_witness(2)
    assert gp_level(P2) == 2
    assert not is_interval_order(P2)
    assert is_sp(P2)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
