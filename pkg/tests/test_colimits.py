"""Colimit engine: the three-stage recipe, subcategory reflections, universal property."""

import random

import pytest

from poscat import (
    Cocone,
    ColimitError,
    FinPoset,
    MonotoneMap,
    PosetDiagram,
    SubcategoryError,
    colimit_delta,
    colimit_pos,
    colimit_tos,
    face,
    find_isomorphism,
    make_poset,
    ordinal_poset,
    verify_universal,
)
from poscat.delta import delta_to_monotone

from helpers import random_diagram, two_antichain, v_poset


def glue_pushout():
    """[1] <-d1- [0] -d0-> [1]: the endpoint of one arrow meets the start of the other."""
    return PosetDiagram(
        nodes={"A": ordinal_poset(0), "B": ordinal_poset(1), "C": ordinal_poset(1)},
        edges=[
            ("f", "A", "B", delta_to_monotone(face(1, 1))),
            ("g", "A", "C", delta_to_monotone(face(1, 0))),
        ],
    )


def coequalizer_loop():
    """d0, d1 : [0] => [1]; the resulting cycle 0 <= 1 <= 0 collapses."""
    return PosetDiagram(
        nodes={"A": ordinal_poset(0), "B": ordinal_poset(1)},
        edges=[
            ("f", "A", "B", delta_to_monotone(face(1, 1))),
            ("g", "A", "B", delta_to_monotone(face(1, 0))),
        ],
    )


def two_points():
    return PosetDiagram(nodes={"A": ordinal_poset(0), "B": ordinal_poset(0)}, edges=[])


def test_pushout_gives_three_chain():
    cocone = colimit_pos(glue_pushout())
    assert cocone.commutes()
    assert cocone.apex.n == 3 and cocone.apex.is_total
    assert find_isomorphism(cocone.apex, ordinal_poset(2)) is not None


def test_coequalizer_collapses_to_point():
    cocone = colimit_pos(coequalizer_loop())
    assert cocone.apex.n == 1


def test_scc_collapse_across_distinct_classes():
    # two chains glued head-to-tail both ways force a genuine cycle of classes
    a = two_antichain()
    b = ordinal_poset(1)
    c = ordinal_poset(1)
    diagram = PosetDiagram(
        nodes={"A": a, "B": b, "C": c},
        edges=[
            ("f", "A", "B", MonotoneMap(a, b, ("0", "1"))),
            ("g", "A", "C", MonotoneMap(a, c, ("1", "0"))),
        ],
    )
    cocone = colimit_pos(diagram)
    assert cocone.apex.n == 1


def test_single_node_diagram_is_identity():
    p = v_poset()
    diagram = PosetDiagram(nodes={"P": p}, edges=[])
    cocone = colimit_pos(diagram)
    assert find_isomorphism(cocone.apex, p) is not None
    leg = cocone.legs["P"]
    assert leg.is_order_isomorphism()


def test_empty_diagram_gives_empty_poset():
    cocone = colimit_pos(PosetDiagram(nodes={}, edges=[]))
    assert cocone.apex.n == 0


def test_legs_jointly_epic_and_monotone():
    rng = random.Random(5)
    for _ in range(20):
        diagram = random_diagram(rng)
        cocone = colimit_pos(diagram)
        assert cocone.commutes()
        hit = set()
        for leg in cocone.legs.values():
            hit.update(leg.values)
        assert hit == set(cocone.apex.elements)


def test_colimit_delta_examples():
    assert colimit_delta(two_points()) is None
    cocone = colimit_delta(glue_pushout())
    assert cocone is not None and cocone.apex.n == 3
    bad = PosetDiagram(nodes={"V": v_poset()}, edges=[])
    with pytest.raises(SubcategoryError):
        colimit_delta(bad)
    empty_node = PosetDiagram(nodes={"E": make_poset([], [])}, edges=[])
    with pytest.raises(SubcategoryError):
        colimit_delta(empty_node)


def test_colimit_delta_agrees_with_pos_when_it_exists():
    rng = random.Random(23)
    seen = 0
    while seen < 10:
        diagram = random_diagram(rng, max_nodes=3, max_elems=3)
        if not all(p.is_total and p.n > 0 for p in diagram.nodes.values()):
            continue
        seen += 1
        pos = colimit_pos(diagram)
        delta = colimit_delta(diagram)
        if delta is not None:
            assert delta.apex == pos.apex
            assert delta.legs == pos.legs


def test_colimit_tos_examples():
    assert colimit_tos(two_points()) is None
    single = PosetDiagram(nodes={"T": ordinal_poset(2)}, edges=[])
    cocone = colimit_tos(single)
    assert cocone is not None and cocone.apex.n == 3
    assert colimit_tos(coequalizer_loop()).apex.n == 1
    empty_ok = PosetDiagram(nodes={"E": make_poset([], [])}, edges=[])
    assert colimit_tos(empty_ok) is not None  # the empty order is total


def test_verify_universal_fixture_diagrams():
    for diagram in (glue_pushout(), coequalizer_loop(), two_points()):
        cocone = colimit_pos(diagram)
        report = verify_universal(diagram, cocone, 4)
        assert report.passed, report.witness
        assert report.cocones_checked > 0


def test_verify_universal_rejects_extra_isolated_element():
    diagram = glue_pushout()
    cocone = colimit_pos(diagram)
    apex = FinPoset(
        cocone.apex.elements + ("stray",),
        tuple(cocone.apex.up_rows) + (1 << cocone.apex.n,),
    )
    legs = {
        nid: MonotoneMap(leg.source, apex, leg.values) for nid, leg in cocone.legs.items()
    }
    report = verify_universal(diagram, Cocone(diagram, apex, legs), 3)
    assert not report.passed


def test_verify_universal_rejects_wrong_quotient():
    # candidate glues nothing: the two-point diagram with a 2-chain apex fails
    diagram = two_points()
    apex = ordinal_poset(1)
    legs = {
        "A": MonotoneMap(diagram.nodes["A"], apex, ("0",)),
        "B": MonotoneMap(diagram.nodes["B"], apex, ("1",)),
    }
    report = verify_universal(diagram, Cocone(diagram, apex, legs), 3)
    assert not report.passed
    assert report.witness


def test_verify_universal_noncommuting_candidate():
    diagram = coequalizer_loop()
    apex = ordinal_poset(1)
    legs = {
        "A": MonotoneMap(diagram.nodes["A"], apex, ("0",)),
        "B": MonotoneMap.identity(ordinal_poset(1)),
    }
    with pytest.raises(ColimitError):
        verify_universal(diagram, Cocone(diagram, apex, legs), 2)


def test_verify_universal_empty_diagram():
    diagram = PosetDiagram(nodes={}, edges=[])
    cocone = colimit_pos(diagram)
    report = verify_universal(diagram, cocone, 3)
    assert report.passed
    bad = Cocone(diagram, ordinal_poset(0), {})
    report = verify_universal(diagram, bad, 3)
    assert not report.passed  # a one-point apex is not initial


def test_condensation_idempotent_on_posets():
    # a diagram that is already a poset with no gluing comes back unchanged
    p = v_poset()
    cocone = colimit_pos(PosetDiagram(nodes={"P": p}, edges=[]))
    again = colimit_pos(PosetDiagram(nodes={"Q": cocone.apex}, edges=[]))
    assert find_isomorphism(again.apex, p) is not None


def test_random_diagrams_verify_small_bound():
    rng = random.Random(71)
    for _ in range(8):
        diagram = random_diagram(rng, max_nodes=3, max_elems=3)
        cocone = colimit_pos(diagram)
        report = verify_universal(diagram, cocone, 4)
        assert report.passed, report.witness


def brute_force_universal(diagram, candidate, bound):
    """Independent oracle: materialize every cocone as a tuple of monotone legs
    and count mediating maps by filtering all monotone maps out of the apex."""
    import itertools

    from poscat import monotone_maps
    from poscat.corpus import all_posets

    node_ids = diagram.node_ids
    for target in all_posets(bound):
        choices = [monotone_maps(diagram.nodes[nid], target) for nid in node_ids]
        mediators = monotone_maps(candidate.apex, target)
        for legs in itertools.product(*choices):
            legs = dict(zip(node_ids, legs))
            if any(legs[d].compose(f) != legs[s] for _, s, d, f in diagram.edges):
                continue
            count = sum(
                1
                for u in mediators
                if all(u.compose(candidate.legs[nid]) == legs[nid] for nid in node_ids)
            )
            if count != 1:
                return False
    return True


def test_verify_universal_matches_brute_force():
    rng = random.Random(99)
    checked_fail = 0
    for _ in range(12):
        diagram = random_diagram(rng, max_nodes=2, max_elems=3)
        cocone = colimit_pos(diagram)
        report = verify_universal(diagram, cocone, 3)
        assert report.passed == brute_force_universal(diagram, cocone, 3)

        # also compare on a deliberately wrong candidate: collapse the apex
        if cocone.apex.n >= 2:
            point = FinPoset(("z",), (1,))
            legs = {
                nid: MonotoneMap(leg.source, point, ("z",) * leg.source.n)
                for nid, leg in cocone.legs.items()
            }
            bad = Cocone(diagram, point, legs)
            got = verify_universal(diagram, bad, 3).passed
            assert got == brute_force_universal(diagram, bad, 3)
            assert not got
            checked_fail += 1
    assert checked_fail > 0
