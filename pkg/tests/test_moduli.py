"""Selection rules, bundle degrees, and the concavity classifier."""

from fractions import Fraction

import pytest

from qsing.exactalg import parse_polynomial
from qsing.moduli import (CorrelatorFrame, ModuliError, boundary_node_decorations,
                          bundle_degrees, classify_concavity, node_element,
                          selection_rule)
from qsing.singular import check_nondegenerate, exponential_grading_element


def sing(text, variables):
    return check_nondegenerate(parse_polynomial(text, variables))


def frame_of_powers(s, powers):
    J = exponential_grading_element(s)
    return CorrelatorFrame(s, 0, [J ** k for k in powers])


def test_selection_rule_integrality():
    s = sing("x^5", ("x",))
    assert selection_rule(frame_of_powers(s, (1, 1, 4)))
    assert not selection_rule(frame_of_powers(s, (1, 1, 3)))


def test_bundle_degrees_three_point():
    s = sing("x^3 + x*y^3", ("x", "y"))
    degs = bundle_degrees(frame_of_powers(s, (1, 1, 8)))
    assert all(d.denominator == 1 for d in degs)


def test_genus_restriction():
    s = sing("x^5", ("x",))
    J = exponential_grading_element(s)
    with pytest.raises(ModuliError):
        CorrelatorFrame(s, 1, [J, J, J])


def test_node_element_closes_selection():
    s = sing("x^7 + x*y^2", ("x", "y"))
    J = exponential_grading_element(s)
    node = node_element(s, J ** 3, J ** 3)
    # the node decoration completes the side to a valid three-point frame
    side = CorrelatorFrame(s, 0, [J ** 3, J ** 3, node])
    assert selection_rule(side)


def test_boundary_decorations_merge_symmetric_channels():
    s = sing("x^6", ("x",))
    frame = frame_of_powers(s, (1, 1, 2, 4))
    channels = boundary_node_decorations(frame)
    assert sum(ch.multiplicity for ch in channels) == 3


def test_classifier_ramond():
    s = sing("x^5 + x*y^2", ("x", "y"))
    J = exponential_grading_element(s)
    identity = J ** 0
    frame = CorrelatorFrame(s, 0, [identity, identity, J])
    assert classify_concavity(frame) == "Ramond"


def test_classifier_concave_chain_basic():
    # the whole D-odd basic family stays concave: its only degree-0
    # boundary side line sits at a node acting trivially on that line
    for n in (5, 7, 9):
        s = sing("x^%d + x*y^2" % n, ("x", "y"))
        frame = frame_of_powers(s, (3, 3, n - 1, n - 3))
        assert bundle_degrees(frame) == (Fraction(-2), Fraction(-1))
        assert classify_concavity(frame) == "Concave"


def test_classifier_rejects_degree_zero_side_at_twisted_node():
    # total degrees (-2,-1), but the channel pairing the two J^5 tails
    # has a degree-0 line at a node acting nontrivially on it; the
    # pushforward has sections there and the frame is not concave
    s = sing("x^7 + x*y^2", ("x", "y"))
    frame = frame_of_powers(s, (5, 5, 2, 4))
    assert bundle_degrees(frame) == (Fraction(-2), Fraction(-1))
    assert classify_concavity(frame) == "Other"


def test_classifier_concave_power_chain():
    import itertools
    for n in (5, 6, 7, 8):
        s = sing("x^%d" % (n + 1), ("x",))
        for powers in itertools.combinations_with_replacement(
                range(1, n), 4):
            if sum(powers) % (n + 1) != 2 % (n + 1):
                continue
            frame = frame_of_powers(s, powers)
            if not selection_rule(frame):
                continue
            assert classify_concavity(frame) == "Concave"


def test_classifier_index_zero():
    # all tails J^5 in the loop cubic: degrees (-2, 0)
    s = sing("x^3 + x*y^3", ("x", "y"))
    frame = frame_of_powers(s, (5, 5, 5, 5))
    assert sorted(bundle_degrees(frame)) == [Fraction(-2), Fraction(0)]
    assert classify_concavity(frame) == "IndexZero"


def test_selection_rule_failure_raises():
    s = sing("x^5", ("x",))
    with pytest.raises(ModuliError):
        classify_concavity(frame_of_powers(s, (1, 1, 3)))
