"""Three- and four-point evaluation, the star product, and reconstruction."""

import itertools
from fractions import Fraction

import pytest

from qsing.correlator import (FrobeniusAlgebra, MissingBasic, Unevaluable,
                              WDVVReconstructor, four_point_ogrr,
                              solve_ramond_three_point, three_point,
                              wdvv_reconstruct)
from qsing.exactalg import parse_polynomial
from qsing.mirror import build_case
from qsing.singular import (check_nondegenerate, exponential_grading_element,
                            max_diagonal_group, subgroup_from_generators)
from qsing.statespace import BasisClass, StateSpace


def narrow(H, gamma):
    return BasisClass(gamma, None)


def loop_cubic_space():
    s = check_nondegenerate(parse_polynomial("x^3 + x*y^3", ("x", "y")))
    G = max_diagonal_group(s)
    return StateSpace(s, G), exponential_grading_element(s)


def test_three_point_selection_zero():
    H, J = loop_cubic_space()
    assert three_point(H, narrow(H, J ** 2), narrow(H, J ** 2),
                       narrow(H, J ** 2)) == 0


def test_three_point_unit_is_pairing():
    H, J = loop_cubic_space()
    a = narrow(H, J ** 2)
    b = narrow(H, J ** 8)
    assert three_point(H, H.unit, a, b) == H.pair(a, b)


def test_three_point_concave_is_one():
    H, J = loop_cubic_space()
    assert three_point(H, narrow(H, J ** 5), narrow(H, J ** 7),
                       narrow(H, J ** 7)) == 1


def test_three_point_unevaluable_without_table():
    s = check_nondegenerate(parse_polynomial("x^5 + x*y^2", ("x", "y")))
    G_W = max_diagonal_group(s)
    G = subgroup_from_generators(G_W, [G_W.J])
    H = StateSpace(s, G)
    J = G.J
    broad = [b for b in H.basis if b.mono is not None]
    with pytest.raises(Unevaluable):
        three_point(H, narrow(H, J ** 3), narrow(H, J ** 3), broad[0])


def test_ramond_composition_solver_one_dimensional():
    case = build_case("DT", 4)
    H = case.words.H
    # the composition channel determines the square of the Ramond value;
    # a +1 boundary with a one-dimensional sector yields the + root
    node = next(b.gamma for b in H.basis if b.mono is not None)
    tails = [b for b in H.basis if b.mono is None][:2]
    idx = H.index(next(b for b in H.basis if b.mono is not None))
    eta_entry = H.eta_inv[idx][idx]
    table = solve_ramond_three_point(H, eta_entry * Fraction(9), tails, node)
    (value,) = table.values()
    assert value == 3


def test_four_point_ogrr_loop_cubic_values():
    # the three concave basics of the loop cubic x^3 + x*y^3 with <J>
    H, J = loop_cubic_space()
    e = lambda k: narrow(H, J ** k)
    assert four_point_ogrr(H, [e(2), e(4), e(7), e(7)]) == Fraction(1, 9)
    assert four_point_ogrr(H, [e(4), e(4), e(5), e(7)]) == Fraction(-1, 9)
    assert four_point_ogrr(H, [e(2), e(2), e(2), e(5)]) == Fraction(1, 3)


def test_four_point_ogrr_basics_match_reference():
    # D-family basics: maximal group 1/n, <J> chain 1/n
    from qsing.moduli import CorrelatorFrame, classify_concavity
    for n in (3, 5, 8):
        case = build_case("D", n)
        H = case.words.H
        lam = next(g for g in H.G
                   if g.theta[1] == Fraction(2 * n - 1, 2 * n))
        e = lambda k: narrow(H, lam ** k)
        ins = [e(n + 2), e(n + 2), e(n - 1), e(n - 1)]
        assert four_point_ogrr(H, ins) == Fraction(1, n)
    for n in (5, 7):
        case = build_case("Dodd", n)
        H = case.words.H
        J = H.G.J
        e = lambda k: narrow(H, J ** k)
        ins = [e(3), e(3), e(n - 1), e(n - 3)]
        assert four_point_ogrr(H, ins) == Fraction(1, n)


def test_star_product_powers_d_odd():
    # e3^l = e_{2l+1} below the middle, -2 e_{2l-n+1} above it
    for n in (5, 7):
        case = build_case("Dodd", n)
        alg = case.algebra
        H = alg.H
        J = H.G.J
        e3 = {narrow(H, J ** 3): Fraction(1)}
        power = dict(e3)
        for l in range(2, n):
            power = alg.product(power, e3)
            nz = {b: c for b, c in power.items() if c}
            if l < (n - 1) // 2:
                assert nz == {narrow(H, J ** (2 * l + 1)): Fraction(1)}
            elif l >= (n + 1) // 2:
                assert nz == {narrow(H, J ** (2 * l - n + 1)): Fraction(-2)}
            else:
                # the middle power lands in the broad sector
                (b, c), = nz.items()
                assert b.mono is not None and c in (2, -2)


def test_wdvv_reconstruction_matches_direct():
    # keys with a directly evaluable frame must agree with reconstruction
    case = build_case("A", 5)
    words = case.words
    rec = WDVVReconstructor(words, ramond_table=case.ramond_table)
    n = len(words.words)
    for combo in itertools.combinations_with_replacement(range(n), 4):
        if sum(words.degrees[i] for i in combo) != 2 * words.H.c_hat + 2:
            continue
        direct = rec._direct(combo)
        if direct is None:
            continue
        value = wdvv_reconstruct(words, combo,
                                 ramond_table=case.ramond_table)
        assert value == direct


def test_wdvv_reconstruction_non_concave_chain():
    # the frame with a sections-carrying boundary side is reached only
    # through the exchange identity
    case = build_case("Dodd", 7)
    words = case.words
    labels = words.labels
    key = tuple(labels.index(l) for l in ("X^2", "X^2", "X^4", "X^5"))
    value = wdvv_reconstruct(words, key, ramond_table=case.ramond_table)
    assert value == Fraction(12, 7)


def test_reconstruction_without_table_still_closes():
    # the exchange identity closes the D-odd quartic system even when
    # the Ramond composition table is withheld
    case = build_case("Dodd", 5)
    words = case.words
    rec = WDVVReconstructor(words, ramond_table={})
    key = tuple(words.labels.index(l) for l in ("X", "X", "X^3", "X^4"))
    assert rec.correlator_or_raise(key) == Fraction(4, 5)
