"""Mirror-symmetry checks between the orbifold A-side and the flat B-side.

Builds the named cases (the one- and two-variable chains with their
maximal or exponential-grading symmetry groups and the three exceptional
one-group cases), verifies the Frobenius-ring isomorphism with the mirror
Milnor ring, and compares genus-zero potentials against the closed-form
flat-coordinate potentials up to a primitive-form rescale.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg import Poly
from .singular import (GroupElement, check_nondegenerate,
                       exponential_grading_element, max_diagonal_group,
                       subgroup_from_generators)
from .statespace import BasisClass, StateSpace
from .milnor import MilnorRing
from .correlator import (FrobeniusAlgebra, GeneratorWords,
                         genus_zero_potential, solve_ramond_three_point,
                         witten_degree_lookup)
from .saito import (SaitoError, UnknownFamily, bmodel_potential,
                    label_sort_key, sort_labels)

F = Fraction


class MirrorError(SaitoError):
    pass


class RelationFails(MirrorError):
    pass


class DimensionMismatch(MirrorError):
    pass


class NonUniformPairingRatio(MirrorError):
    pass


class CubicMismatch(MirrorError):
    pass


class QuarticNotProportional(MirrorError):
    pass


PRESETS = ("A", "D", "DT", "Dodd", "E6", "E7", "E8")


class MirrorCase:
    """One A-side/B-side pair ready for ring and potential comparison."""

    def __init__(self, name, n, H, algebra, words, ramond_table, a_labels,
                 bfamily, bn, reference_lambda, mirror_ring, mirror_gens,
                 gauge):
        self.name = name
        self.n = n
        self.H = H
        self.algebra = algebra
        self.words = words
        self.ramond_table = ramond_table
        self.a_labels = a_labels
        self.bfamily = bfamily
        self.bn = bn
        self.reference_lambda = reference_lambda
        self.mirror_ring = mirror_ring
        self.mirror_gens = mirror_gens
        self.gauge = gauge


def _mono(variables, exps, coeff=1):
    return Poly.monomial(variables, exps, F(coeff))


def _power_poly(variables, name, e):
    exps = tuple(e if v == name else 0 for v in variables)
    return _mono(variables, exps)


def _scaled_table(table, gauge):
    return {k: v * gauge for k, v in table.items()}


def build_case(preset, n=None, gauge=1):
    gauge = F(gauge)
    if gauge * gauge != 1:
        raise MirrorError("gauge must be +1 or -1")
    if preset == "A":
        if n is None or n < 2:
            raise UnknownFamily("A requires n >= 2")
        W = _power_poly(("x",), "x", n + 1)
        return _chain_case_a(W, n, gauge)
    if preset == "D":
        if n is None or n < 3:
            raise UnknownFamily("D requires n >= 3")
        return _case_d_max(n, gauge)
    if preset == "DT":
        if n is None or n < 3:
            raise UnknownFamily("DT requires n >= 3")
        return _case_d_transpose(n, gauge)
    if preset == "Dodd":
        if n is None or n < 5 or n % 2 == 0:
            raise UnknownFamily("Dodd requires odd n >= 5")
        return _case_d_odd(n, gauge)
    if preset in ("E6", "E7", "E8"):
        return _case_exceptional(preset, gauge)
    raise UnknownFamily(preset)


def _e_class(G, k):
    return BasisClass(G.J ** k, None)


def _chain_case_a(W, n, gauge):
    s = check_nondegenerate(W)
    G = max_diagonal_group(s)
    H = StateSpace(s, G)
    algebra = FrobeniusAlgebra(H)
    X = {_e_class(G, 2): F(1)}
    words = GeneratorWords(algebra, [("X", X)],
                           [(i,) for i in range(n)])
    mirror = MilnorRing(s)
    gens = [Poly.variable(s.variables, "x")]
    return MirrorCase("A", n, H, algebra, words, {}, list(range(n)),
                      "A", n, F(-1), mirror, gens, gauge)


def _case_d_max(n, gauge):
    W = (_mono(("x", "y"), (n, 0)) + _mono(("x", "y"), (1, 2)))
    s = check_nondegenerate(W)
    G = max_diagonal_group(s)
    H = StateSpace(s, G)
    lam = GroupElement((F(1, n), F(2 * n - 1, 2 * n)))
    if lam not in G:
        raise MirrorError("expected group generator missing")
    identity = lam ** 0
    deg = witten_degree_lookup(s)
    table = {}
    for a in range(1, n - 1):
        b = n - 1 - a
        if a > b:
            break
        tails = (BasisClass(lam ** (n + 1 + a), None),
                 BasisClass(lam ** (n + 1 + b), None))
        table.update(solve_ramond_three_point(H, deg, tails, identity))
    table = _scaled_table(table, gauge)
    algebra = FrobeniusAlgebra(H, table)
    X = {BasisClass(lam ** (n + 2), None): F(1)}
    words = GeneratorWords(algebra, [("X", X)],
                           [(i,) for i in range(2 * n - 1)])
    mirror_W = (_mono(("x", "y"), (n, 1)) + _mono(("x", "y"), (0, 2)))
    mirror = MilnorRing(check_nondegenerate(mirror_W))
    gens = [Poly.variable(("x", "y"), "x")]
    return MirrorCase("D", n, H, algebra, words, table,
                      list(range(2 * n - 1)), "A", 2 * n - 1,
                      F(-n, 4 * n - 5), mirror, gens, gauge)


def _case_d_transpose(n, gauge):
    W = (_mono(("x", "y"), (n, 1)) + _mono(("x", "y"), (0, 2)))
    s = check_nondegenerate(W)
    G = max_diagonal_group(s)
    H = StateSpace(s, G)
    algebra = FrobeniusAlgebra(H)
    identity = G.J ** 0
    X = {_e_class(G, 3): F(1)}
    Y = {BasisClass(identity, (n - 1, 0)): F(n) * gauge}
    words = GeneratorWords(
        algebra, [("X", X), ("Y", Y)],
        [(i, 0) for i in range(n)] + [(0, 1)])
    mirror_W = (_mono(("x", "y"), (n, 0)) + _mono(("x", "y"), (1, 2)))
    mirror = MilnorRing(check_nondegenerate(mirror_W))
    gens = [Poly.variable(("x", "y"), "x"),
            Poly.variable(("x", "y"), "y") * (F(1) * gauge)]
    return MirrorCase("DT", n, H, algebra, words, {},
                      list(range(n)) + ["01"], "D", n, F(1),
                      mirror, gens, gauge)


def _case_d_odd(n, gauge):
    W = (_mono(("x", "y"), (n, 0)) + _mono(("x", "y"), (1, 2)))
    s = check_nondegenerate(W)
    G_W = max_diagonal_group(s)
    G = subgroup_from_generators(G_W, [exponential_grading_element(s)])
    H = StateSpace(s, G)
    identity = G.J ** 0
    deg = witten_degree_lookup(s)
    table = {}
    # only the odd-power sectors pair to the middle degree; even pairs
    # fail the dimension rule and carry no composition channel
    for i in range(1, (n - 1) // 4 + 1):
        j = (n - 1) // 2 - i
        tails = (_e_class(G, 2 * i + 1), _e_class(G, 2 * j + 1))
        sector = [bb for bb in H.basis
                  if bb.gamma == identity and bb.mono is not None]
        gvec = [gauge if bb.mono == (0, 1) else F(0) for bb in sector]
        table.update(solve_ramond_three_point(H, deg, tails, identity,
                                              gauge=gvec))
    algebra = FrobeniusAlgebra(H, table)
    X = {_e_class(G, 3): F(1)}
    Y = {BasisClass(identity, ((n - 1) // 2, 0)): F(2 * n) * gauge}
    words = GeneratorWords(
        algebra, [("X", X), ("Y", Y)],
        [(i, 0) for i in range(n)] + [(0, 1)])
    mirror = MilnorRing(s)
    gens = [Poly.variable(("x", "y"), "x"),
            Poly.variable(("x", "y"), "y") * (F(1) * gauge)]
    return MirrorCase("Dodd", n, H, algebra, words, table,
                      list(range(n)) + ["01"], "D", n, F(-1),
                      mirror, gens, gauge)


_EXC = {
    # name: (exponents of W, generator sector powers (X, Y), word
    # exponent tuples, flat-coordinate labels in word order)
    "E7": (((3, 0), (1, 3)), (7, 5),
           [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (2, 1)],
           [9, 6, 7, 3, 4, 5, 1]),
    "E6": (((3, 0), (0, 4)), (5, 10),
           [(0, 0), (1, 0), (0, 1), (0, 2), (1, 1), (1, 2)],
           [12, 8, 9, 6, 5, 2]),
    "E8": (((3, 0), (0, 5)), (11, 7),
           [(0, 0), (1, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3)],
           [15, 10, 12, 9, 6, 7, 4, 1]),
}


def _case_exceptional(name, gauge):
    exps, (kx, ky), word_exps, labels = _EXC[name]
    W = _mono(("x", "y"), exps[0]) + _mono(("x", "y"), exps[1])
    s = check_nondegenerate(W)
    G = max_diagonal_group(s)
    H = StateSpace(s, G)
    table = {}
    if name == "E7":
        deg = witten_degree_lookup(s)
        tails = (_e_class(G, 5), _e_class(G, 5))
        table = _scaled_table(
            solve_ramond_three_point(H, deg, tails, G.J ** 0), gauge)
    algebra = FrobeniusAlgebra(H, table)
    X = {_e_class(G, kx): F(1)}
    Y = {_e_class(G, ky): F(1)}
    words = GeneratorWords(algebra, [("X", X), ("Y", Y)], word_exps)
    mirror = MilnorRing(s)
    gens = [Poly.variable(("x", "y"), "x"),
            Poly.variable(("x", "y"), "y")]
    return MirrorCase(name, None, H, algebra, words, table, labels,
                      name, None, F(-1), mirror, gens, gauge)


# -- ring isomorphism ---------------------------------------------------------


def _invert(M):
    k = len(M)
    A = [row[:] + [F(1) if i == j else F(0) for j in range(k)]
         for i, row in enumerate(M)]
    for c in range(k):
        piv = next((r for r in range(c, k) if A[r][c] != 0), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(k):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[k:] for row in A]


def _mirror_images(case):
    """Normal forms of the word monomials inside the mirror Milnor ring."""
    ring = case.mirror_ring
    variables = ring.singularity.variables
    out = []
    for w in case.words.words:
        p = Poly.constant(variables, F(1))
        for gen, e in zip(case.mirror_gens, w):
            for _ in range(e):
                p = ring.multiply_nf(p, gen)
        out.append(p)
    return out


def verify_ring_isomorphism(case):
    """Check the word algebra is the mirror Milnor ring, with uniform
    pairing rescale.  Returns {"dimension", "pairing_ratio"}."""
    ring = case.mirror_ring
    words = case.words
    dim = words.H.dimension
    if dim != ring.singularity.mu:
        raise DimensionMismatch("state space dim %d != mirror Milnor %d"
                                % (dim, ring.singularity.mu))
    images = _mirror_images(case)
    M = [ring.coordinates(p) for p in images]
    if _invert(M) is None:
        raise RelationFails("word images do not span the mirror ring")
    for i in range(dim):
        for j in range(i, dim):
            want = ring.coordinates(ring.multiply_nf(images[i], images[j]))
            pc = words.word_product_coords(i, j)
            got = [sum(pc[k] * M[k][c] for k in range(dim))
                   for c in range(dim)]
            if got != want:
                raise RelationFails(
                    "product %s * %s violates the mirror relation"
                    % (words.labels[i], words.labels[j]))
    ratio = None
    for i in range(dim):
        for j in range(dim):
            a = words.eta_w[i][j]
            b = ring.residue_pairing(images[i], images[j])
            if a == 0 and b == 0:
                continue
            if a == 0 or b == 0:
                raise NonUniformPairingRatio(
                    "pairing support differs at (%s, %s)"
                    % (words.labels[i], words.labels[j]))
            r = a / b
            if ratio is None:
                ratio = r
            elif r != ratio:
                raise NonUniformPairingRatio(
                    "pairing ratio %s != %s at (%s, %s)"
                    % (r, ratio, words.labels[i], words.labels[j]))
    return {"dimension": dim, "pairing_ratio": ratio}


# -- potential comparison -----------------------------------------------------


def a_model_potential(case, rng=None, max_points=4):
    """Genus-zero potential keyed by sorted flat-coordinate label tuples."""
    pot, _ = genus_zero_potential(case.words, max_points=max_points,
                                  ramond_table=case.ramond_table, rng=rng)
    out = {}
    for exps, coeff in pot.items():
        key = []
        for i, e in enumerate(exps):
            key.extend([case.a_labels[i]] * e)
        out[sort_labels(key)] = coeff
    return out


def match_potentials(case, rng=None):
    """Compare A- and B-side potentials up to the primitive-form rescale.

    The cubic parts must agree after one overall scale c; the quartic
    parts must then be proportional with a single factor lambda, measured
    over the quartic monomials the B-side tables provide.  Returns the
    measured scale and lambda together with the predicted lambda.
    """
    A = a_model_potential(case, rng)
    B = bmodel_potential(case.bfamily, case.bn)
    exceptional = case.bfamily in ("E6", "E7", "E8")
    cubA = {k: v for k, v in A.items() if len(k) == 3}
    cubB = {k: v for k, v in B.items() if len(k) == 3}
    if set(cubA) != set(cubB):
        raise CubicMismatch("cubic supports differ at %s"
                            % (sorted(set(cubA) ^ set(cubB), key=str),))
    scale = None
    for k, vb in cubB.items():
        r = cubA[k] / vb
        if scale is None:
            scale = r
        elif r != scale:
            raise CubicMismatch("cubic ratio %s != %s at %s" % (r, scale, k))
    quartB = {k: v * scale for k, v in B.items() if len(k) == 4}
    quartA = {k: v for k, v in A.items() if len(k) == 4}
    if not exceptional and set(quartA) != set(quartB):
        raise QuarticNotProportional(
            "quartic supports differ: %s"
            % (sorted(set(quartA) ^ set(quartB), key=str),))
    lam = None
    for k, vb in quartB.items():
        va = quartA.get(k)
        if va is None:
            raise QuarticNotProportional("missing quartic monomial %s"
                                         % (k,))
        r = va / vb
        if lam is None:
            lam = r
        elif r != lam:
            raise QuarticNotProportional("quartic ratio %s != %s at %s"
                                         % (r, lam, k))
    return {"scale": scale, "lambda": lam,
            "reference_lambda": case.reference_lambda,
            "lambda_matches": lam == case.reference_lambda}
