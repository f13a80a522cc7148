"""Genus-zero primary correlators.

Evaluation cascade for three- and four-point functions (selection rules,
unit axiom, concave orbifold-Grothendieck-Riemann-Roch evaluation, the
index-zero degree registry, composition solving for Ramond three-point
values), a Frobenius algebra on the state space, WDVV reconstruction on a
presentation by primitive generators, and potential assembly.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .moduli import (CorrelatorFrame, boundary_node_decorations,
                     bundle_degrees, classify_concavity, node_element,
                     selection_rule)
from .statespace import BasisClass, StateSpace


class CorrelatorError(ValueError):
    pass


class Unevaluable(CorrelatorError):
    pass


class NotConcave(CorrelatorError):
    pass


class NotInRegistry(CorrelatorError):
    pass


class Underdetermined(CorrelatorError):
    pass


class MissingBasic(CorrelatorError):
    pass


class CorrelatorTable:
    """Memo store: (genus, sorted insertion key) -> (value, provenance)."""

    def __init__(self):
        self._data = {}

    @staticmethod
    def key(genus, insertions):
        return (genus, tuple(sorted(insertions)))

    def put(self, genus, insertions, value, provenance):
        self._data[self.key(genus, insertions)] = (value, provenance)

    def get(self, genus, insertions):
        return self._data.get(self.key(genus, insertions))

    def items(self):
        return self._data.items()


# -- index-zero registry -----------------------------------------------------


def witten_degree_lookup(singularity):
    """Topological degree of the Witten map for registered index-zero shapes.

    Registered: x^a + x*y^b chains with (a, b) = (3, 3), degree -3, and
    b = 2 (any a), degree -2.
    """
    W = singularity.W
    monos = sorted(W.terms)
    if len(W.vars) == 2 and len(monos) == 2:
        shapes = {}
        for m in monos:
            nz = [(i, e) for i, e in enumerate(m) if e]
            if len(nz) == 1:
                shapes["pure"] = nz[0]
            elif len(nz) == 2 and 1 in (e for _, e in nz):
                shapes["mixed"] = nz
        if "pure" in shapes and "mixed" in shapes:
            (i, a) = shapes["pure"]
            mixed = dict(shapes["mixed"])
            if mixed.get(i) == 1:
                j = next(v for v in mixed if v != i)
                b = mixed[j]
                if (a, b) == (3, 3):
                    return -3
                if b == 2:
                    return -2
    raise NotInRegistry("no Witten-map degree registered for %r" % (W,))


# -- oGRR four-point evaluation ----------------------------------------------


def _theta_term(theta):
    return Fraction(1, 12) - theta * (1 - theta) / 2


def four_point_ogrr(H: StateSpace, insertions):
    """Concave genus-zero four-point value from the codimension-one class.

    insertions: four NS BasisClass generators.  The class is expanded on
    kappa_1, the psi_i and the boundary divisors, whose integrals over the
    four-pointed genus-zero moduli all equal 1.
    """
    gammas = [b.gamma for b in insertions]
    frame = CorrelatorFrame(H.singularity, 0, gammas)
    if classify_concavity(frame) != "Concave":
        raise NotConcave("frame is not concave")
    channels = boundary_node_decorations(frame)
    total = Fraction(0)
    for j, q in enumerate(H.singularity.q):
        line = q * q / 2 - q / 2 + Fraction(1, 12)
        for g in gammas:
            line -= _theta_term(g.theta[j])
        for ch in channels:
            line += ch.multiplicity * _theta_term(ch.node_gamma.theta[j])
        total += line
    return total


def ogrr_line_contribution(H, insertions, j):
    """Contribution of a single line j to the concave four-point class."""
    gammas = [b.gamma for b in insertions]
    frame = CorrelatorFrame(H.singularity, 0, gammas)
    channels = boundary_node_decorations(frame)
    q = H.singularity.q[j]
    line = q * q / 2 - q / 2 + Fraction(1, 12)
    for g in gammas:
        line -= _theta_term(g.theta[j])
    for ch in channels:
        line += ch.multiplicity * _theta_term(ch.node_gamma.theta[j])
    return line


# -- three-point evaluation ----------------------------------------------------


def three_point(H: StateSpace, a, b, c, ramond_table=None):
    """Genus-zero three-point correlator of basis classes.

    Cascade: selection rules (0), unit axiom (pairing), concavity (1 on
    canonical NS generators), index-zero registry, Ramond composition
    table; anything else raises Unevaluable rather than silently 0.
    """
    ins = (a, b, c)
    gammas = [x.gamma for x in ins]
    frame = CorrelatorFrame(H.singularity, 0, gammas)
    if not selection_rule(frame):
        return Fraction(0)
    degs = [H.deg_W(x) for x in ins]
    if sum(degs) != 2 * H.c_hat:
        return Fraction(0)
    for i in range(3):
        if ins[i] == H.unit:
            return H.pair(ins[(i + 1) % 3], ins[(i + 2) % 3])
    if all(x.mono is None for x in ins):
        line_degs = bundle_degrees(frame)
        if all(d == -1 for d in line_degs):
            return Fraction(1)
        if sorted(line_degs) == [-2, 0]:
            return Fraction(witten_degree_lookup(H.singularity))
        raise Unevaluable("NS three-point with line degrees %s"
                          % (line_degs,))
    if ramond_table is not None:
        hit = ramond_table.get(frozenset_key(ins))
        if hit is not None:
            return hit
    raise Unevaluable("Ramond three-point %r not in the composition table"
                      % (ins,))


def frozenset_key(classes):
    return tuple(sorted((repr(c) for c in classes)))


def solve_ramond_three_point(H, boundary_value, tails, node_gamma,
                             gauge=None):
    """Solve a composition-law channel for Ramond three-point values.

    The index-zero four-point class restricted to the boundary channel
    with the given tails (A, B) on each side and node sector gamma gives
        boundary_value = sum_{mu,nu} <A,B,mu> etainv^{mu nu} <nu,A,B>.
    With a one-dimensional invariant node sector this determines the value
    up to sign (the + root is returned).  A two-dimensional sector is
    underdetermined; a gauge tuple must be supplied and is checked against
    the quadratic constraint.
    """
    sector_classes = [bb for bb in H.basis
                      if bb.gamma == node_gamma and bb.mono is not None]
    if not sector_classes:
        raise Underdetermined("node sector has no invariants")
    idx = [H.index(bb) for bb in sector_classes]
    etainv = [[H.eta_inv[i][j] for j in idx] for i in idx]
    if len(sector_classes) == 1:
        ratio = Fraction(boundary_value) / etainv[0][0]
        root = _rational_sqrt(ratio)
        if root is None:
            raise Underdetermined("no rational square root for %s" % ratio)
        return {frozenset_key(list(tails) + [sector_classes[0]]): root}
    if gauge is None:
        raise Underdetermined(
            "%d-dimensional node sector; supply a gauge" % len(sector_classes))
    if len(gauge) != len(sector_classes):
        raise Underdetermined("gauge arity mismatch")
    total = Fraction(0)
    for p, gp in enumerate(gauge):
        for q, gq in enumerate(gauge):
            total += Fraction(gp) * Fraction(gq) * etainv[p][q]
    if total != boundary_value:
        raise Underdetermined("gauge violates the composition constraint")
    return {frozenset_key(list(tails) + [sector_classes[p]]): Fraction(gp)
            for p, gp in enumerate(gauge)}


def _rational_sqrt(x):
    if x < 0:
        return None
    num = _isqrt_exact(x.numerator)
    den = _isqrt_exact(x.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _isqrt_exact(n):
    r = int(n ** 0.5)
    for c in (r - 1, r, r + 1, r + 2):
        if c >= 0 and c * c == n:
            return c
    return None


# -- Frobenius algebra -------------------------------------------------------


class FrobeniusAlgebra:
    """Multiplication on the state space built from three-point values."""

    def __init__(self, H: StateSpace, ramond_table=None):
        self.H = H
        self.ramond_table = ramond_table or {}
        n = H.dimension
        self.c3 = {}
        for i in range(n):
            for j in range(i, n):
                for k in range(j, n):
                    v = three_point(H, H.basis[i], H.basis[j], H.basis[k],
                                    self.ramond_table)
                    if v != 0:
                        for key in {(i, j, k)}:
                            self.c3[tuple(sorted(key))] = v

    def three(self, i, j, k):
        return self.c3.get(tuple(sorted((i, j, k))), Fraction(0))

    def product(self, va, vb):
        """Star product of class-vectors {BasisClass: coeff}."""
        H = self.H
        n = H.dimension
        out = [Fraction(0)] * n
        items_a = [(H.index(b), c) for b, c in va.items() if c]
        items_b = [(H.index(b), c) for b, c in vb.items() if c]
        for i, ca in items_a:
            for j, cb in items_b:
                for k in range(n):
                    t = self.three(i, j, k)
                    if t == 0:
                        continue
                    scale = ca * cb * t
                    for m in range(n):
                        e = H.eta_inv[k][m]
                        if e:
                            out[m] += scale * e
        return {H.basis[m]: out[m] for m in range(n) if out[m]}

    def pair_vectors(self, va, vb):
        return self.H.pair_vectors(va, vb)

    def check_associative(self):
        """Exhaustive (a*b)*c == a*(b*c) over the basis."""
        n = self.H.dimension
        vecs = [{self.H.basis[i]: Fraction(1)} for i in range(n)]
        for i in range(n):
            for j in range(i, n):
                ij = self.product(vecs[i], vecs[j])
                for k in range(j, n):
                    jk = self.product(vecs[j], vecs[k])
                    lhs = self.product(ij, vecs[k])
                    rhs = self.product(vecs[i], jk)
                    if lhs != rhs:
                        return False
        return True

    def check_unit(self):
        n = self.H.dimension
        one = {self.H.unit: Fraction(1)}
        for i in range(n):
            v = {self.H.basis[i]: Fraction(1)}
            if self.product(one, v) != v:
                return False
        return True


def frobenius_algebra(H, ramond_table=None):
    alg = FrobeniusAlgebra(H, ramond_table)
    if not alg.check_unit():
        raise CorrelatorError("unit axiom fails")
    if not alg.check_associative():
        raise CorrelatorError("associativity fails")
    return alg


# -- WDVV reconstruction on a generator presentation -------------------------


class GeneratorWords:
    """A spanning set of generator monomials with exact star-product data.

    generators: list of (label, class-vector) pairs, taken as primitive.
    words: list of exponent tuples over the generators whose star products
    form a basis of the state space.
    """

    def __init__(self, algebra: FrobeniusAlgebra, generators, words,
                 labels=None):
        self.algebra = algebra
        self.H = algebra.H
        self.generators = list(generators)
        self.words = [tuple(w) for w in words]
        self.labels = labels or [self._default_label(w) for w in self.words]
        self.vectors = [self._word_vector(w) for w in self.words]
        self._coord_matrix = self._build_coords()
        self.eta_w = [[self.H.pair_vectors(self.vectors[i], self.vectors[j])
                       for j in range(len(words))]
                      for i in range(len(words))]
        self.eta_w_inv = _invert(self.eta_w)
        self.degrees = [self._vector_degree(v) for v in self.vectors]

    def _default_label(self, w):
        parts = []
        for (name, _), e in zip(self.generators, w):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts) if parts else "1"

    def _word_vector(self, w):
        v = {self.H.unit: Fraction(1)}
        for (_, gen_vec), e in zip(self.generators, w):
            for _ in range(e):
                v = self.algebra.product(v, gen_vec)
        return v

    def _vector_degree(self, v):
        degs = {self.H.deg_W(b) for b in v}
        if len(degs) != 1:
            raise CorrelatorError("word vector is not degree-homogeneous")
        return degs.pop()

    def _build_coords(self):
        n = self.H.dimension
        if len(self.words) != n:
            raise CorrelatorError("word count %d != state space dimension %d"
                                  % (len(self.words), n))
        M = [[Fraction(0)] * n for _ in range(n)]
        for j, vec in enumerate(self.vectors):
            for b, c in vec.items():
                M[self.H.index(b)][j] = c
        return _invert(M)

    def word_coordinates(self, vec):
        """Coordinates of a class-vector over the word basis."""
        n = self.H.dimension
        col = [Fraction(0)] * n
        for b, c in vec.items():
            col[self.H.index(b)] = c
        return [sum(self._coord_matrix[i][k] * col[k] for k in range(n))
                for i in range(n)]

    def word_product_coords(self, i, j):
        prod = self.algebra.product(self.vectors[i], self.vectors[j])
        return self.word_coordinates(prod)

    def is_primitive(self, i):
        return sum(self.words[i]) == 1

    def unit_index(self):
        return self.words.index(tuple([0] * len(self.generators)))


def _invert(M):
    n = len(M)
    A = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise CorrelatorError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


class WDVVReconstructor:
    """Evaluates genus-zero correlators of word-basis insertions.

    Direct evaluation (selection rules, concave four-point class) where
    available; otherwise the exchange identity
        <..., a, b, e*f> = S + <..., a, e, b*f> + <..., a*e, b, f>
                             - <..., a*b, e, f>
    with e a primitive generator factor of the last insertion.  At four
    points the boundary exchange term S vanishes identically; at five or
    more points S is the sum of products of shorter correlators over
    splittings of the spectator set, contracted through the dual basis.
    """

    def __init__(self, words: GeneratorWords, ramond_table=None, rng=None):
        self.W = words
        self.H = words.H
        self.algebra = words.algebra
        self.ramond_table = ramond_table or words.algebra.ramond_table
        self.rng = rng
        self.table = CorrelatorTable()
        self._in_progress = set()

    # -- public ---------------------------------------------------------

    def correlator(self, indices):
        """Correlator of word-basis elements given by index tuple."""
        key = tuple(sorted(indices))
        hit = self.table.get(0, key)
        if hit is not None:
            return hit[0]
        if key in self._in_progress:
            return None
        self._in_progress.add(key)
        try:
            value, prov = self._evaluate(key)
        finally:
            self._in_progress.discard(key)
        if value is not None:
            self.table.put(0, key, value, prov)
            return value
        return None

    def correlator_or_raise(self, indices):
        v = self.correlator(indices)
        if v is None:
            raise MissingBasic("cannot reconstruct %s" %
                               ([self.W.labels[i] for i in indices],))
        return v

    # -- evaluation -----------------------------------------------------

    def _evaluate(self, key):
        k = len(key)
        if k < 3:
            return Fraction(0), "degenerate"
        direct = self._direct(key)
        if direct is not None:
            return direct, "direct"
        if k >= 4:
            v = self._reconstruct(key)
            if v is not None:
                return v, "reconstruction"
        return None, None

    def _vec(self, i):
        return self.W.vectors[i]

    def _direct(self, key):
        """Multilinear expansion into basis classes; None if any piece is
        not directly evaluable."""
        k = len(key)
        H = self.H
        if sum(self.W.degrees[i] for i in key) != 2 * H.c_hat + 2 * (k - 3):
            return Fraction(0)
        unit = self.W.unit_index()
        if k >= 4 and unit in key:
            return Fraction(0)
        expansions = []
        for i in key:
            expansions.append([(b, c) for b, c in self._vec(i).items()])
        total = Fraction(0)
        for combo in itertools.product(*expansions):
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            classes = [b for b, _ in combo]
            v = self._direct_basis(classes)
            if v is None:
                return None
            total += coeff * v
        return total

    def _direct_basis(self, classes):
        k = len(classes)
        H = self.H
        if k == 3:
            try:
                return three_point(H, *classes, ramond_table=self.ramond_table)
            except Unevaluable:
                return None
        gammas = [b.gamma for b in classes]
        frame = CorrelatorFrame(H.singularity, 0, gammas)
        if not selection_rule(frame):
            return Fraction(0)
        if sum(H.deg_W(b) for b in classes) != 2 * H.c_hat + 2 * (k - 3):
            return Fraction(0)
        if any(b == H.unit for b in classes):
            return Fraction(0)
        if k == 4 and all(b.mono is None for b in classes):
            if classify_concavity(frame) == "Concave":
                return four_point_ogrr(H, list(classes))
        return None

    def _reconstruct(self, key):
        k = len(key)
        positions = list(range(k))
        candidates = []
        for last_pos in positions:
            if self.W.is_primitive(key[last_pos]) or \
                    key[last_pos] == self.W.unit_index():
                continue
            rest = [p for p in positions if p != last_pos]
            for a_pos, b_pos in itertools.permutations(rest, 2):
                spect = [p for p in rest if p not in (a_pos, b_pos)]
                word = self.W.words[key[last_pos]]
                for g, e in enumerate(word):
                    if e > 0:
                        candidates.append((last_pos, a_pos, b_pos, spect, g))
        if self.rng is not None:
            self.rng.shuffle(candidates)
        for cand in candidates:
            v = self._try_exchange(key, *cand)
            if v is not None:
                return v
        return None

    def _word_index(self, exps):
        try:
            return self.W.words.index(tuple(exps))
        except ValueError:
            return None

    def _try_exchange(self, key, last_pos, a_pos, b_pos, spect, g):
        word = list(self.W.words[key[last_pos]])
        word[g] -= 1
        phi = self._word_index(word)
        if phi is None:
            return None
        eps_exps = [0] * len(word)
        eps_exps[g] = 1
        eps = self._word_index(eps_exps)
        if eps is None:
            return None
        a, b = key[a_pos], key[b_pos]
        spectators = [key[p] for p in spect]

        t1 = self._combo_term(spectators + [a, eps],
                              self.W.word_product_coords(b, phi))
        if t1 is None:
            return None
        t2 = self._combo_term(spectators + [b, phi],
                              self.W.word_product_coords(a, eps))
        if t2 is None:
            return None
        t3 = self._combo_term(spectators + [eps, phi],
                              self.W.word_product_coords(a, b))
        if t3 is None:
            return None
        s = self._exchange_boundary(spectators, a, b, eps, phi)
        if s is None:
            return None
        return s + t1 + t2 - t3

    def _combo_term(self, fixed, coords):
        total = Fraction(0)
        for m, c in enumerate(coords):
            if c == 0:
                continue
            v = self.correlator(tuple(fixed) + (m,))
            if v is None:
                return None
            total += c * v
        return total

    def _exchange_boundary(self, spectators, a, b, eps, phi):
        if not spectators:
            return Fraction(0)
        n = len(self.W.words)
        total = Fraction(0)
        idx = list(range(len(spectators)))
        for r in range(1, len(spectators) + 1):
            for I in itertools.combinations(idx, r):
                J = [i for i in idx if i not in I]
                gI = [spectators[i] for i in I]
                gJ = [spectators[i] for i in J]
                if not gJ:
                    continue
                for sign, left_pair, right_pair in (
                        (1, (a, eps), (phi, b)), (-1, (a, b), (phi, eps))):
                    for l in range(n):
                        left = self.correlator(tuple(gI) + left_pair + (l,))
                        if left is None:
                            return None
                        if left == 0:
                            continue
                        for m in range(n):
                            em = self.W.eta_w_inv[l][m]
                            if em == 0:
                                continue
                            right = self.correlator(
                                (m,) + right_pair + tuple(gJ))
                            if right is None:
                                return None
                            total += sign * left * em * right
        return total


def wdvv_reconstruct(words: GeneratorWords, insertions, ramond_table=None,
                     rng=None):
    """Reconstruct a genus-zero correlator of word-basis insertions.

    insertions: tuple of indices into the word basis.  Raises MissingBasic
    when no exchange path reduces the key to directly evaluable values.
    """
    rec = WDVVReconstructor(words, ramond_table, rng)
    return rec.correlator_or_raise(insertions)


# -- potential assembly -------------------------------------------------------


def genus_zero_potential(words: GeneratorWords, max_points=4,
                         ramond_table=None, rng=None):
    """Genus-zero potential coefficients in coordinates dual to the words.

    Returns {exponent tuple over word coordinates: coefficient}; the
    coefficient of prod T_i^{m_i} is the correlator of the corresponding
    multiset divided by prod m_i!.
    """
    rec = WDVVReconstructor(words, ramond_table, rng)
    n = len(words.words)
    out = {}
    for k in range(3, max_points + 1):
        for combo in itertools.combinations_with_replacement(range(n), k):
            if sum(words.degrees[i] for i in combo) != \
                    2 * words.H.c_hat + 2 * (k - 3):
                continue
            v = rec.correlator(combo)
            if v is None:
                raise MissingBasic("cannot reconstruct %s"
                                   % ([words.labels[i] for i in combo],))
            if v == 0:
                continue
            exps = [0] * n
            for i in combo:
                exps[i] += 1
            denom = 1
            for e in exps:
                for t in range(2, e + 1):
                    denom *= t
            out[tuple(exps)] = v / denom
    return out, rec

