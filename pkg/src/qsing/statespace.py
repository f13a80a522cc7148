"""The A-model state space H_{W,G} = (+)_gamma H_gamma.

Each sector carries the Milnor ring of the restricted polynomial on the
fixed locus of gamma, the degree-shifting number iota, and the grading
deg_W = N_gamma + 2*iota.  Neveu-Schwarz sectors (empty fixed locus) are
one-dimensional; Ramond sectors keep the G-invariant monomial-forms.

The pairing is 1 on canonical NS generators e_gamma, e_{gamma^-1} and the
plain residue pairing of the restricted ring on Ramond invariants.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg import Poly
from .milnor import MilnorRing
from .singular import (GroupElement, MissingJ, QSingularity, SingularError,
                       SymmetryGroup, check_nondegenerate)


class StateSpaceError(ValueError):
    pass


class VariableCollision(StateSpaceError):
    pass


class Sector:
    def __init__(self, singularity, G, gamma):
        self.gamma = gamma
        self.fixed_vars = gamma.fixed_indices()
        self.N_gamma = len(self.fixed_vars)
        self.is_ramond = self.N_gamma > 0
        self.iota = sum((t - q for t, q in zip(gamma.theta, singularity.q)),
                        Fraction(0))
        self.deg_W = self.N_gamma + 2 * self.iota
        self.W_gamma = None
        self.milnor = None
        if self.is_ramond:
            keep = [singularity.variables[i] for i in self.fixed_vars]
            dropped = [v for v in singularity.variables if v not in keep]
            restricted = singularity.W.substitute_zero(dropped)
            if restricted.is_zero():
                raise StateSpaceError(
                    "restricted potential vanishes on the fixed locus of %r"
                    % (gamma,))
            self.W_gamma = restricted
            self.milnor = MilnorRing(check_nondegenerate(restricted))

    def invariant_monomials(self, G):
        """Basis monomial-forms surviving G-invariance.

        The action on the form x^m omega twists by (m_i + 1) on each fixed
        variable, so invariance is sum_i (m_i + 1) * Theta_i^g in Z for
        every generator g of G.
        """
        if not self.is_ramond:
            return [None]  # the canonical generator e_gamma
        out = []
        for mono in self.milnor.basis:
            ok = True
            for g in G.generators:
                tw = sum((mono[j] + 1) * g.theta[i]
                         for j, i in enumerate(self.fixed_vars))
                if tw.denominator != 1:
                    ok = False
                    break
            if ok:
                out.append(mono)
        return out


class BasisClass:
    """A state-space basis element: x^mono e_gamma (mono None for NS)."""

    __slots__ = ("gamma", "mono")

    def __init__(self, gamma, mono):
        self.gamma = gamma
        self.mono = mono

    def __eq__(self, other):
        return (isinstance(other, BasisClass) and self.gamma == other.gamma
                and self.mono == other.mono)

    def __hash__(self):
        return hash((self.gamma, self.mono))

    def __repr__(self):
        if self.mono is None:
            return "e[%s]" % ",".join(map(str, self.gamma.theta))
        return "x^%s e[%s]" % (self.mono,
                               ",".join(map(str, self.gamma.theta)))


class StateSpace:
    def __init__(self, singularity: QSingularity, G: SymmetryGroup):
        if G.J not in G:
            raise MissingJ("group does not contain J")
        self.singularity = singularity
        self.G = G
        self.c_hat = singularity.c_hat
        self.sectors = {g: Sector(singularity, G, g) for g in G}
        self.basis = []
        for g in G:
            sector = self.sectors[g]
            for mono in sector.invariant_monomials(G):
                self.basis.append(BasisClass(g, mono))
        self._index = {b: i for i, b in enumerate(self.basis)}
        self.unit = BasisClass(G.J, None)
        if self.unit not in self._index:
            raise StateSpaceError("unit sector e_J missing")
        self.eta = [[self._pair(a, b) for b in self.basis]
                    for a in self.basis]
        self.eta_inv = _invert(self.eta)

    @property
    def dimension(self):
        return len(self.basis)

    def index(self, b):
        return self._index[b]

    def deg_W(self, b):
        return self.sectors[b.gamma].deg_W

    def _pair(self, a, b):
        if not (a.gamma * b.gamma).is_identity():
            return Fraction(0)
        if a.mono is None and b.mono is None:
            return Fraction(1)
        if (a.mono is None) != (b.mono is None):
            return Fraction(0)
        ring = self.sectors[a.gamma].milnor
        return ring.residue_pairing(ring.basis_poly(a.mono),
                                    ring.basis_poly(b.mono))

    def pair(self, a, b):
        return self.eta[self.index(a)][self.index(b)]

    def pair_vectors(self, va, vb):
        """Pairing of two classes given as {BasisClass: Fraction} maps."""
        total = Fraction(0)
        for a, ca in va.items():
            for b, cb in vb.items():
                total += ca * cb * self.pair(a, b)
        return total


def _invert(M):
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)]
         + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if A[i][c] != 0), None)
        if pivot is None:
            raise StateSpaceError("pairing matrix singular")
        A[c], A[pivot] = A[pivot], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def build_sector(s, G, gamma) -> Sector:
    if gamma not in G:
        raise SingularError("gamma not in G")
    return Sector(s, G, gamma)


def invariant_basis(sector, G):
    return sector.invariant_monomials(G)


def build_state_space(s, G) -> StateSpace:
    return StateSpace(s, G)


def tensor_state_space(H1: StateSpace, H2: StateSpace) -> StateSpace:
    """State space of the disjoint sum W1 + W2 with the product group."""
    v1, v2 = H1.singularity.variables, H2.singularity.variables
    if set(v1) & set(v2):
        raise VariableCollision("shared variables %s" % (set(v1) & set(v2),))
    allvars = v1 + v2
    W = (_extend(H1.singularity.W, allvars, 0)
         + _extend(H2.singularity.W, allvars, len(v1)))
    s = check_nondegenerate(W)
    elements = []
    for g1 in H1.G:
        for g2 in H2.G:
            elements.append(GroupElement(g1.theta + g2.theta))
    gens = ([GroupElement(g.theta + (Fraction(0),) * len(v2))
             for g in H1.G.generators]
            + [GroupElement((Fraction(0),) * len(v1) + g.theta)
               for g in H2.G.generators])
    J = GroupElement(H1.G.J.theta + H2.G.J.theta)
    G = SymmetryGroup(sorted(set(elements), key=lambda g: g.theta), gens, J)
    return StateSpace(s, G)


def _extend(p, allvars, offset):
    n = len(allvars)
    terms = {}
    for m, c in p.terms.items():
        full = [0] * n
        for j, e in enumerate(m):
            full[offset + j] = e
        terms[tuple(full)] = c
    return Poly(allvars, terms)
