"""Decorated-graph combinatorics for genus-zero correlators.

Line-bundle degrees, the selection rule, boundary-node decorations of the
four-pointed moduli, concavity classification, and stabilization-degree
bookkeeping.
"""

from __future__ import annotations

from fractions import Fraction

from .singular import GroupElement


class ModuliError(ValueError):
    pass


class NodeNotInGroup(ModuliError):
    pass


class CorrelatorFrame:
    def __init__(self, singularity, genus, insertions):
        if genus != 0:
            raise ModuliError("only genus zero is supported")
        self.singularity = singularity
        self.genus = genus
        self.insertions = list(insertions)
        self.k = len(self.insertions)

    def degrees(self):
        return bundle_degrees(self)

    def nonempty(self):
        return selection_rule(self)


def bundle_degrees(frame):
    """deg|L_j| = q_j (2g - 2 + k) - sum_l Theta_j^{gamma_l}, per line j."""
    s = frame.singularity
    factor = 2 * frame.genus - 2 + frame.k
    return tuple(q * factor - sum((g.theta[j] for g in frame.insertions),
                                  Fraction(0))
                 for j, q in enumerate(s.q))


def selection_rule(frame):
    """True iff all line-bundle degrees are integral.

    Equivalent to prod(gamma_i) = J^{2g-2+k} on the phase torus.
    """
    degs = bundle_degrees(frame)
    integral = all(d.denominator == 1 for d in degs)
    prod = frame.insertions[0]
    for g in frame.insertions[1:]:
        prod = prod * g
    target = GroupElement(frame.singularity.q) ** (2 * frame.genus - 2
                                                   + frame.k)
    if integral != (prod == target):
        raise ModuliError("selection rule internal inconsistency")
    return integral


class BoundaryChannel:
    """One boundary stratum {a,b | c,d} of the four-pointed moduli."""

    def __init__(self, pair, node_gamma, multiplicity=1):
        self.pair = tuple(sorted(pair))
        self.node_gamma = node_gamma
        self.multiplicity = multiplicity

    def __repr__(self):
        return ("Channel(%s | rest, node=%r, mult=%d)"
                % (self.pair, self.node_gamma, self.multiplicity))


def node_element(singularity, ga, gb):
    """Decoration of the node joining tails a, b on a genus-zero component.

    Theta^node = q - Theta^a - Theta^b (mod 1), from the three-point
    selection rule on the component carrying the two tails and the node.
    """
    return GroupElement(q - ta - tb for q, ta, tb in
                        zip(singularity.q, ga.theta, gb.theta))


def boundary_node_decorations(frame, G=None):
    """The three boundary channels of a genus-zero four-point frame.

    Channels whose unordered decoration data coincide are merged with
    multiplicity.  If a group G is supplied, node decorations must lie in
    it (NodeNotInGroup otherwise).
    """
    if frame.k != 4 or frame.genus != 0:
        raise ModuliError("boundary decorations require g=0, k=4")
    if not selection_rule(frame):
        raise ModuliError("frame fails the selection rule")
    s = frame.singularity
    ins = frame.insertions
    raw = []
    for pair in ((0, 1), (0, 2), (0, 3)):
        a, b = pair
        node = node_element(s, ins[a], ins[b])
        if G is not None and node not in G:
            raise NodeNotInGroup("node %r outside the group" % (node,))
        other = tuple(sorted(set(range(4)) - set(pair)))
        key = (tuple(sorted((ins[a].theta, ins[b].theta))),
               tuple(sorted((ins[other[0]].theta, ins[other[1]].theta))),
               node.theta)
        raw.append((key, pair, node))
    merged = []
    seen = {}
    for key, pair, node in raw:
        if key in seen:
            merged[seen[key]].multiplicity += 1
        else:
            seen[key] = len(merged)
            merged.append(BoundaryChannel(pair, node))
    return merged


def _boundary_side_obstruction(frame):
    """True when some three-pointed side of a boundary channel of a
    genus-zero four-point frame carries a line with sections.

    A side line of degree > 0 always has sections.  A side line of
    degree 0 has a constant section; it survives the gluing condition
    at the node exactly when the node isotropy acts nontrivially on
    that line (sections then vanish at the node on both sides, so
    nothing pins the constant to zero).  When the node acts trivially
    on the line, matching the zero section on the negative side kills
    the constant, and concavity survives.
    """
    s = frame.singularity
    ins = frame.insertions
    for pair in ((0, 1), (0, 2), (0, 3)):
        other = tuple(sorted(set(range(4)) - set(pair)))
        for side in (pair, other):
            a, b = side
            node = node_element(s, ins[a], ins[b])
            for j, q in enumerate(s.q):
                d = q - ins[a].theta[j] - ins[b].theta[j] - node.theta[j]
                if d > 0 or (d == 0 and node.theta[j] != 0):
                    return True
    return False


def classify_concavity(frame):
    """One of 'Concave', 'IndexZero', 'Ramond', 'Other'.

    Ramond: some insertion fixes a variable.  Concave: all insertions NS,
    every line degree <= -1, and (for four points) no boundary channel
    carries a line with surviving sections -- a degree-0 side line at a
    node acting nontrivially on it defeats the direct pushforward
    evaluation even when the total degrees are negative.  IndexZero:
    all NS with the degree pattern of equal-rank section/obstruction
    spaces (a degree-0 line with degree-(-2) lines).
    """
    if not selection_rule(frame):
        raise ModuliError("frame fails the selection rule")
    if any(g.fixed_indices() for g in frame.insertions):
        return "Ramond"
    degs = bundle_degrees(frame)
    if all(d <= -1 for d in degs):
        if frame.k == 4 and frame.genus == 0 and \
                _boundary_side_obstruction(frame):
            return "Other"
        return "Concave"
    if any(d == 0 for d in degs) and all(d in (0, -2) for d in degs):
        return "IndexZero"
    return "Other"


def stabilization_degree(G, g, edge_gamma=None, graph="corolla"):
    """Degree of the stabilization map st.

    corolla: |G|^(2g-1); one-loop graph: |G|^(2g-2) / |<gamma>|;
    tree edge: |<gamma>| ramification factor.
    """
    order = G.order if hasattr(G, "order") else int(G)
    if graph == "corolla":
        return Fraction(order) ** (2 * g - 1)
    if graph == "loop":
        if edge_gamma is None:
            raise ModuliError("loop graph needs an edge decoration")
        return Fraction(order) ** (2 * g - 2) / edge_gamma.order()
    if graph == "tree":
        if edge_gamma is None:
            raise ModuliError("tree edge needs a decoration")
        return Fraction(edge_gamma.order())
    raise ModuliError("unknown graph type %r" % (graph,))
