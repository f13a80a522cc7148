"""Command-line front end.

Commands: analyze | group | statespace | correlators | potential |
bmodel | mirror-check.  Rational numbers are serialized as "p/q" strings
(or "p" for integers); output is deterministic so reruns are
byte-identical.  Exit status: 0 on success, 1 on domain errors, 2 on
usage errors.
"""

import argparse
import itertools
import json
import os
import sys
from fractions import Fraction

from .exactalg import parse_polynomial, render, PolyError
from .singular import (SingularError, check_nondegenerate,
                       exponential_grading_element, max_diagonal_group,
                       subgroup_from_generators, GroupElement)
from .statespace import StateSpace, StateSpaceError
from .moduli import (CorrelatorFrame, ModuliError, bundle_degrees,
                     classify_concavity, selection_rule)
from .correlator import (CorrelatorError, Unevaluable, WDVVReconstructor,
                         four_point_ogrr, three_point)
from .saito import (SaitoError, bmodel_potential, flat_coordinates,
                    label_sort_key)
from .mirror import (MirrorError, PRESETS, build_case, a_model_potential,
                     verify_ring_isomorphism, match_potentials)

ORDER_ENV = "QSING_ORDER"

DOMAIN_ERRORS = (PolyError, SingularError, StateSpaceError, ModuliError,
                 CorrelatorError, SaitoError, MirrorError, ValueError)


class UsageError(Exception):
    pass


# -- serialization ------------------------------------------------------------


def rat(x):
    return str(Fraction(x))


def theta_list(g):
    return [rat(t) for t in g.theta]


def label_str(label):
    return str(label)


def key_str(labels):
    return ",".join(label_str(l) for l in labels)


def emit(payload, as_json):
    if as_json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2))
        sys.stdout.write("\n")
        return
    _emit_text(payload, "")


def _emit_text(payload, indent):
    if isinstance(payload, dict):
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)):
                sys.stdout.write("%s%s:\n" % (indent, k))
                _emit_text(v, indent + "  ")
            else:
                sys.stdout.write("%s%s: %s\n" % (indent, k, v))
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, (dict, list)):
                _emit_text(v, indent)
                sys.stdout.write("%s-\n" % indent)
            else:
                sys.stdout.write("%s%s\n" % (indent, v))
    else:
        sys.stdout.write("%s%s\n" % (indent, payload))


# -- input resolution ----------------------------------------------------------


CASE_POLYNOMIALS = {
    "A": lambda n: ("x^%d" % (n + 1), ("x",)),
    "D": lambda n: ("x^%d + x*y^2" % n, ("x", "y")),
    "DT": lambda n: ("x^%d*y + y^2" % n, ("x", "y")),
    "Dodd": lambda n: ("x^%d + x*y^2" % n, ("x", "y")),
    "E6": lambda n: ("x^3 + y^4", ("x", "y")),
    "E7": lambda n: ("x^3 + x*y^3", ("x", "y")),
    "E8": lambda n: ("x^3 + y^5", ("x", "y")),
}


def parse_case(text):
    """Parse a preset selector like A:3, D:4, DT:5, Dodd:5, E6, E7, E8."""
    if ":" in text:
        name, _, num = text.partition(":")
        try:
            n = int(num)
        except ValueError:
            raise UsageError("--case: bad index %r" % num)
    else:
        name, n = text, None
    if name not in PRESETS:
        raise UsageError("--case: unknown preset %r (choose from %s)"
                         % (name, ", ".join(PRESETS)))
    if name in ("A", "D", "DT", "Dodd") and n is None:
        raise UsageError("--case: preset %s requires an index, e.g. %s:4"
                         % (name, name))
    if name in ("E6", "E7", "E8") and n is not None:
        raise UsageError("--case: preset %s takes no index" % name)
    return name, n


def resolve_singularity(args):
    if getattr(args, "case", None):
        name, n = parse_case(args.case)
        text, variables = CASE_POLYNOMIALS[name](n)
    elif args.poly:
        text = args.poly
        variables = tuple(args.vars.split(",")) if args.vars else None
    else:
        raise UsageError("--poly or --case is required")
    W = parse_polynomial(text, variables)
    return check_nondegenerate(W)


def parse_group_element(text, n_vars):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n_vars:
        raise UsageError("--group: element %r needs %d entries"
                         % (text, n_vars))
    try:
        return GroupElement(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise UsageError("--group: bad rational in %r" % text)


def resolve_group(args, s):
    G_W = max_diagonal_group(s)
    spec = getattr(args, "group", None)
    if getattr(args, "case", None) and spec is None:
        name, _ = parse_case(args.case)
        # Dodd is the <J> theory; every other preset uses the full group,
        # which for A, D^T and the E family coincides with <J>.
        if name == "Dodd":
            spec = "J"
        else:
            spec = "max"
    if spec is None or spec == "max":
        return G_W
    if spec == "J":
        return subgroup_from_generators(G_W, [G_W.J])
    gens = [parse_group_element(t, len(s.q))
            for t in spec.split(";") if t.strip()]
    if not gens:
        raise UsageError("--group: empty generator list")
    return subgroup_from_generators(G_W, gens)


def resolve_case(args):
    if not getattr(args, "case", None):
        raise UsageError("--case is required for this command")
    name, n = parse_case(args.case)
    return build_case(name, n)


def truncation_order(args):
    if getattr(args, "order", None) is not None:
        return args.order
    env = os.environ.get(ORDER_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError("%s: bad truncation order %r" % (ORDER_ENV, env))
    return 3


# -- commands ------------------------------------------------------------------


def cmd_analyze(args):
    s = resolve_singularity(args)
    G_W = max_diagonal_group(s)
    payload = {
        "polynomial": render(s.W),
        "variables": list(s.variables),
        "weights": [rat(q) for q in s.q],
        "degree": s.d,
        "c_hat": rat(s.c_hat),
        "mu": s.mu,
        "group_order": G_W.order,
        "J": theta_list(G_W.J),
    }
    emit(payload, args.json)
    return 0


def cmd_group(args):
    s = resolve_singularity(args)
    G = resolve_group(args, s)
    elements = sorted(G, key=lambda g: g.theta)
    payload = {
        "order": G.order,
        "J": theta_list(G.J),
        "elements": [theta_list(g) for g in elements],
    }
    emit(payload, args.json)
    return 0


def _class_entry(H, b):
    entry = {
        "sector": theta_list(b.gamma),
        "degree": rat(H.deg_W(b)),
    }
    entry["monomial"] = (None if b.mono is None
                         else list(b.mono))
    return entry


def cmd_statespace(args):
    s = resolve_singularity(args)
    G = resolve_group(args, s)
    H = StateSpace(s, G)
    basis = sorted(H.basis,
                   key=lambda b: (b.gamma.theta, b.mono or ()))
    payload = {
        "dimension": H.dimension,
        "c_hat": rat(H.c_hat),
        "basis": [_class_entry(H, b) for b in basis],
    }
    emit(payload, args.json)
    return 0


def _narrow_frames(H, k):
    narrow = [b for b in H.basis if b.mono is None]
    narrow.sort(key=lambda b: b.gamma.theta)
    for combo in itertools.combinations_with_replacement(narrow, k):
        if sum(H.deg_W(b) for b in combo) != 2 * H.c_hat + 2 * (k - 3):
            continue
        frame = CorrelatorFrame(H.singularity, 0,
                                [b.gamma for b in combo])
        if not selection_rule(frame):
            continue
        yield combo, frame


def _sector_rows(H, points):
    rows = []
    for k in range(3, points + 1):
        for combo, frame in _narrow_frames(H, k):
            value = None
            if k == 3:
                try:
                    value = three_point(H, *combo)
                except Unevaluable:
                    value = None
            elif k == 4:
                try:
                    if classify_concavity(frame) == "Concave":
                        value = four_point_ogrr(H, list(combo))
                except (CorrelatorError, ModuliError):
                    value = None
            if value is None:
                continue
            rows.append({
                "insertions": [theta_list(b.gamma) for b in combo],
                "points": k,
                "value": rat(value),
            })
    return rows


def _word_rows(case, points):
    words = case.words
    rec = WDVVReconstructor(words, ramond_table=case.ramond_table)
    rows = []
    n = len(words.words)
    for k in range(3, points + 1):
        for combo in itertools.combinations_with_replacement(range(n), k):
            if sum(words.degrees[i] for i in combo) != \
                    2 * words.H.c_hat + 2 * (k - 3):
                continue
            value = rec.correlator(combo)
            row = {
                "insertions": [label_str(words.labels[i]) for i in combo],
                "points": k,
                "value": None if value is None else rat(value),
            }
            rows.append(row)
    return rows


def cmd_correlators(args):
    points = args.points or 4
    if points < 3:
        raise UsageError("--points must be at least 3")
    if getattr(args, "case", None):
        case = resolve_case(args)
        rows = _word_rows(case, points)
    else:
        s = resolve_singularity(args)
        G = resolve_group(args, s)
        H = StateSpace(s, G)
        rows = _sector_rows(H, points)
    emit({"correlators": rows}, args.json)
    return 0


def cmd_potential(args):
    case = resolve_case(args)
    points = args.points or 4
    if points < 3:
        raise UsageError("--points must be at least 3")
    pot = a_model_potential(case, max_points=points)
    keys = sorted(pot, key=lambda k: (len(k),
                                      tuple(label_sort_key(l) for l in k)))
    payload = {
        "case": args.case,
        "coefficients": {key_str(k): rat(pot[k]) for k in keys},
    }
    emit(payload, args.json)
    return 0


def cmd_bmodel(args):
    case = resolve_case(args)
    order = truncation_order(args)
    pot = bmodel_potential(case.bfamily, case.bn)
    keys = sorted(pot, key=lambda k: (len(k),
                                      tuple(label_sort_key(l) for l in k)))
    fc = flat_coordinates(case.bfamily, case.bn, order=order)
    flat = {}
    for label in sorted(fc.data.labels, key=label_sort_key):
        series = fc.t_series[label]
        flat[label_str(label)] = {
            key_str(k): rat(c)
            for k, c in sorted(series.items(),
                               key=lambda kv: (len(kv[0]), tuple(
                                   label_sort_key(l) for l in kv[0])))
        }
    payload = {
        "family": case.bfamily,
        "n": case.bn,
        "truncation_order": order,
        "potential": {key_str(k): rat(pot[k]) for k in keys},
        "flat_coordinates": flat,
    }
    emit(payload, args.json)
    return 0


def cmd_mirror_check(args):
    case = resolve_case(args)
    iso = verify_ring_isomorphism(case)
    res = match_potentials(case)
    payload = {
        "case": args.case,
        "dimension": iso["dimension"],
        "pairing_ratio": rat(iso["pairing_ratio"]),
        "scale": rat(res["scale"]),
        "lambda": rat(res["lambda"]),
        "expected_lambda": rat(res["reference_lambda"]),
        "verified": bool(res["lambda_matches"]),
    }
    emit(payload, args.json)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "group": cmd_group,
    "statespace": cmd_statespace,
    "correlators": cmd_correlators,
    "potential": cmd_potential,
    "bmodel": cmd_bmodel,
    "mirror-check": cmd_mirror_check,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="qsing",
                     description="Exact-arithmetic Landau-Ginzburg "
                                 "orbifold calculator")
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--poly", help="polynomial, e.g. \"x^3+x*y^3\"")
        p.add_argument("--vars", help="comma-separated variable order")
        p.add_argument("--group",
                       help="J | max | semicolon-separated generators, "
                            "each a comma list of rationals")
        p.add_argument("--case",
                       help="preset: A:n, D:n, DT:n, Dodd:n, E6, E7, E8")
        p.add_argument("--order", type=int,
                       help="series truncation order (default: $%s or 3)"
                            % ORDER_ENV)
        p.add_argument("--genus", type=int, default=0,
                       help="must be 0")
        p.add_argument("--points", type=int,
                       help="maximum number of insertions")
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: %s"
                             % " | ".join(COMMANDS))
        if args.genus != 0:
            raise UsageError("--genus: only genus 0 is supported")
        return COMMANDS[args.command](args)
    except UsageError as ex:
        sys.stderr.write("usage error: %s\n" % ex)
        return 2
    except DOMAIN_ERRORS as ex:
        as_json = bool(argv and "--json" in argv) or \
            ("--json" in (sys.argv if argv is None else argv))
        report = {"error": {"type": type(ex).__name__, "message": str(ex)}}
        if as_json:
            sys.stdout.write(json.dumps(report, sort_keys=True, indent=2))
            sys.stdout.write("\n")
        else:
            sys.stderr.write("error [%s]: %s\n" % (type(ex).__name__, ex))
        return 1


if __name__ == "__main__":
    sys.exit(main())
