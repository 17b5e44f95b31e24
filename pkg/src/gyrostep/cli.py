"""Batch command-line front end. Every command prints one JSON report.

Exit status: 0 on success, 1 when a requested check fails (or a witness
cannot be built), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import laws
from .core import FiniteGyrogroup, Neighborhood, instance_from_config
from .errors import CarrierError, GyroError, SchemaError
from .hom import compose_specs, lift
from .metric import d_bullet, metric_by_name
from .rational import as_rational, format_rational
from .sampling import enumerate_grid, random_step, sample_member
from .step import (StepExtension, StepFunction, aligned, add, bad_measure, coadd_sf,
                   disagreement, from_parts, gyr_sf, in_compact_piece, in_neighborhood,
                   in_translate, is_constant, min_gap, path, separation_witness, zero)
from .witness import (DenseSpec, NetworkSpec, build_q_set, covers, densify,
                      narrow_cover_witness, q_bad_measure, sample_q_member)

DEFAULT_SEED = 20240101


class VerificationFailed(Exception):
    def __init__(self, report):
        self.report = report


# --------------------------------------------------------------------------
# input parsing


def _json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what}: invalid JSON ({exc.msg})") from None


def _instance(args):
    cfg = None
    if args.instance is not None:
        cfg = _json(args.instance, "--instance")
    else:
        for name in ("f", "g", "h"):
            text = getattr(args, name, None)
            if text is not None:
                obj = _json(text, f"--{name}")
                if isinstance(obj, dict) and "instance" in obj:
                    cfg = obj["instance"]
                    break
    if cfg is None:
        raise SchemaError("no instance given (use --instance or embed it in --f)")
    return instance_from_config(cfg)


def _step(args, name, G, required=True):
    text = getattr(args, name)
    if text is None:
        if required:
            raise SchemaError(f"--{name} is required")
        return None
    return StepFunction.from_json(_json(text, f"--{name}"), instance=G)


def _nbhd(args, G):
    if args.V is None:
        raise SchemaError("--V is required")
    return Neighborhood.from_json(G, _json(args.V, "--V"))


def _eps(args):
    if args.eps is None:
        raise SchemaError("--eps is required")
    eps = as_rational(args.eps)
    if eps <= 0:
        raise SchemaError("--eps must be positive")
    return eps


def _dense(args, G):
    if args.D is not None:
        pts = _json(args.D, "--D")
        if not isinstance(pts, list):
            raise SchemaError("--D must be a JSON list of elements")
        pts = [G.element_from_json(p) for p in pts]
        if G.exact:
            return DenseSpec.finite(G, pts)
        return DenseSpec(G, points=tuple(pts))
    if isinstance(G, FiniteGyrogroup):
        return DenseSpec.finite(G)
    return DenseSpec.grid(G, args.level)


def _arith(G):
    return "exact" if G.exact else "approximate"


def _q(x):
    return format_rational(x)


def _number(x):
    """Decimal with 12 significant digits, plus the exact ratio when rational."""
    out = {"decimal": f"{float(x):.12g}"}
    if isinstance(x, (int, Fraction)):
        out["exact"] = _q(Fraction(x))
    return out


def _roundtrip(f: StepFunction) -> bool:
    return StepFunction.from_json(json.loads(json.dumps(f.to_json()))) == f


# --------------------------------------------------------------------------
# commands


def cmd_check_axioms(args, rng):
    G = _instance(args)
    if args.step:
        S = StepExtension(G)
        if args.exhaustive:
            if not isinstance(G, FiniteGyrogroup):
                raise SchemaError("--exhaustive --step needs a finite instance")
            elements = list(enumerate_grid(G, 2))
            checks = laws.check_axioms(S, exhaustive=True, elements=elements)
        else:
            fs = [random_step(G, rng) for _ in range(3 * args.samples + 1)]
            xs, pairs = fs[:args.samples], list(zip(fs, fs[1:]))[:args.samples]
            triples = list(zip(fs, fs[1:], fs[2:]))[:args.samples]
            quads = list(zip(fs, fs[1:], fs[2:], fs[3:]))[:args.samples]
            checks = {
                "G1 identity": laws.left_identity_and_right_identity(S, xs),
                "G2 inverse": laws.inverses(S, xs),
                "G3 gyroassociative": laws.gyroassociative(S, triples),
                "G4 loop property": laws.loop_property(S, triples),
                "gyr automorphism": laws.gyr_automorphism(S, quads),
                "left cancellation": laws.left_cancellation(S, pairs),
                "right cancellation": laws.right_cancellation(S, pairs),
            }
    else:
        exhaustive = args.exhaustive or isinstance(G, FiniteGyrogroup)
        if exhaustive and not isinstance(G, FiniteGyrogroup):
            raise SchemaError("--exhaustive needs a finite instance")
        checks = laws.check_axioms(G, exhaustive=exhaustive, samples=args.samples, rng=rng)
    return {"instance": G.to_config(), "lifted": args.step}, {"laws": list(checks)}, checks, G


def _binary(args, op, name):
    G = _instance(args)
    f, g = _step(args, "f", G), _step(args, "g", G)
    out = op(f, g)
    checks = {
        "pointwise": all(G.eq(z, name(x, y)) for _, _, (x, y, z) in aligned(f, g, out)),
        "round trip": _roundtrip(out),
    }
    return {"f": f.to_json(), "g": g.to_json()}, out.to_json(), checks, G


def cmd_add(args, rng):
    G = _instance(args)
    return _binary(args, add, G.op)


def cmd_coadd(args, rng):
    G = _instance(args)
    return _binary(args, coadd_sf, G.coadd)


def cmd_gyr(args, rng):
    G = _instance(args)
    f, g, h = _step(args, "f", G), _step(args, "g", G), _step(args, "h", G)
    out = gyr_sf(f, g, h)
    checks = {
        "pointwise": all(G.eq(w, G.gyr(x, y, z)) for _, _, (x, y, z, w) in aligned(f, g, h, out)),
        "round trip": _roundtrip(out),
    }
    return {"f": f.to_json(), "g": g.to_json(), "h": h.to_json()}, out.to_json(), checks, G


def cmd_lift(args, rng):
    G = _instance(args)
    f = _step(args, "f", G)
    if not args.hom:
        raise SchemaError("--hom is required")
    phi = compose_specs(G, args.hom)
    out = lift(phi, f)
    checks = {
        "pointwise": all(phi.target.eq(out(lo), phi(x)) for lo, _, x in f.intervals()),
        "homomorphism on f ⊕ f": lift(phi, add(f, f)) == add(out, out),
        "round trip": _roundtrip(out),
    }
    return {"f": f.to_json(), "hom": args.hom}, out.to_json(), checks, phi.target


def cmd_dbullet(args, rng):
    G = _instance(args)
    f, g = _step(args, "f", G), _step(args, "g", G)
    d = metric_by_name(G, args.metric)
    value = d_bullet(d, f, g)
    mids = [(lo + hi) / 2 for lo, hi, _ in aligned(f, g)]
    refined = tuple(sorted(set(f.breakpoints) | set(g.breakpoints) | set(mids)))
    checks = {
        "symmetric": d_bullet(d, g, f) == value,
        "zero on diagonal": d_bullet(d, f, f) == 0,
        "refinement invariant": _close(d_bullet(d, f, g, partition=refined), value, G),
    }
    return {"f": f.to_json(), "g": g.to_json(), "metric": args.metric}, _number(value), checks, G


def _close(a, b, G):
    return a == b if G.exact else abs(a - b) <= 1e-12


def cmd_path(args, rng):
    G = _instance(args)
    f = _step(args, "f", G)
    if args.t is None:
        raise SchemaError("--t is required")
    t = as_rational(args.t)
    ft = path(f, t)
    checks = {
        "starts at identity": path(f, 0) == zero(G),
        "ends at f": path(f, 1) == f,
        "μ(φ(t) ≠ φ(0)) ≤ t": disagreement(ft, path(f, 0)) <= t,
        "μ(φ(t) ≠ φ(1)) ≤ 1 - t": disagreement(ft, path(f, 1)) <= 1 - t,
        "round trip": _roundtrip(ft),
    }
    return {"f": f.to_json(), "t": _q(t)}, ft.to_json(), checks, G


def cmd_measure(args, rng):
    G = _instance(args)
    f = _step(args, "f", G)
    V = _nbhd(args, G)
    m = bad_measure(f, V)
    return {"f": f.to_json(), "V": V.to_json(G)}, {"measure": _q(m)}, {}, G


def cmd_member(args, rng):
    G = _instance(args)
    f = _step(args, "f", G)
    g = _step(args, "g", G, required=False)
    V, eps = _nbhd(args, G), _eps(args)
    inputs = {"f": f.to_json(), "V": V.to_json(G), "eps": _q(eps)}
    if g is None:
        result = {"member": in_neighborhood(f, V, eps), "measure": _q(bad_measure(f, V)),
                  "form": "f ∈ O(V, eps)"}
    else:
        inputs["g"] = g.to_json()
        result = {"member": in_translate(g, f, V, eps), "form": "g ∈ f ⊕ O(V, eps)"}
    return inputs, result, {}, G


def cmd_separate(args, rng):
    G = _instance(args)
    f = _step(args, "f", G)
    V, eps = separation_witness(f)
    if args.exhaustive and isinstance(G, FiniteGyrogroup):
        denom = 1
        for b in f.breakpoints:
            denom = denom * b.denominator // _gcd(denom, b.denominator)
        if len(G.elements()) ** denom > 200_000:
            raise SchemaError("partition grid too fine for an exhaustive scan")
        candidates = (g for g in enumerate_grid(G, denom) if in_neighborhood(g, V, eps))
    else:
        candidates = (sample_member(G, V, eps, rng) for _ in range(args.samples))
    tested = 0
    ok = True
    for g in candidates:
        tested += 1
        if is_constant(add(f, g)):
            ok = False
            break
    result = {"V": V.to_json(G), "eps": _q(eps), "tested": tested}
    return {"f": f.to_json()}, result, {"no constant in f ⊕ O(V, eps)": ok}, G


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _witness(kind, g, parameters):
    return {"g": g.to_json(), "certificate": {"kind": kind, "parameters": parameters, "verified": True}}


def cmd_densify(args, rng):
    G = _instance(args)
    f = _step(args, "f", G)
    V, eps = _nbhd(args, G), _eps(args)
    D = _dense(args, G)
    g = densify(f, D, V, eps, shift=args.shift)
    checks = {"g ∈ f ⊕ O(V, eps)": in_translate(g, f, V, eps), "round trip": _roundtrip(g)}
    params = {"V": V.to_json(G), "eps": _q(eps), "shift": args.shift}
    return {"f": f.to_json()}, _witness("dense", g, params), checks, G


def cmd_cover(args, rng):
    G = _instance(args)
    f = _step(args, "f", G)
    V, eps = _nbhd(args, G), _eps(args)
    D = _dense(args, G)
    g = narrow_cover_witness(f, D, V, eps, shift=args.shift, side=args.side)
    form = "f ∈ g ⊕ O(V, eps)" if args.side == "left" else "f ∈ O(V, eps) ⊕ g"
    checks = {form: covers(f, g, V, eps, args.side), "round trip": _roundtrip(g)}
    params = {"V": V.to_json(G), "eps": _q(eps), "shift": args.shift, "side": args.side}
    return {"f": f.to_json()}, _witness("narrow-cover", g, params), checks, G


def _pset_json(G, P):
    if P.members is not None:
        return {"set": [G.element_to_json(x) for x in sorted(P.members, key=repr)]}
    return {"center": G.element_to_json(P.center), "radius": _q(P.radius)}


def cmd_qset(args, rng):
    G = _instance(args)
    f = _step(args, "f", G)
    g = _step(args, "g", G, required=False)
    V, eps = _nbhd(args, G), _eps(args)
    if isinstance(G, FiniteGyrogroup):
        net = NetworkSpec.finite(G)
    else:
        net = NetworkSpec.grid(G, args.level, args.depth)
    Q = build_q_set(f, V, eps, net)
    checks = {"f ∈ Q": f in Q}
    sandwich = all(in_translate(h, f, V, eps)
                   for h in (sample_q_member(Q, G, rng) for _ in range(args.samples)))
    checks["Q ⊆ f ⊕ O(V, eps) on samples"] = sandwich
    result = {
        "m": Q.m, "n": Q.n, "b": [_q(x) for x in Q.b],
        "P": [_pset_json(G, P) for P in Q.P],
    }
    if g is not None:
        result["g_measure"] = _q(q_bad_measure(g, Q.b, Q.P))
        result["g_member"] = g in Q
    return {"f": f.to_json(), "V": V.to_json(G), "eps": _q(eps)}, result, checks, G


def cmd_from_parts(args, rng):
    G = _instance(args)
    if args.values is None:
        raise SchemaError("--values is required")
    values = _json(args.values, "--values")
    cuts = _json(args.cuts, "--cuts") if args.cuts is not None else []
    if not isinstance(values, list) or not isinstance(cuts, list):
        raise SchemaError("--values and --cuts must be JSON lists")
    xs = [G.element_from_json(v) for v in values]
    qs = [as_rational(c) for c in cuts]
    f = from_parts(G, xs, qs)
    pts = [Fraction(0), *qs, Fraction(1)]
    checks = {
        "agrees with tuple": all(G.eq(f(lo), x) for lo, x in zip(pts, xs)),
        "round trip": _roundtrip(f),
    }
    result = {
        "f": f.to_json(),
        "min_gap": _q(min_gap(f)),
        "compact_pieces": [m for m in range(1, args.max_m + 1) if in_compact_piece(qs, m)],
    }
    return {"values": values, "cuts": [_q(c) for c in qs]}, result, checks, G


COMMANDS = {
    "check-axioms": cmd_check_axioms,
    "add": cmd_add,
    "gyr": cmd_gyr,
    "coadd": cmd_coadd,
    "lift": cmd_lift,
    "dbullet": cmd_dbullet,
    "path": cmd_path,
    "measure": cmd_measure,
    "member": cmd_member,
    "separate": cmd_separate,
    "densify": cmd_densify,
    "cover": cmd_cover,
    "qset": cmd_qset,
    "from-parts": cmd_from_parts,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", help='e.g. \'{"kind": "cyclic", "n": 5}\'')
    common.add_argument("--f", help="step function JSON")
    common.add_argument("--g", help="step function JSON")
    common.add_argument("--h", help="step function JSON")
    common.add_argument("--metric", default="discrete", choices=["discrete", "euclidean"])
    common.add_argument("--V", help='neighborhood JSON: {"set": [...]} or {"ball": rho}')
    common.add_argument("--eps", help='rational, "p/q" or a finite decimal')
    common.add_argument("--t", help="path parameter in [0, 1]")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--exhaustive", action="store_true")
    common.add_argument("--step", action="store_true", help="check-axioms on step functions")
    common.add_argument("--hom", action="append", help="catalog homomorphism; repeat to compose")
    common.add_argument("--D", help="dense family as a JSON list of elements")
    common.add_argument("--level", type=int, default=6, help="dyadic grid level")
    common.add_argument("--depth", type=int, default=10, help="network radii 1/2..1/2^depth")
    common.add_argument("--shift", action="store_true", help="move cuts to dyadic rationals")
    common.add_argument("--side", default="left", choices=["left", "right"])
    common.add_argument("--values", help="JSON list of elements")
    common.add_argument("--cuts", help="JSON list of rationals")
    common.add_argument("--max-m", dest="max_m", type=int, default=16)

    parser = argparse.ArgumentParser(prog="gyrostep", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.samples <= 0:
        print("error: --samples must be positive", file=sys.stderr)
        return 2
    rng = random.Random(args.seed)
    try:
        inputs, result, checks, G = COMMANDS[args.command](args, rng)
    except (SchemaError, CarrierError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GyroError as exc:
        report = {"command": args.command, "error": f"{type(exc).__name__}: {exc}",
                  "verification": {}, "ok": False}
        out.write(json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n")
        return 1
    report = {
        "command": args.command,
        "inputs": inputs,
        "result": result,
        "verification": checks,
        "arithmetic": _arith(G),
        "seed": args.seed,
        "ok": all(checks.values()),
    }
    out.write(json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n")
    return 0 if report["ok"] else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
