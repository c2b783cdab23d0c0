"""Command-line surface: quiver ingestion and all analyses as subcommands.

Exit codes: 0 success, 2 invalid input or unsupported quiver class,
3 internal invariant violation (a theory-backed assertion failed),
4 oracle certification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import oracle as oracle_mod
from .candecomp import canonical_decomposition, canonical_presentation, cp_equivalent
from .errors import (CertificationError, InvalidQuiverError, InvariantViolation,
                     QuiverStabError, UnsupportedClassError)
from .homext import (enumerate_real_schur_roots, ext_generic, hom_generic,
                     is_schur_root)
from .intersections import enumerate_nonss, intersect_ss
from .quiver import EUCLIDEAN, Quiver, build_context
from .regular import (arc_dim, compute_tubes, facets_and_cones,
                      quasi_simple_dependencies, root_to_arc)
from .stability import (default_scan_bound, hss_contains, hyp_profile,
                        ss_descriptor, ss_equivalent)
from .svg import render_slice

SCHEMA = 1


def _load_quiver(spec_text):
    text = spec_text.strip()
    if not text.startswith("{"):
        path = Path(text)
        if not path.exists():
            raise InvalidQuiverError(f"quiver file not found: {text}")
        text = path.read_text()
    return Quiver.from_json(text)


def _parse_vector(text, n):
    try:
        vec = tuple(int(x) for x in text.split(","))
    except ValueError as e:
        raise InvalidQuiverError(f"bad dimension vector {text!r}") from e
    if len(vec) != n:
        raise InvalidQuiverError(f"vector {text!r} has wrong length (need {n})")
    return vec


def _emit(args, payload):
    payload = {"schema": SCHEMA, **payload}
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for key, value in payload.items():
            if key == "schema":
                continue
            print(f"{key}: {json.dumps(value, sort_keys=True)}")


def cmd_analyze(ctx, args):
    out = {
        "quiver": {"vertices": ctx.n, "arrows": [list(a) for a in ctx.quiver.arrows]},
        "class": ctx.klass,
        "delta": list(ctx.delta) if ctx.delta else None,
    }
    if ctx.klass == EUCLIDEAN and ctx.quiver.is_connected():
        E = ctx.E
        defect_fn = [sum(ctx.delta[i] * E[i][j] for i in range(ctx.n))
                     for j in range(ctx.n)]
        tubes = compute_tubes(ctx)
        data = facets_and_cones(ctx)
        deps = quasi_simple_dependencies(ctx)
        out.update({
            "defect_functional": defect_fn,
            "tubes": [t.to_json() for t in tubes],
            "counts": {
                "non_homogeneous_tubes": len(tubes),
                "sum_rank_minus_one": sum(t.rank - 1 for t in tubes),
                "quasi_simples": sum(t.rank for t in tubes),
            },
            "R": [list(i) for i in data["R"]],
            "facets": {",".join(map(str, i)): data["F"][i].to_json()
                       for i in data["R"]},
            "cones": {",".join(map(str, i)): data["C"][i].to_json()
                      for i in data["R"]},
            "H_delta_ss": data["H_delta_ss"].to_json(),
            "dependency_dim": len(deps),
        })
    return out


def cmd_candecomp(ctx, args):
    d = _parse_vector(args.d, ctx.n)
    if any(x < 0 for x in d):
        raise InvalidQuiverError("candecomp needs a nonnegative vector; use canpres")
    return {"d": list(d), "presentation": canonical_decomposition(ctx, d).to_json()}


def cmd_canpres(ctx, args):
    d = _parse_vector(args.d, ctx.n)
    return {"d": list(d), "presentation": canonical_presentation(ctx, d).to_json()}


def cmd_ssdesc(ctx, args):
    d = _parse_vector(args.d, ctx.n)
    desc = ss_descriptor(ctx, d, seed=args.seed, prime=args.prime)
    return {"d": list(d), "descriptor": desc.to_json()}


def cmd_equiv(ctx, args):
    d1 = _parse_vector(args.d1, ctx.n)
    d2 = _parse_vector(args.d2, ctx.n)
    if args.mode == "cp":
        return {"mode": "cp", "d1": list(d1), "d2": list(d2),
                "verdict": "equal" if cp_equivalent(ctx, d1, d2) else "different"}
    verdict = ss_equivalent(ctx, d1, d2, seed=args.seed, prime=args.prime,
                            bound=(args.bound,) * ctx.n if args.bound else None)
    return {"mode": "ss", "d1": list(d1), "d2": list(d2), **verdict.to_json()}


def cmd_intersect(ctx, args):
    d1 = _parse_vector(args.d1, ctx.n)
    d2 = _parse_vector(args.d2, ctx.n)
    res = intersect_ss(ctx, d1, d2, seed=args.seed, prime=args.prime)
    return {"d1": list(d1), "d2": list(d2), **res.to_json()}


def cmd_enumerate_nonss(ctx, args):
    items = enumerate_nonss(ctx, seed=args.seed)
    return {"count": len(items), "items": [it.to_json() for it in items]}


def cmd_slice_svg(ctx, args):
    if not args.out:
        raise InvalidQuiverError("slice-svg requires --out")
    text = render_slice(ctx)
    Path(args.out).write_text(text)
    return {"written": args.out, "bytes": len(text)}


def _grid(bound):
    from itertools import product
    return [v for v in product(*(range(b + 1) for b in bound)) if any(v)]


def cmd_selftest(ctx, args):
    checks = []

    def run(name, fn):
        try:
            detail = fn()
            checks.append({"name": name, "passed": True, "detail": detail})
        except Exception as e:  # noqa: BLE001 - reported, not swallowed
            checks.append({"name": name, "passed": False, "detail": str(e)})

    per_coord = min(args.bound, 3) if args.bound else 2  # keep the battery quick
    bound = (per_coord,) * ctx.n
    grid = _grid(bound)

    def check_ext():
        pairs = 0
        for a in grid:
            for b in grid:
                dp = ext_generic(ctx, a, b)
                orc = oracle_mod.oracle_ext(ctx, a, b, seed=args.seed, prime=args.prime)
                if dp != orc:
                    raise CertificationError(f"ext mismatch at {a},{b}: {dp} vs {orc}")
                if hom_generic(ctx, a, b) - dp != ctx.euler(a, b):
                    raise InvariantViolation(f"hom-ext identity failed at {a},{b}")
                pairs += 1
        return f"{pairs} pairs"

    def check_candecomp():
        count = 0
        for d in grid:
            pres = canonical_decomposition(ctx, d)
            rep = oracle_mod.sample_generic(ctx, d, seed=args.seed, prime=args.prime)
            got = sorted(s.dims for s in oracle_mod.decompose(rep, seed=args.seed))
            expect = sorted(r for s in pres.summands for r in [s.root] * s.mult)
            if got != expect:
                raise CertificationError(f"decomposition mismatch at {d}")
            count += 1
        return f"{count} vectors"

    def check_schur():
        count = 0
        for d in grid:
            closed = is_schur_root(ctx, d)
            rep = oracle_mod.sample_generic(ctx, d, seed=args.seed, prime=args.prime)
            parts = oracle_mod.decompose(rep, seed=args.seed)
            sampled = (len(parts) == 1
                       and oracle_mod.module_hom_dim(rep, rep) == 1)
            if closed != sampled:
                raise CertificationError(f"Schur test mismatch at {d}")
            count += 1
        return f"{count} vectors"

    def check_tubes():
        if ctx.klass != EUCLIDEAN:
            return "skipped (not Euclidean)"
        tubes = compute_tubes(ctx)
        deps = quasi_simple_dependencies(ctx)
        assert sum(t.rank - 1 for t in tubes) == ctx.n - 2
        assert len(deps) == len(tubes) - 1
        return f"N={len(tubes)}"

    def check_king():
        import numpy as np
        rng = np.random.default_rng(args.seed)
        roots = [r for r in enumerate_real_schur_roots(ctx, bound)
                 if ctx.klass != EUCLIDEAN or r != ctx.delta][:6]
        checked = 0
        for alpha in roots:
            try:
                rep = oracle_mod.exceptional_rep_smallfield(ctx, alpha)
            except ValueError:
                continue
            subdims = oracle_mod.subrep_dims_smallfield(rep)
            for _ in range(40):
                d = tuple(int(x) for x in rng.integers(-4, 5, size=ctx.n))
                king = (ctx.euler(d, alpha) == 0
                        and all(ctx.euler(d, e) <= 0 for e in subdims))
                if king != hss_contains(ctx, alpha, d):
                    raise CertificationError(f"King mismatch: alpha={alpha}, d={d}")
                checked += 1
        return f"{checked} (alpha, d) pairs"

    run("ext_vs_oracle", check_ext)
    run("candecomp_vs_oracle", check_candecomp)
    run("schur_closed_form", check_schur)
    run("tube_identities", check_tubes)
    run("king_semistability", check_king)
    passed = all(c["passed"] for c in checks)
    return {"passed": passed, "checks": checks}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quiverstab",
        description="Exact stability landscape of Dynkin and Euclidean quivers")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, vectors=()):
        p.add_argument("--quiver", required=True,
                       help="path to a quiver JSON file, or inline JSON")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--prime", type=int, default=oracle_mod.DEFAULT_PRIME)
        p.add_argument("--bound", type=int, default=None,
                       help="scan bound per coordinate (default 4*|delta|_1 or 16)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        for v in vectors:
            p.add_argument(f"--{v}", required=True,
                           help="comma-separated integers (negatives allowed)")

    common(sub.add_parser("analyze", help="context, class, tubes, cones"))
    common(sub.add_parser("candecomp", help="canonical decomposition"), ["d"])
    common(sub.add_parser("canpres", help="canonical presentation"), ["d"])
    common(sub.add_parser("ssdesc", help="semi-stable subcategory descriptor"), ["d"])
    p_equiv = sub.add_parser("equiv", help="cp- or ss-equivalence")
    common(p_equiv, ["d1", "d2"])
    p_equiv.add_argument("--mode", choices=("cp", "ss"), default="ss")
    common(sub.add_parser("intersect", help="intersection of two semi-stable "
                                            "subcategories"), ["d1", "d2"])
    common(sub.add_parser("enumerate-nonss",
                          help="all non-semi-stable intersections"))
    p_svg = sub.add_parser("slice-svg", help="affine slice drawing (n = 3 or 4)")
    common(p_svg)
    p_svg.add_argument("--out", required=True)
    common(sub.add_parser("selftest", help="oracle-vs-combinatorics battery"))
    return parser


_COMMANDS = {
    "analyze": cmd_analyze,
    "candecomp": cmd_candecomp,
    "canpres": cmd_canpres,
    "ssdesc": cmd_ssdesc,
    "equiv": cmd_equiv,
    "intersect": cmd_intersect,
    "enumerate-nonss": cmd_enumerate_nonss,
    "slice-svg": cmd_slice_svg,
    "selftest": cmd_selftest,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        quiver = _load_quiver(args.quiver)
        ctx = build_context(quiver)
        payload = _COMMANDS[args.command](ctx, args)
    except (InvalidQuiverError, UnsupportedClassError, ValueError) as e:
        print(json.dumps({"schema": SCHEMA, "error": str(e), "kind": "invalid-input"}),
              file=sys.stderr)
        return 2
    except InvariantViolation as e:
        print(json.dumps({"schema": SCHEMA, "error": str(e),
                          "kind": "invariant-violation"}), file=sys.stderr)
        return 3
    except CertificationError as e:
        print(json.dumps({"schema": SCHEMA, "error": str(e),
                          "kind": "certification-failure"}), file=sys.stderr)
        return 4
    _emit(args, payload)
    if args.command == "selftest" and not payload.get("passed", False):
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
