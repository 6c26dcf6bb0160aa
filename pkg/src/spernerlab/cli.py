"""Command-line entry point: gen, check, parity, reduce, crosscheck.

Exit codes: 0 success, 1 a mathematical refutation or mismatch, 2 a usage
or configuration error.  Every report embeds the tool version, the full
configuration and the seeds, and its ``result`` payload is deterministic.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import __version__
from . import geometry as geo
from .complex import (check_antipodal_symmetry, boundary_complex, triangulation_from_json,
                      triangulation_to_json, validate_triangulation)
from .generators import ChainError, generate, hemisphere_chain, parse_spec
from .geometry import Kind, Polytope
from .labels import (LabelFunction, LabelKind, LabelSet, enumerate_labellings,
                     has_complementary_pair, is_neutral, parse_label_set)
from .parity import (CUBICAL_RULE, TUCKER_RULE, ForbiddenSet, builtin_rule,
                     closed_form_tucker_M, m_sequence, random_antipodal_labelling,
                     run_framework, search_labelling)
from .reduction import ReductionError, reduce_and_find, sample_instance, shell_config
from .theorems import (LabelSpace, crosscheck_propositions, find_witness, parse_theorem,
                       validate_label_conditions)

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _triangulation(args):
    if getattr(args, "tri", None):
        return triangulation_from_json(_load_json(args.tri))
    if not args.gen:
        raise UsageError("need --gen or --tri")
    try:
        return generate(parse_spec(args.gen))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _seeds(args) -> list[int]:
    return [args.seed + k for k in range(args.samples)]


# -- commands ----------------------------------------------------------------

def cmd_gen(args) -> tuple[int, dict]:
    T = _triangulation(args)
    report = validate_triangulation(T)
    result = {"generator": args.gen, "vertices": len(T.vertices), "maximal": len(T.maximal),
              "valid": report.ok, "violations": report.to_json()["violations"]}
    if T.domain is not None and T.domain.kind is not Kind.SIMPLEX:
        result["boundary_symmetric"] = check_antipodal_symmetry(boundary_complex(T)).ok
    if T.domain is not None and T.domain.kind is Kind.CROSS:
        try:
            chain = hemisphere_chain(T)
            result["chain"] = [len(chain.simplices(i)) for i in range(chain.n + 1)]
        except ChainError as exc:
            result["chain_error"] = exc.report.to_json()
    result["triangulation"] = triangulation_to_json(T)
    return (EXIT_OK if report.ok else EXIT_REFUTED), result


def cmd_check(args) -> tuple[int, dict]:
    theorem = parse_theorem(args.theorem)
    T = _triangulation(args)
    if args.labelling:
        instances = [("file", LabelFunction.from_json(_load_json(args.labelling)))]
        mode = "file"
    else:
        try:
            space = LabelSpace(theorem, T, args.m)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        total = space.count()
        if args.exhaustive and total <= args.budget:
            instances = enumerate(space)
            mode = "exhaustive"
        else:
            instances = ((seed, space.sample(random.Random(seed))) for seed in _seeds(args))
            mode = "sampled"
    checked = invalid = witnesses = mismatches = 0
    refutations, kinds = [], {}
    do_cross = args.crosscheck and theorem.codomain is not LabelKind.SIMPLEX_EXT
    for tag, lam in instances:
        checked += 1
        report = validate_label_conditions(theorem, T, lam)
        if not report.ok:
            invalid += 1
            continue
        w = find_witness(theorem, T, lam, check=False)
        if w is None:
            refutations.append(tag)
        else:
            witnesses += 1
            kinds[len(w.simplex) - 1] = kinds.get(len(w.simplex) - 1, 0) + 1
        if do_cross and not crosscheck_propositions(T, lam).ok:
            mismatches += 1
    result = {"theorem": theorem.value, "mode": mode, "instances": checked,
              "invalid": invalid, "witnesses": witnesses, "refutations": refutations,
              "witness_dimensions": {str(k): v for k, v in sorted(kinds.items())},
              "crosscheck_mismatches": mismatches if do_cross else None}
    if mode != "file":
        result["valid_labellings"] = total
    failed = refutations or mismatches or invalid
    return (EXIT_REFUTED if failed else EXIT_OK), result


def cmd_parity(args) -> tuple[int, dict]:
    rule = builtin_rule(args.rule)
    try:
        ls = parse_label_set(args.labels)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if rule.name == TUCKER_RULE and ls.kind is not LabelKind.CROSS_EXT:
        raise UsageError("the tucker rule needs cross labels")
    if rule.name == CUBICAL_RULE and ls.kind is not LabelKind.CUBE_EXT:
        raise UsageError("the cubical rule needs cube labels")
    F = ForbiddenSet.complementary() if rule.name == TUCKER_RULE else ForbiddenSet.neutral()
    T = _triangulation(args)
    try:
        chain = hemisphere_chain(T)
    except (ValueError, ChainError) as exc:
        raise UsageError(f"no hemisphere chain: {exc}") from exc
    n = chain.n

    closed_form_ok = None
    if rule.name == TUCKER_RULE:
        levels = m_sequence(ls, F, rule, n)
        closed_form_ok = all(
            closed_form_tucker_M(i, ls.dim) == (levels[i - 1].plus, levels[i - 1].minus, levels[i].M)
            for i in range(1, n + 1))

    runs, failures = [], 0
    for seed in _seeds(args):
        lam = search_labelling(chain, ls, F, seed=seed, budget=args.budget)
        source = "search"
        if lam is None:
            if args.search_nonforbidden:
                runs.append({"seed": seed, "status": "no forbidden-free labelling found"})
                continue
            lam, source = random_antipodal_labelling(chain, ls, seed), "random"
        trace = run_framework(chain, lam, F, rule)
        failures += not trace.ok
        entry = {"seed": seed, "labelling": source,
                 "status": "aborted" if trace.aborted else "completed", "ok": trace.ok}
        if trace.aborted:
            entry["witness"] = list(trace.witness)
        else:
            entry["counts"] = [lv.count for lv in trace.levels]
        if len(runs) == 0:
            entry["trace"] = trace.to_json()
        runs.append(entry)
    completed = [r for r in runs if r.get("status") == "completed"]
    result = {"rule": rule.name, "labels": str(ls), "n": n,
              "closed_form_matches": closed_form_ok,
              "completed": len(completed),
              "aborted": sum(r.get("status") == "aborted" for r in runs),
              "all_counts_odd": all(c % 2 == 1 for r in completed for c in r["counts"]),
              "runs": runs}
    failed = failures or closed_form_ok is False
    return (EXIT_REFUTED if failed else EXIT_OK), result


def cmd_reduce(args) -> tuple[int, dict]:
    T = _triangulation(args)
    try:
        cfg = shell_config(args.config, T.domain.dim)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if T.domain != cfg.inner:
        raise UsageError(f"{args.config} expects a triangulation of {cfg.inner}")
    inner = 0
    failures = []
    witnesses = []
    for seed in _seeds(args):
        lam = sample_instance(T, cfg, seed)
        try:
            w = reduce_and_find(T, lam, cfg)
        except ReductionError as exc:
            failures.append({"seed": seed, "error": str(exc)})
            continue
        inner += 1
        witnesses.append(list(w.simplex))
    result = {"config": cfg.name, "inner_theorem": cfg.inner_theorem.value,
              "outer": {"kind": cfg.outer.kind.value, "scale": geo.format_rational(cfg.outer.scale)},
              "instances": len(_seeds(args)), "inner_witnesses": inner,
              "failures": failures, "witnesses": witnesses}
    return (EXIT_REFUTED if failures else EXIT_OK), result


def cmd_crosscheck(args) -> tuple[int, dict]:
    try:
        ls = parse_label_set(args.labels)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if ls.kind is LabelKind.SIMPLEX_EXT:
        raise UsageError("cross-checks need cross or cube labels")
    if args.gen is None and args.tri is None:
        # sweep raw multisets of size 1..m+1
        P = Polytope(Kind.CROSS if ls.kind is LabelKind.CROSS_EXT else Kind.CUBE, ls.dim)
        predicate = has_complementary_pair if ls.kind is LabelKind.CROSS_EXT else is_neutral
        checked, mismatches = 0, []
        for i in range(ls.dim + 1):
            for ell in sorted(enumerate_labellings(ls, i)):
                checked += 1
                if predicate(ell) != geo.hull_meets_interior(sorted(set(ell)), P):
                    mismatches.append([list(lab) for lab in ell])
        result = {"labels": str(ls), "mode": "multisets", "checked": checked,
                  "mismatches": mismatches}
        return (EXIT_REFUTED if mismatches else EXIT_OK), result
    T = _triangulation(args)
    mismatched = []
    for seed in _seeds(args):
        rng = random.Random(seed)
        points = ls.points()
        lam = LabelFunction({v: rng.choice(points) for v in T.vertices}, ls)
        if not crosscheck_propositions(T, lam).ok:
            mismatched.append(seed)
    result = {"labels": str(ls), "mode": "triangulation", "instances": len(_seeds(args)),
              "mismatched_seeds": mismatched}
    return (EXIT_REFUTED if mismatched else EXIT_OK), result


COMMANDS = {"gen": cmd_gen, "check": cmd_check, "parity": cmd_parity,
            "reduce": cmd_reduce, "crosscheck": cmd_crosscheck}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="first seed (default 0)")
    common.add_argument("--samples", type=int, default=1, help="number of seeded instances")
    common.add_argument("--budget", type=int, default=10 ** 6,
                        help="cap on exhaustive enumeration or search steps")
    common.add_argument("--out", help="write the JSON report to this file")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--gen", help="generator spec, e.g. cross:2 or bary(cross:2,rounds=1)")
    common.add_argument("--tri", help="triangulation JSON file instead of --gen")

    parser = argparse.ArgumentParser(prog="spernerlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("gen", parents=[common], help="generate and validate a triangulation")

    p = sub.add_parser("check", parents=[common], help="theorem guarantee sweeps")
    p.add_argument("--theorem", required=True)
    p.add_argument("--m", type=int, help="label dimension (must equal the domain dimension)")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--labelling", help="label function JSON file (single instance)")
    p.add_argument("--no-crosscheck", dest="crosscheck", action="store_false")

    p = sub.add_parser("parity", parents=[common], help="parity framework runs")
    p.add_argument("--rule", required=True, choices=["tucker", "cubical"])
    p.add_argument("--labels", required=True, help="label set, e.g. cross:3 or cube:3")
    p.add_argument("--search-nonforbidden", action="store_true",
                   help="only run on searched forbidden-free labellings; by default a failed "
                        "search falls back to a random antipodal labelling")

    p = sub.add_parser("reduce", parents=[common], help="embedding reductions")
    p.add_argument("--config", required=True,
                   help="oct-in-2oct, cube-in-oct (alias cube-in-2oct) or oct-in-2cube")

    p = sub.add_parser("crosscheck", parents=[common],
                       help="complementary/neutral predicates against the hull oracle")
    p.add_argument("--labels", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, result = COMMANDS[args.command](args)
    except (UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "json")}
    report = {"tool": "spernerlab", "version": __version__, "command": args.command,
              "config": config, "seeds": _seeds(args), "exit_code": code, "result": result}
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    else:
        print(_summary(args.command, code, result))
    return code


def _summary(command: str, code: int, result: dict) -> str:
    status = "ok" if code == EXIT_OK else "FAILED"
    if command == "gen":
        return (f"{status}: {result['generator']}: {result['vertices']} vertices, "
                f"{result['maximal']} maximal simplices")
    if command == "check":
        return (f"{status}: {result['theorem']} {result['mode']}: {result['witnesses']}/"
                f"{result['instances']} witnesses, {len(result['refutations'])} refutations")
    if command == "parity":
        return (f"{status}: {result['rule']} on {result['labels']}: {result['completed']} completed, "
                f"{result['aborted']} aborted, closed form {result['closed_form_matches']}")
    if command == "reduce":
        return (f"{status}: {result['config']}: {result['inner_witnesses']}/"
                f"{result['instances']} inner witnesses")
    checked = result.get("checked", result.get("instances"))
    bad = result.get("mismatches", result.get("mismatched_seeds"))
    return f"{status}: {result['labels']}: {checked} checked, {len(bad)} mismatches"


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
