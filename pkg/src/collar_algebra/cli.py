"""collar-algebra command line.

Exit codes: 0 success or true, 1 decision false, 2 input error,
3 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import freeprod, groupring, perm, presentation, smallgroups, suite, thompson, tower
from .presentation import PresentationError, SemidirectData, word_from_json, word_to_json

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class InputError(Exception):
    pass


class VerifyError(Exception):
    pass


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_input(args):
    if args.input is None:
        return None
    try:
        if args.input == "-":
            return json.load(sys.stdin)
        if args.input.lstrip().startswith(("{", "[")):
            return json.loads(args.input)
        with open(args.input) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON input: {exc}") from None


def _need(data, what: str):
    if data is None:
        raise InputError(f"this command needs --input with {what}")
    return data


# -- perm ------------------------------------------------------------------

def _fixture(name: str) -> perm.PermGroup:
    for n, g in smallgroups.fixture_groups():
        if n == name:
            return g
    raise InputError(f"unknown fixture group {name!r}")


def _perm_group(args, data):
    if args.group:
        return _fixture(args.group)
    data = _need(data, 'a group {"degree": n, "generators": [...]}')
    return perm.group_from_json(data.get("group", data), cap=args.cap or perm.DEFAULT_CAP)


def cmd_perm(args, data):
    g = _perm_group(args, data)
    if args.action == "derived-series":
        series = perm.derived_series(g)
        return {"orders": [h.order for h in series], "length": len(series)}, EXIT_OK
    if args.action == "perfect-core":
        core = perm.perfect_core(g)
        return {
            "order": g.order,
            "perfect_core_order": core.order,
            "perfect_core": perm.group_to_json(core),
            "perfect": perm.is_perfect(g),
            "hypo_abelian": perm.is_hypo_abelian(g),
        }, EXIT_OK
    # extension-check: a given normal subgroup, or all of them
    if data is not None and "normal" in data:
        normals = [perm.subgroup(g, [perm.Permutation(tuple(p)) for p in data["normal"]])]
    else:
        normals = perm.normal_subgroups(g)
    reports = [perm.check_extension_lemmas(g, n).as_dict() for n in normals]
    ok = all(r["ok"] for r in reports)
    return {"instances": len(reports), "reports": reports, "ok": ok}, (EXIT_OK if ok else EXIT_VERIFY)


# -- thompson --------------------------------------------------------------

def _tree_pair(obj):
    try:
        return thompson.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad tree pair: {exc}") from None


def cmd_thompson(args, data):
    cap = args.cap or 64
    if args.action == "order":
        if args.prime is not None:
            e = thompson.element_of_order(args.prime)
        else:
            e = _tree_pair(_need(data, '{"element": tree pair}').get("element", data))
        k = thompson.order(e, cap)
        return {"element": thompson.to_json(e.reduce()), "order": k, "cap": cap}, EXIT_OK
    data = _need(data, '{"a": tree pair, "b": tree pair}')
    a, b = _tree_pair(data["a"]), _tree_pair(data["b"])
    return {"product": thompson.to_json(a * b)}, EXIT_OK


# -- freeprod --------------------------------------------------------------

def _fp(obj):
    try:
        return freeprod.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad free product word: {exc}") from None


def cmd_freeprod(args, data):
    data = _need(data, "a JSON object")
    if args.action == "partial-conj":
        if args.prime is not None:
            u = thompson.element_of_order(args.prime)
        else:
            u = _tree_pair(data["u"])
        w = _fp(data["word"])
        image = freeprod.partial_conjugation(u, w, int(data.get("power", 1)))
        return {"image": freeprod.to_json(image)}, EXIT_OK
    # pattern
    if "factor_map" in data:
        fmap = data["factor_map"]
        m = int(data.get("m", 1 + max((j for j in fmap if j is not None), default=-1)))

        def hom(t):
            out = [freeprod.IDENTITY] * m
            for i, j in enumerate(fmap):
                if j is not None:
                    out[j] = out[j] * t[i]
            return tuple(out)

        images = freeprod.probe_images(hom, len(fmap))
        return freeprod.straightening_pattern(images, m), EXIT_OK
    images = [[tuple(_fp(c) for c in img) for img in row] for row in data["images"]]
    return freeprod.straightening_pattern(images, data.get("m")), EXIT_OK


# -- presentation ----------------------------------------------------------

def _sd(data) -> SemidirectData:
    def table(key):
        out = {}
        for q, row in data.get(key, {}).items():
            for k, w in row.items():
                out[(q, k)] = word_from_json(w)
        return out

    return SemidirectData(tuple(data["k_gens"]), tuple(data["q_gens"]), table("action"), table("inverse_action"))


def cmd_presentation(args, data):
    if args.action == "gt-tower":
        data = data or {}
        pres0 = presentation.presentation_from_json(data["presentation"]) if "presentation" in data \
            else presentation.Presentation(("t0",))
        t0 = data.get("t0", "t0")
        j = args.j if args.j is not None else int(data.get("j", 1))
        pres = presentation.gt_tower_presentation(pres0, t0, j)
        out = {"presentation": presentation.presentation_to_json(pres)}
        if j >= 1:
            images = presentation.gt_tower_epi(pres0, t0, j)
            check = presentation.check_tower_epi(pres0, t0, j)
            out["epi"] = {g: word_to_json(w) for g, w in images.items()}
            out["epi_ok"] = check["ok"]
            if not check["ok"]:
                return out, EXIT_VERIFY
        return out, EXIT_OK
    data = _need(data, "semi-direct data")
    sd = _sd(data)
    if args.action == "normal-form":
        w = word_from_json(data["word"])
        return {"normal_form": word_to_json(presentation.normal_form(w, sd))}, EXIT_OK
    pres_k = presentation.presentation_from_json(data["K"]) if "K" in data else presentation.Presentation(sd.k_gens)
    pres_q = presentation.presentation_from_json(data["Q"]) if "Q" in data else presentation.Presentation(sd.q_gens)
    pres = presentation.semidirect_presentation(pres_k, pres_q, sd)
    return {"presentation": presentation.presentation_to_json(pres)}, EXIT_OK


# -- tower -----------------------------------------------------------------

def _seq(text, flag):
    if text is None:
        raise InputError(f"missing {flag}")
    return tower.parse_prime_seq(text)


def cmd_tower(args, data):
    a = _seq(args.a, "--a")
    if args.action == "order":
        report = tower.action_order_report(a)
        report["necessary"] = {str(p): v for p, v in report["necessary"].items()}
        return report, (EXIT_OK if report["ok"] else EXIT_VERIFY)
    b = _seq(args.b, "--b")
    if args.action == "iso":
        out = tower.iso_report(a, b)
        return out, (EXIT_OK if out["iso"] else EXIT_FALSE)
    if args.action == "epi":
        if not tower.epi_decide(a, b):
            missing = min(set(b) - set(a))
            return {"epi": False, "missing": missing}, EXIT_FALSE
        try:
            f = tower.build_epi(a, b, random.Random(args.seed))
        except tower.VerificationFailed as exc:
            raise VerifyError(str(exc)) from None
        return {"epi": True, "map": f.as_dict()}, EXIT_OK
    if args.action == "pro-distinct":
        try:
            out = tower.pro_distinct(a, b)
        except tower.VerificationFailed as exc:
            raise VerifyError(str(exc)) from None
        return out, (EXIT_OK if out["distinct"] else EXIT_FALSE)
    out = tower.ladder_search(a, b, args.depth, verify=True, rng=random.Random(args.seed))
    if out.get("commutes") is False:
        return out, EXIT_VERIFY
    return out, (EXIT_OK if out["found"] else EXIT_FALSE)


# -- groupring -------------------------------------------------------------

def _group(data):
    return groupring.group_from_json(data.get("group", "Z2"))


def cmd_groupring(args, data):
    rng = random.Random(args.seed)
    if args.action == "kernel-split":
        if data is None:
            q = groupring.named_group(args.group or "Z2")
            inst = groupring.random_split_instance(q, rng)
            theta, split = inst.theta, inst.split
        else:
            q = _group(data)
            theta = groupring.GRMatrix.from_coeffs(q, data["theta"], data.get("rows"), data.get("cols"))
            split = int(data["split"])
        res = groupring.kernel_split(theta, split)
        out = {
            "theta": groupring.matrix_to_json(theta),
            "split": split,
            "alpha": res["alpha"].to_coeffs(),
            "kernel_rank": res["kernel_rank"],
            "kernel_A_rank": res["kernel_A_rank"],
            "checks": res["checks"],
            "ok": res["ok"],
        }
        return out, (EXIT_OK if res["ok"] else EXIT_VERIFY)
    if args.action == "lift":
        data = _need(data, '{"d": integer matrix, "group": ...}')
        q = _group(data)
        res = groupring.equivariant_kernel_lift(data["d"], q, data.get("cols"))
        res["basis"] = [[list(x.coeffs) for x in v] for v in res["basis"]]
        return res, (EXIT_OK if res["free"] else EXIT_VERIFY)
    data = _need(data, "a complex")
    q = _group(data)
    if args.action == "chain-check":
        maps = [groupring.GRMatrix.from_coeffs(q, m) if isinstance(m, list) else groupring.matrix_from_json(m, q)
                for m in data["maps"]]
        res = groupring.chain_check(maps)
        res["homology"] = {str(k): v for k, v in res["homology"].items()}
        return res, (EXIT_OK if res["acyclic"] else EXIT_FALSE)
    d2 = groupring.matrix_from_json(data["d2"], q) if isinstance(data["d2"], dict) \
        else groupring.GRMatrix.from_coeffs(q, data["d2"])
    d3 = None
    if data.get("d3") is not None:
        d3 = groupring.matrix_from_json(data["d3"], q) if isinstance(data["d3"], dict) \
            else groupring.GRMatrix.from_coeffs(q, data["d3"], d2.cols, None)
    res = groupring.cocompact_dual_check(d2, d3)
    return res, (EXIT_OK if res["ok"] else EXIT_VERIFY)


# -- suite -----------------------------------------------------------------

def cmd_suite(args, data):
    out = suite.run_all(args.seed)
    return out, (EXIT_OK if out["ok"] else EXIT_VERIFY)


VERBS = {
    "perm": (cmd_perm, ["derived-series", "perfect-core", "extension-check"]),
    "thompson": (cmd_thompson, ["order", "multiply"]),
    "freeprod": (cmd_freeprod, ["partial-conj", "pattern"]),
    "presentation": (cmd_presentation, ["normal-form", "semidirect", "gt-tower"]),
    "tower": (cmd_tower, ["iso", "epi", "pro-distinct", "ladder-search", "order"]),
    "groupring": (cmd_groupring, ["kernel-split", "lift", "chain-check", "dual-check"]),
    "suite": (cmd_suite, ["all"]),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="collar-algebra", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, actions) in VERBS.items():
        p = sub.add_parser(verb)
        p.add_argument("action", choices=actions)
        p.add_argument("--input", help="JSON file, '-' for stdin, or inline JSON")
        p.add_argument("--json", action="store_true", help="compact canonical JSON on one line")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cap", type=int, default=None, help="closure / order cap")
        if verb == "tower":
            p.add_argument("--a")
            p.add_argument("--b")
            p.add_argument("--depth", type=int, default=None)
        if verb == "perm":
            p.add_argument("--group", help="fixture group name, e.g. S3, A5, A5xA5")
        if verb == "groupring":
            p.add_argument("--group", help="Z2, Z3, S3, ... for random instances")
        if verb in ("thompson", "freeprod"):
            p.add_argument("--prime", type=int, default=None, help="use element_of_order(prime)")
        if verb == "presentation":
            p.add_argument("--j", type=int, default=None)
    return parser


def run(argv=None) -> tuple[int, dict]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_INPUT), {}
    handler = VERBS[args.verb][0]
    try:
        data = _read_input(args)
        out, code = handler(args, data)
    except (InputError, PresentationError, tower.InvalidPrimeSeq, perm.NotNormal, perm.GroupTooLarge,
            groupring.DimensionError, groupring.PreconditionError, KeyError, TypeError, ValueError) as exc:
        return EXIT_INPUT, {"error": f"{type(exc).__name__}: {exc}"}
    except (VerifyError, tower.VerificationFailed, groupring.VerificationFailed, ArithmeticError) as exc:
        return EXIT_VERIFY, {"error": f"{type(exc).__name__}: {exc}"}
    return code, out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, out = run(argv)
    if out:
        compact = "--json" in argv
        text = canonical(out) if compact else json.dumps(out, sort_keys=True, indent=2)
        (sys.stderr if "error" in out else sys.stdout).write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
