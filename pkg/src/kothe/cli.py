"""Command-line interface: ``kothe classify | oracle | demo | corpus``.

Exit codes: 0 completed, 2 invalid input, 3 cap exceeded, 4 corpus disagreement.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from kothe.classifier import Assumptions, classify_kothe, classify_pure_semisimple
from kothe.corpus import coefficient_rings, disagreements, run_corpus, small_groups, to_csv
from kothe.descriptors import (
    DEFAULT_CAP,
    DEFAULT_GROUP_CAP,
    DEFAULT_LATTICE_CAP,
    SCHEMA_VERSION,
    CapExceeded,
    DescriptorError,
    group_from_json,
    ring_from_json,
)
from kothe.materialize import materialize_ring
from kothe.rings import (
    LEFT,
    RIGHT,
    InvalidRing,
    NotAbelianError,
    all_one_sided_ideals,
    center_mask,
    decompose_into_local,
    idempotents,
    is_pir,
    jacobson_radical,
    principal_ideals,
    radical_nilpotency_index,
)

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_DISAGREE = 0, 2, 3, 4


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"malformed JSON: {exc}") from exc


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP,
                   help="largest ring (in elements) that may be materialized")
    p.add_argument("--lattice-cap", type=_positive, default=DEFAULT_LATTICE_CAP)
    p.add_argument("--group-cap", type=_positive, default=DEFAULT_GROUP_CAP)


def _assumptions(args) -> Assumptions:
    return Assumptions(abelian_group_ring=getattr(args, "assume_abelian", None), cap=args.cap,
                       lattice_cap=args.lattice_cap, group_cap=args.group_cap)


# ----------------------------------------------------------------- commands


def cmd_classify(args) -> int:
    rd = ring_from_json(_json_arg(args.ring))
    gd = group_from_json(_json_arg(args.group))
    classify = classify_kothe if args.question == "kothe" else classify_pure_semisimple
    v = classify(rd, gd, _assumptions(args))
    print(_dump(v.to_dict()) if args.json else v.render())
    return EXIT_OK


def _ideal_dict(R, I) -> dict:
    return {"size": I.size, "elements": I.elements, "labels": [R.label(x) for x in I.elements],
            "generators": list(I.generators)}


def _oracle_report(kind: str, R, lattice_cap: int) -> dict:
    if kind == "pir":
        out = {}
        for side in (LEFT, RIGHT):
            res = is_pir(R, side)
            entry = {"is_pir": res.is_pir, "principal_ideals": len(principal_ideals(R, side)),
                     "witness": _ideal_dict(R, res.witness) if res.witness is not None else None}
            try:
                entry["ideals"] = len(all_one_sided_ideals(R, side, lattice_cap))
            except CapExceeded as exc:
                entry["ideals"] = f"not enumerated ({exc})"
            out[side] = entry
        return out
    if kind == "idempotents":
        central = center_mask(R)
        idem = idempotents(R)
        return {"idempotents": idem, "central": [e for e in idem if central[e]],
                "non_central": [e for e in idem if not central[e]],
                "labels": {str(e): R.label(e) for e in idem}}
    if kind == "radical":
        J = jacobson_radical(R)
        return {"radical": _ideal_dict(R, J), "nilpotency_index": radical_nilpotency_index(R)}
    if kind == "local-decomp":
        try:
            factors = decompose_into_local(R)
        except NotAbelianError as exc:
            return {"abelian": False, "non_central_idempotent": exc.witness,
                    "label": R.label(exc.witness)}
        return {"abelian": True, "factors": [
            {"idempotent": f.idempotent, "label": R.label(f.idempotent), "size": f.factor.size,
             "residue_characteristic": f.residue_char, "semiprimitive": f.semiprimitive,
             "elements": [int(x) for x in f.elements]}
            for f in factors]}
    raise ValueError(kind)


def _render_oracle(kind: str, R, rep: dict) -> str:
    lines = [f"{kind} oracle on {R.name} ({R.size} elements)"]
    if kind == "pir":
        for side, e in rep.items():
            verdict = "PIR" if e["is_pir"] else "not PIR"
            lines.append(f"  {side}: {verdict}; {e['principal_ideals']} principal ideals, "
                         f"{e['ideals']} ideals")
            if e["witness"]:
                w = e["witness"]
                lines.append(f"    witness (generated by {w['generators']}): {{{', '.join(w['labels'])}}}")
    elif kind == "idempotents":
        lines.append(f"  central: {', '.join(rep['labels'][str(e)] for e in rep['central'])}")
        nc = rep["non_central"]
        lines.append(f"  non-central ({len(nc)}): {', '.join(rep['labels'][str(e)] for e in nc) or '-'}")
    elif kind == "radical":
        r = rep["radical"]
        lines.append(f"  J = {{{', '.join(r['labels'])}}} ({r['size']} elements)")
        lines.append(f"  nilpotency index {rep['nilpotency_index']}")
    else:
        if not rep["abelian"]:
            lines.append(f"  not abelian: {rep['label']} is a non-central idempotent")
        else:
            lines.append(f"  {len(rep['factors'])} local factor(s)")
            for f in rep["factors"]:
                lines.append(f"    {f['label']} * R: {f['size']} elements, residue characteristic "
                             f"{f['residue_characteristic']}, "
                             f"{'semiprimitive' if f['semiprimitive'] else 'nonzero radical'}")
    return "\n".join(lines)


def cmd_oracle(args) -> int:
    rd = ring_from_json(_json_arg(args.ring))
    R = materialize_ring(rd, args.cap)
    rep = _oracle_report(args.kind, R, args.lattice_cap)
    if args.json:
        print(_dump({"v": SCHEMA_VERSION, "oracle": args.kind, "ring": R.name, "size": R.size,
                     "report": rep}))
    else:
        print(_render_oracle(args.kind, R, rep))
    return EXIT_OK


def cmd_demo(args) -> int:
    from kothe.demo import run_demo

    results = run_demo()
    if args.json:
        print(_dump({"v": SCHEMA_VERSION, "fixtures": [r.to_dict() for r in results]}))
        return EXIT_OK
    for r in results:
        mark = "ok" if r.matches else "MISMATCH"
        print(f"[{r.fixture.source}] {r.fixture.name}: expected {r.fixture.expected.value} ({mark})")
        print("  " + r.verdict.render().replace("\n", "\n  "))
        for c in r.checks:
            print(f"  check: {c}")
        print()
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.ring:
        rings = [ring_from_json(_json_arg(t)) for t in args.ring]
    else:
        rings = coefficient_rings(args.max_ring_card)
    if args.group:
        groups = [group_from_json(_json_arg(t)) for t in args.group]
    else:
        groups = small_groups(args.max_group_order)
    a = Assumptions(cap=max(args.cap, args.max_size), lattice_cap=args.lattice_cap,
                    group_cap=args.group_cap)
    rows = run_corpus(rings, groups, args.max_size, a)
    text = to_csv(rows)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    bad = disagreements(rows)
    print(f"{len(rows)} instances, {len(bad)} disagreements", file=sys.stderr)
    return EXIT_DISAGREE if bad else EXIT_OK


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kothe", description="Köthe and pure-semisimple group rings")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide a question for R[G]")
    p.add_argument("question", choices=["kothe", "pss"])
    p.add_argument("--ring", required=True, help="ring descriptor (JSON)")
    p.add_argument("--group", required=True, help="group descriptor (JSON)")
    p.add_argument("--assume-abelian", dest="assume_abelian", action="store_const", const=True,
                   default=None, help="assert that R[G] is abelian when it is too large to check")
    p.add_argument("--json", action="store_true")
    _add_caps(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("oracle", help="exhaustive ring oracles")
    p.add_argument("kind", choices=["pir", "idempotents", "radical", "local-decomp"])
    p.add_argument("--ring", required=True)
    p.add_argument("--json", action="store_true")
    _add_caps(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("demo", help="run the worked example fixtures")
    p.add_argument("which", choices=["paper-examples"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("corpus", help="cross-check symbolic rules against brute force")
    p.add_argument("--max-ring-card", type=_positive, default=9)
    p.add_argument("--max-group-order", type=_positive, default=8)
    p.add_argument("--max-size", type=_positive, default=4096)
    p.add_argument("--ring", action="append", help="ring descriptor (JSON), repeatable")
    p.add_argument("--group", action="append", help="group descriptor (JSON), repeatable")
    p.add_argument("--csv", help="write the table here instead of stdout")
    _add_caps(p)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (DescriptorError, InvalidRing) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
