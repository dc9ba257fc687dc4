"""Command-line interface: ``primesum {embed,verify,oracle,stats,generate}``.

Every subcommand writes one JSON document (stdout unless ``--json PATH``).
Big integers are always written as decimal strings.  Exit codes: 0 ok,
1 verification failure, 2 input error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .embed import EmbedConfig, Embedding, embed_coprime, embed_prime
from .graphs import (
    EXHAUSTIVE_CAP,
    CapExceeded,
    CoprimeSum,
    PrimeSum,
    average_degree,
    check_bipartite_parity,
    edge_count,
    sampled_average_degree,
    to_dot,
)
from .numtheory import BudgetExceeded, PrimalityConfig
from .tree import Tree, TreeError, canonical_form, enumerate_free_trees, parse_tree, random_tree
from .verify import VerificationReport, find_induced, max_universal_m, verify_induced

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
PARITY_SCAN_CAP = 20_000


class InputError(Exception):
    pass


def _manifest(command: str, config: dict, digest: str | None) -> dict:
    return {"subcommand": command, "config": config, "input_sha256": digest, "version": __version__}


def _read_tree(path: str) -> tuple[Tree, str]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read tree file {path}: {exc.strerror}") from exc
    try:
        return parse_tree(raw.decode("utf-8")), hashlib.sha256(raw).hexdigest()
    except TreeError as exc:
        raise InputError(f"{path}: {exc}") from exc


def report_json(report: VerificationReport) -> dict:
    out = []
    for v in report.violations:
        row = asdict(v)
        row["pair"] = list(v.pair)
        if v.label_sum is not None:
            row["label_sum"] = str(v.label_sum)
        out.append(row)
    return {"ok": report.ok, "violations": out}


def embedding_json(t: Tree, emb: Embedding) -> dict:
    ra = emb.residues
    return {
        "m": t.m,
        "d": emb.encoding.d,
        "q": str(emb.q),
        "moduli": list(ra.moduli),
        "codes": {str(v): list(c) for v, c in emb.encoding.codes.items()},
        "residues": [str(ra.residues[v]) for v in t.vertices],
        "labels": [str(j) for j in emb.label_list()],
        "max_label": str(emb.max_label),
        "target": emb.target,
        "n": str(emb.n),
        "trace": [
            {
                "vertex": s.vertex,
                "parent": s.parent,
                "label": str(s.label),
                "prime": None if s.prime is None else str(s.prime),
            }
            for s in emb.trace
        ],
    }


def cmd_embed(args) -> tuple[dict, int]:
    t, digest = _read_tree(args.tree)
    primality = PrimalityConfig(probabilistic_rounds=args.mr_rounds, rng_seed=args.seed)
    config = {
        "target": args.target,
        "root": args.root,
        "start_multiplier": args.start_multiplier,
        "seed": args.seed,
        "mr_rounds": args.mr_rounds,
        "budget": args.budget,
    }
    if args.target == "prime":
        if not 1 <= args.root <= t.m:
            raise InputError(f"--root {args.root} outside 1..{t.m}")
        cfg = EmbedConfig(args.start_multiplier, args.root, primality, args.budget)
        emb = embed_prime(t, cfg)
        host = PrimeSum(emb.n, primality)
    else:
        emb = embed_coprime(t)
        host = CoprimeSum(emb.n, emb.q, emb.residues.moduli)
    report = verify_induced(t, emb.label_list(), host)
    doc = embedding_json(t, emb)
    doc["verification"] = report_json(report)
    doc["manifest"] = _manifest("embed", config, digest)
    if args.dot:
        names = {str(v): emb.labels[v] for v in t.vertices}
        Path(args.dot).write_text(to_dot(host, names, [(str(u), str(v)) for u, v in sorted(t.edges)]))
    return doc, EXIT_OK if report.ok else EXIT_VERIFY


def _parse_labels(text: str) -> list[int]:
    try:
        labels = [int(x) for x in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"labels must be integers: {text!r}") from exc
    if any(j < 1 for j in labels):
        raise InputError("labels must be positive integers")
    return labels


def _host(kind: str, n: int | None, q: int | None):
    if n is None or n < 1:
        raise InputError("--n must be a positive integer")
    if kind == "prime":
        return PrimeSum(n)
    if q is None or q < 2:
        raise InputError("--q (at least 2) is required for the coprime graph")
    return CoprimeSum(n, q)


def cmd_verify(args) -> tuple[dict, int]:
    t, digest = _read_tree(args.tree)
    labels = _parse_labels(args.labels)
    if len(labels) != t.m:
        raise InputError(f"expected {t.m} labels, got {len(labels)}")
    g = _host(args.target, args.n, args.q)
    report = verify_induced(t, labels, g)
    config = {"target": args.target, "n": args.n, "q": args.q, "labels": [str(j) for j in labels]}
    doc = report_json(report)
    doc["manifest"] = _manifest("verify", config, digest)
    return doc, EXIT_OK if report.ok else EXIT_VERIFY


def cmd_oracle(args) -> tuple[dict, int]:
    if args.n is None or args.n < 1:
        raise InputError("--n must be a positive integer")
    M = max_universal_m(args.n)
    max_m = args.max_m if args.max_m is not None else min(M + 1, args.n)
    g = PrimeSum(args.n)
    rows = []
    for m in range(1, max_m + 1):
        for t in enumerate_free_trees(m, cap=16):
            labels = find_induced(t, g)
            rows.append(
                {
                    "m": m,
                    "canonical": canonical_form(t),
                    "edges": [list(e) for e in sorted(t.edges)],
                    "labels": labels,
                }
            )
    doc = {"n": args.n, "M": M, "trees": rows}
    doc["manifest"] = _manifest("oracle", {"n": args.n, "max_m": max_m}, None)
    return doc, EXIT_OK


def cmd_stats(args) -> tuple[dict, int]:
    g = _host(args.kind, args.n, args.q)
    doc: dict = {"kind": args.kind, "n": args.n, "q": args.q}
    if g.n <= EXHAUSTIVE_CAP:
        avg = average_degree(g)
        doc.update(
            mode="exact",
            average_degree=str(avg),
            average_degree_float=float(avg),
            edge_count=str(edge_count(g)),
        )
    else:
        est, err = sampled_average_degree(g, args.samples, args.seed)
        doc.update(mode="sampled", average_degree=est, standard_error=err, edge_count=None)
    if args.kind == "prime":
        doc["bipartite"] = check_bipartite_parity(g.n) if g.n <= PARITY_SCAN_CAP else None
    config = {"kind": args.kind, "n": args.n, "q": args.q, "samples": args.samples, "seed": args.seed}
    doc["manifest"] = _manifest("stats", config, None)
    return doc, EXIT_OK


def cmd_generate(args) -> tuple[dict, int]:
    if args.m is None or args.m < 1:
        raise InputError("--m must be a positive integer")
    if args.free:
        try:
            trees = enumerate_free_trees(args.m)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        trees = [random_tree(args.m, args.seed)]
    doc = {
        "m": args.m,
        "trees": [{"canonical": canonical_form(t), "text": t.serialize()} for t in trees],
        "manifest": _manifest("generate", {"m": args.m, "seed": args.seed, "free": args.free}, None),
    }
    if args.out:
        Path(args.out).write_text(trees[0].serialize())
    return doc, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="primesum", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", metavar="PATH", help="write JSON here instead of stdout")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("embed", help="embed a tree as an induced subgraph")
    p.add_argument("--tree", required=True, metavar="PATH")
    p.add_argument("--target", choices=["prime", "coprime"], default="prime")
    p.add_argument("--root", type=int, default=1)
    p.add_argument("--start-multiplier", type=int, default=1)
    p.add_argument("--mr-rounds", type=int, default=64)
    p.add_argument("--budget", type=int, default=None, help="max primality tests per prime search")
    p.add_argument("--dot", metavar="PATH", help="also write a DOT rendering of the copy")
    common(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="check labels against a tree and host graph")
    p.add_argument("--tree", required=True, metavar="PATH")
    p.add_argument("--labels", required=True, help="comma or space separated, one per vertex 1..m")
    p.add_argument("--target", choices=["prime", "coprime"], default="prime")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive induced-copy search and M(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-m", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("stats", help="degree statistics of P_n or Q_n(q)")
    p.add_argument("--kind", choices=["prime", "coprime"], default="prime")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--samples", type=int, default=200, help="vertices sampled beyond the exact cap")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("generate", help="random labeled tree or all free trees")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--free", action="store_true", help="enumerate one tree per isomorphism class")
    p.add_argument("--out", metavar="PATH", help="write the (first) tree in edge-list format")
    common(p)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TreeError, ValueError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: search budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    text = json.dumps(doc, indent=2) + "\n"
    if args.json:
        Path(args.json).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def run() -> None:
    sys.exit(main())
