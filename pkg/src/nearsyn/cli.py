"""Command-line front end.

Exit codes: 0 success / yes, 1 check failed / no, 2 bad input or budget
error, 3 undecided within the budget.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import automata, starfree
from .affine import construct_a_plus_bn
from .semigroup import BudgetExceeded, FiniteSemigroup, SemigroupError, find_isomorphism
from .syntactic import ContextMode, DisjunctiveCertificate, decide_syntactic, replay_certificate
from .verify import run_verification


class InputError(Exception):
    pass


def dumps(data) -> str:
    """Canonical JSON text: compact separators, insertion key order, trailing newline."""
    return json.dumps(data, separators=(",", ":")) + "\n"


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def read_semigroup(path) -> FiniteSemigroup:
    try:
        return FiniteSemigroup.from_json(_read_json(path))
    except SemigroupError as exc:
        raise InputError(f"{path}: {exc}") from exc


def read_dfa(path) -> automata.Dfa:
    try:
        return automata.Dfa.from_json(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed DFA ({exc})") from exc


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_construct(args) -> int:
    try:
        A = construct_a_plus_bn(args.n, args.max_n)
    except (BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    S = A.add if args.reduct == "add" else A.mul
    c = A.census()
    print(f"A+(B_{args.n}): {len(A)} elements: {c['constant']} constant, "
          f"{c['singleton']} singleton-support, {c['nsupport']} n-support",
          file=sys.stderr)
    data = A.to_json() if args.bundle else S.to_json()
    try:
        _emit(dumps(data), args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_verify(args) -> int:
    if not args.paper:
        print("error: only the --paper suite is available", file=sys.stderr)
        return 2
    if not 1 <= args.n <= args.max_n:
        print(f"error: n must be in [1, {args.max_n}]", file=sys.stderr)
        return 2
    text = args.format == "text"
    log = (lambda r: print(f"{'PASS' if r.status == 'pass' else 'FAIL'}  {r.name:<30} "
                           f"{r.elapsed:7.3f}s  {r.detail}", flush=True)) if text else None
    report = run_verification(args.n, args.out_dir, args.max_n, log=log)
    if text:
        print(f"suite: {'pass' if report.passed else 'fail'} (n = {args.n})")
    else:
        sys.stdout.write(json.dumps(report.to_json(), indent=2) + "\n")
    if args.out_dir:
        Path(args.out_dir).mkdir(parents=True, exist_ok=True)
        (Path(args.out_dir) / f"report_n{args.n}.json").write_text(
            json.dumps(report.to_json(), indent=2) + "\n")
    return 0 if report.passed else 1


def cmd_decide(args) -> int:
    S = read_semigroup(args.path)
    d = decide_syntactic(S, budget=args.budget, mode=ContextMode(args.mode))
    cert_path = None
    if d.decision == "yes":
        cert_path = args.cert or str(Path(args.path).with_suffix("")) + ".cert.json"
        Path(cert_path).write_text(dumps(d.certificate.to_json()))
    if args.format == "json":
        print(json.dumps({"decision": d.decision, "subset": list(d.subset or []),
                          "certificate": cert_path, "nodes": d.nodes, "method": d.method}))
    else:
        print(d.decision)
        if d.decision == "yes":
            print("subset: " + " ".join(S.labels[x] for x in d.subset))
            print(f"certificate: {cert_path}")
    return {"yes": 0, "no": 1, "unknown": 3}[d.decision]


def cmd_replay(args) -> int:
    S = read_semigroup(args.semigroup)
    try:
        cert = DisjunctiveCertificate.from_json(_read_json(args.certificate))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.certificate}: malformed certificate ({exc})") from exc
    ok = replay_certificate(S, cert)
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def cmd_automaton(args) -> int:
    A = read_dfa(args.inp)
    if args.action == "minimize":
        M = automata.minimize(A)
        _emit(M.to_dot() if args.format == "dot" else dumps(M.to_json()), args.out)
        return 0
    tm = automata.transition_monoid(A)
    if args.format == "json":
        data = tm.monoid.to_json()
        data["generators"] = tm.generator_map
        _emit(dumps(data), args.out)
    else:
        labels = tm.monoid.labels
        w = max(len(l) for l in labels)
        lines = [" " * w + " | " + " ".join(l.ljust(w) for l in labels)]
        lines.append("-" * len(lines[0]))
        for i, l in enumerate(labels):
            lines.append(l.ljust(w) + " | " + " ".join(labels[j].ljust(w) for j in tm.monoid.table[i]))
        lines.append("generators: " + ", ".join(f"{a} -> {labels[e]}" for a, e in tm.generator_map.items()))
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_starfree(args) -> int:
    try:
        expr = starfree.parse(args.expr)
        alphabet = starfree.parse_alphabet(args.alphabet)
        D = starfree.compile_starfree(expr, alphabet)
    except (starfree.ParseError, automata.UnknownSymbol) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(D.to_dot() if args.format == "dot" else dumps(D.to_json()), args.emit)
    return 0


def cmd_iso(args) -> int:
    S, T = read_semigroup(args.a), read_semigroup(args.b)
    try:
        w = find_isomorphism(S, T, node_budget=args.budget)
    except BudgetExceeded as exc:
        print(f"unknown: {exc}")
        return 3
    if w is None:
        print("not isomorphic")
        return 1
    if args.format == "json":
        print(json.dumps({"mapping": list(w.mapping)}))
    else:
        for x, y in enumerate(w.mapping):
            print(f"{S.labels[x]} -> {T.labels[y]}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nearsyn", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a semigroup reduct of A+(B_n)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--reduct", choices=["add", "mul"], default="add")
    c.add_argument("--out", default=None, help="output path (default stdout)")
    c.add_argument("--bundle", action="store_true", help="write both reducts and element kinds")
    c.add_argument("--max-n", type=int, default=3)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="run the verification suite")
    v.add_argument("--paper", action="store_true", help="run every A+(B_n) check")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--out-dir", default=None, help="write report and certificates here")
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.add_argument("--max-n", type=int, default=3)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("decide", help="is a semigroup (JSON) syntactic?")
    d.add_argument("path")
    d.add_argument("--budget", type=int, default=10_000_000, help="search node limit")
    d.add_argument("--mode", choices=[m.value for m in ContextMode], default="monoid")
    d.add_argument("--cert", default=None, help="certificate output path")
    d.add_argument("--format", choices=["text", "json"], default="text")
    d.set_defaults(func=cmd_decide)

    r = sub.add_parser("replay", help="re-check a disjunctivity certificate")
    r.add_argument("semigroup")
    r.add_argument("certificate")
    r.set_defaults(func=cmd_replay)

    a = sub.add_parser("automaton", help="DFA utilities")
    a.add_argument("action", choices=["minimize", "monoid"])
    a.add_argument("--in", dest="inp", required=True)
    a.add_argument("--out", default=None)
    a.add_argument("--format", choices=["json", "dot", "text"], default=None)
    a.set_defaults(func=cmd_automaton)

    s = sub.add_parser("starfree", help="compile a star-free expression")
    s.add_argument("--expr", required=True)
    s.add_argument("--alphabet", required=True)
    s.add_argument("--emit", default=None)
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s.set_defaults(func=cmd_starfree)

    i = sub.add_parser("iso", help="search for an isomorphism between two semigroups")
    i.add_argument("a")
    i.add_argument("b")
    i.add_argument("--budget", type=int, default=1_000_000)
    i.add_argument("--format", choices=["text", "json"], default="text")
    i.set_defaults(func=cmd_iso)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "func", None) is cmd_automaton and args.format is None:
        args.format = "json" if args.action == "minimize" else "text"
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
