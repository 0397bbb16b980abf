"""Command-line entry point.

Exit codes: 0 = true/success, 1 = false/counterexample (printed), 2 = usage
or data error.  Text output is human-readable; --format json emits one JSON
record per line with sorted keys, so identical configurations (including
--seed) produce byte-identical output.  The MW_BUDGET environment variable
overrides the default enumeration (10**6) and search (10**7) budgets;
explicit --budget flags win over it.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from . import congruences as cong
from . import homomorphisms as homs
from . import rewriting, sampling, words
from .algebras import (
    check_identity,
    dump_algebra,
    is_maltsev_operation,
    load_algebra,
    maltsev_from_group,
    maltsev_from_left_loop,
    maltsev_from_quasigroup,
    parse_identity,
    with_operation,
)
from .errors import MaltsevError
from .terms import MALTSEV_SIGNATURE, format_term, parse_term
from .termsearch import find_maltsev_term
from .words import HeapWord, format_word, parse_letters, reduce

ENUM_BUDGET = 10**6
SEARCH_BUDGET = 10**7


@dataclass
class RunConfig:
    command: tuple[str, ...]
    options: dict
    output_format: str = "text"
    seed: int = 0
    enum_budget: int = ENUM_BUDGET
    search_budget: int = SEARCH_BUDGET


class Report:
    """Collects text lines and one machine-readable record per command."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.record: dict = {}

    def text(self, line: str):
        self.lines.append(line)

    def emit(self, **fields):
        self.record.update(fields)

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps(self.record, sort_keys=True, separators=(",", ":"))
        return "\n".join(self.lines)


def _read_algebra(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return load_algebra(json.load(fh))


def _parse_map(text: str | None) -> dict[str, str] | None:
    if text is None:
        return None
    out = {}
    for chunk in text.split(","):
        if not chunk:
            continue
        if "=" not in chunk:
            raise MaltsevError(f"bad mapping entry {chunk!r}, expected var=gen")
        var_name, gen = chunk.split("=", 1)
        out[var_name.strip()] = gen.strip()
    return out


# ---------------------------------------------------------------------------
# Command handlers.  Each returns an exit code and fills the report.


def cmd_normalize(cfg: RunConfig, rep: Report) -> int:
    t = parse_term(cfg.options["term"], MALTSEV_SIGNATURE)
    nf = rewriting.normalize(t)
    rep.text(format_term(nf))
    rep.emit(command="normalize", input=format_term(t), normal_form=format_term(nf))
    return 0


def cmd_equal(cfg: RunConfig, rep: Report) -> int:
    lhs = parse_term(cfg.options["lhs"], MALTSEV_SIGNATURE)
    rhs = parse_term(cfg.options["rhs"], MALTSEV_SIGNATURE)
    same = rewriting.equal_in_free(lhs, rhs)
    rep.text("true" if same else "false")
    if not same:
        rep.text(f"lhs normal form: {format_term(rewriting.normalize(lhs))}")
        rep.text(f"rhs normal form: {format_term(rewriting.normalize(rhs))}")
    rep.emit(
        command="equal",
        equal=same,
        lhs_normal_form=format_term(rewriting.normalize(lhs)),
        rhs_normal_form=format_term(rewriting.normalize(rhs)),
    )
    return 0 if same else 1


def cmd_count_m(cfg: RunConfig, rep: Report) -> int:
    m, n = cfg.options["generators"], cfg.options["level"]
    value = rewriting.count_M(
        m, n, oracle=cfg.options["oracle"], budget=cfg.enum_budget
    )
    rep.text(str(value))
    rep.emit(
        command="count-m",
        generators=m,
        level=n,
        oracle=cfg.options["oracle"],
        count=str(value),
    )
    return 0


def cmd_confluence_report(cfg: RunConfig, rep: Report) -> int:
    report = rewriting.check_confluence()
    pairs = []
    for pair, joinable in report.entries:
        pairs.append(
            {
                "peak": format_term(pair.peak),
                "left": format_term(pair.left_result),
                "right": format_term(pair.right_result),
                "position": list(pair.position),
                "joinable": joinable,
            }
        )
        rep.text(
            f"critical pair at {list(pair.position)}: peak {format_term(pair.peak)}"
            f" -> {format_term(pair.left_result)} | {format_term(pair.right_result)}"
            f" : {'joinable' if joinable else 'NOT JOINABLE'}"
        )
    verdict = report.locally_confluent
    rep.text(f"critical pairs: {len(pairs)}")
    rep.text(f"locally confluent: {'true' if verdict else 'false'}")
    rep.emit(command="confluence-report", pairs=pairs, locally_confluent=verdict)
    return 0 if verdict else 1


def cmd_fg(cfg: RunConfig, rep: Report) -> int:
    sub = cfg.command[1]
    if sub == "reduce":
        w = reduce(parse_letters(cfg.options["word"]))
        rep.text(format_word(w))
        rep.emit(command="fg reduce", word=format_word(w), length=len(w))
        return 0
    if sub == "mul":
        a = reduce(parse_letters(cfg.options["a"]))
        b = reduce(parse_letters(cfg.options["b"]))
        w = words.fg_mul(a, b)
        rep.text(format_word(w))
        rep.emit(command="fg mul", word=format_word(w), length=len(w))
        return 0
    if sub == "inv":
        a = reduce(parse_letters(cfg.options["a"]))
        w = words.fg_inv(a)
        rep.text(format_word(w))
        rep.emit(command="fg inv", word=format_word(w), length=len(w))
        return 0
    raise MaltsevError(f"unknown fg subcommand {sub!r}")


def cmd_heap(cfg: RunConfig, rep: Report) -> int:
    sub = cfg.command[1]
    if sub == "member":
        w = reduce(parse_letters(cfg.options["word"]))
        member = words.is_heap_word(w)
        rep.text("true" if member else "false")
        rep.emit(command="heap member", word=format_word(w), member=member)
        return 0 if member else 1
    if sub == "mu":
        a, b, c = (
            HeapWord(reduce(parse_letters(cfg.options[key]))) for key in ("a", "b", "c")
        )
        w = words.heap_mu(a, b, c)
        rep.text(format_word(w))
        rep.emit(command="heap mu", word=format_word(w), stratum=w.stratum)
        return 0
    if sub == "group-ops":
        base = HeapWord(reduce(parse_letters(cfg.options["base"])))
        group = words.heap_group_ops(base)
        rep.text(f"identity: {format_word(group.identity)}")
        record = {"command": "heap group-ops", "identity": format_word(group.identity)}
        if cfg.options.get("u"):
            u = HeapWord(reduce(parse_letters(cfg.options["u"])))
            record["inverse_u"] = format_word(group.inv(u))
            rep.text(f"inv(u): {record['inverse_u']}")
            if cfg.options.get("v"):
                v = HeapWord(reduce(parse_letters(cfg.options["v"])))
                record["product_uv"] = format_word(group.mul(u, v))
                rep.text(f"u * v: {record['product_uv']}")
        rep.emit(**record)
        return 0
    raise MaltsevError(f"unknown heap subcommand {sub!r}")


def cmd_hom(cfg: RunConfig, rep: Report) -> int:
    sub = cfg.command[1]
    t = parse_term(cfg.options["term"], MALTSEV_SIGNATURE)
    if sub == "group":
        w = homs.hom_to_group(t, _parse_map(cfg.options.get("map")))
        rep.text(format_word(w))
        rep.emit(command="hom group", word=format_word(w), length=len(w))
        return 0
    if sub == "separate":
        value = homs.separating_hom(t, cfg.options["witness"])
        rep.text(str(value))
        rep.emit(command="hom separate", value=value, witness=cfg.options["witness"])
        return 0
    raise MaltsevError(f"unknown hom subcommand {sub!r}")


def cmd_algebra(cfg: RunConfig, rep: Report) -> int:
    sub = cfg.command[1]
    alg = _read_algebra(cfg.options["file"])
    if sub == "check-identity":
        ident = parse_identity(cfg.options["identity"], alg.signature)
        failure = check_identity(alg, ident)
        if failure is None:
            rep.text("holds")
            rep.emit(command="algebra check-identity", holds=True)
            return 0
        rep.text(f"counterexample: {failure}")
        rep.emit(command="algebra check-identity", holds=False, counterexample=failure)
        return 1
    if sub == "maltsev-check":
        ok = is_maltsev_operation(alg, cfg.options["symbol"])
        rep.text("true" if ok else "false")
        rep.emit(command="algebra maltsev-check", symbol=cfg.options["symbol"], maltsev=ok)
        return 0 if ok else 1
    if sub == "derive-maltsev":
        kind = cfg.options["from"]
        if kind == "group":
            table = maltsev_from_group(alg)
        elif kind == "left-loop":
            table = maltsev_from_left_loop(alg)
        elif kind == "quasigroup":
            table = maltsev_from_quasigroup(alg)
        else:
            raise MaltsevError(f"unknown derivation source {kind!r}")
        derived = with_operation(alg, "mu", table)
        verified = is_maltsev_operation(derived, "mu")
        doc = dump_algebra(derived)
        rep.text(json.dumps(doc, indent=2, sort_keys=True))
        rep.text(f"verified maltsev: {'true' if verified else 'false'}")
        rep.emit(command="algebra derive-maltsev", algebra=doc, verified=verified)
        return 0 if verified else 1
    if sub == "congruences":
        max_size = cfg.options["max_size"]
        if alg.size > 8 and alg.size <= max_size:
            rep.text(
                f"warning: carrier size {alg.size} above the default guard of 8;"
                " principal-congruence generation scans all element pairs and"
                " may be slow"
            )
        lattice = cong.all_congruences(alg, max_size=max_size)
        partitions = [cong.format_partition(c.partition) for c in lattice]
        for p in partitions:
            rep.text(p)
        rep.text(f"count: {len(partitions)}")
        record = {"command": "algebra congruences", "congruences": partitions}
        code = 0
        if cfg.options["check_permutability"]:
            failing = None
            for i, theta in enumerate(lattice):
                for phi in lattice[i + 1 :]:
                    if not cong.permute(alg, theta, phi):
                        failing = (
                            cong.format_partition(theta.partition),
                            cong.format_partition(phi.partition),
                        )
                        break
                if failing:
                    break
            record["permutable"] = failing is None
            if failing is None:
                rep.text("all congruence pairs permute")
            else:
                rep.text(f"non-permuting pair: {failing[0]}  {failing[1]}")
                record["counterexample"] = list(failing)
                code = 1
        rep.emit(**record)
        return code
    if sub == "principal":
        a, b = (int(x) for x in cfg.options["pair"].split(","))
        theta = cong.principal_congruence(alg, a, b)
        rep.text(cong.format_partition(theta.partition))
        rep.emit(
            command="algebra principal",
            pair=[a, b],
            congruence=cong.format_partition(theta.partition),
        )
        return 0
    if sub == "quotient":
        p = cong.parse_partition(cfg.options["partition"], alg.size)
        violation = cong.find_compatibility_violation(alg, p)
        if violation is not None:
            rep.text(f"not a congruence: violation {violation}")
            rep.emit(command="algebra quotient", congruence=False)
            return 1
        q = cong.quotient(alg, cong.Congruence(alg, p))
        doc = dump_algebra(q)
        rep.text(json.dumps(doc, indent=2, sort_keys=True))
        rep.emit(command="algebra quotient", congruence=True, algebra=doc)
        return 0
    if sub == "maltsev-term":
        outcome = find_maltsev_term(alg, budget=cfg.search_budget)
        record = {
            "command": "algebra maltsev-term",
            "status": outcome.status,
            "visited": outcome.visited,
        }
        if outcome.status == "found":
            text = format_term(outcome.term)
            rep.text(text)
            rep.text("verified: true")
            record["term"] = text
            record["verified"] = True
            rep.emit(**record)
            return 0
        rep.text(outcome.status)
        rep.emit(**record)
        return 1 if outcome.status == "none" else 2
    raise MaltsevError(f"unknown algebra subcommand {sub!r}")


def cmd_selftest(cfg: RunConfig, rep: Report) -> int:
    """Randomized invariants at a quick desk scale, reproducible by seed."""
    rng = random.Random(cfg.seed)
    iterations = cfg.options.get("iterations", 500)
    gens = ("x", "y", "z")
    checks: list[tuple[str, bool]] = []

    ok = True
    for _ in range(iterations):
        t = sampling.random_term(rng, gens, 6)
        inner = _strategy_fixpoint(t, rewriting.rewrite_once)
        outer = _strategy_fixpoint(t, rewriting.rewrite_once_outermost)
        if inner != outer or inner != rewriting.normalize(t):
            ok = False
            break
    checks.append(("strategy-independence", ok))

    ok = True
    for _ in range(iterations):
        t = sampling.random_term(rng, gens, 4)
        s = sampling.axiom_walk(rng, t, 8, gens)
        if not rewriting.equal_in_free(t, s):
            ok = False
            break
    checks.append(("axiom-walk-equivalence", ok))

    ok = True
    for _ in range(iterations):
        raw = list(sampling.random_letters(rng, gens, 12))
        expected = words.reduce(raw)
        for _ in range(3):
            shuffled_order = _random_deletion(rng, raw)
            if shuffled_order != expected:
                ok = False
        if not ok:
            break
    checks.append(("reduction-order-independence", ok))

    ok = True
    for _ in range(iterations):
        a, b, c, d, e = (sampling.random_heap_word(rng, gens, 3) for _ in range(5))
        lhs = words.heap_mu(words.heap_mu(a, b, c), d, e)
        mid = words.heap_mu(a, words.heap_mu(d, c, b), e)
        rhs = words.heap_mu(a, b, words.heap_mu(c, d, e))
        if lhs != mid or mid != rhs:
            ok = False
            break
    checks.append(("heap-para-associativity", ok))

    ok = True
    for _ in range(iterations):
        t = sampling.random_term(rng, gens, 5)
        if homs.hom_to_group(t) != homs.hom_to_group(rewriting.normalize(t)):
            ok = False
            break
    checks.append(("hom-normalization-invariance", ok))

    all_ok = all(flag for _, flag in checks)
    for name, flag in checks:
        rep.text(f"{'PASS' if flag else 'FAIL'} {name}")
    rep.text(f"selftest: {'pass' if all_ok else 'fail'} (seed {cfg.seed})")
    rep.emit(
        command="selftest",
        seed=cfg.seed,
        iterations=iterations,
        results={name: flag for name, flag in checks},
        passed=all_ok,
    )
    return 0 if all_ok else 1


def _strategy_fixpoint(t, step):
    while True:
        r = step(t)
        if r is None:
            return t
        t = r


def _random_deletion(rng, raw):
    """Cancel adjacent inverse pairs in random order until none remain."""
    letters = list(raw)
    while True:
        sites = [
            i
            for i in range(len(letters) - 1)
            if letters[i].gen == letters[i + 1].gen
            and letters[i].sign == -letters[i + 1].sign
        ]
        if not sites:
            return words.ReducedWord(tuple(letters))
        i = rng.choice(sites)
        del letters[i : i + 2]


# ---------------------------------------------------------------------------
# Argument parsing and dispatch.

HANDLERS = {
    "normalize": cmd_normalize,
    "equal": cmd_equal,
    "count-m": cmd_count_m,
    "confluence-report": cmd_confluence_report,
    "fg": cmd_fg,
    "heap": cmd_heap,
    "hom": cmd_hom,
    "algebra": cmd_algebra,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maltsev",
        description="Universal-algebra workbench: free-algebra word problem, "
        "free groups and heaps, finite-algebra congruence analysis.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="normal form of a term")
    p.add_argument("--term", required=True)

    p = sub.add_parser("equal", help="word problem for two terms")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)

    p = sub.add_parser("count-m", help="count free-algebra elements by stratum")
    p.add_argument("--generators", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--budget", type=int, default=None)

    sub.add_parser("confluence-report", help="critical pairs and joinability")

    p = sub.add_parser("fg", help="free group on reduced words")
    fg_sub = p.add_subparsers(dest="subcommand", required=True)
    q = fg_sub.add_parser("reduce")
    q.add_argument("--word", required=True)
    q = fg_sub.add_parser("mul")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q = fg_sub.add_parser("inv")
    q.add_argument("--a", required=True)

    p = sub.add_parser("heap", help="free heap inside the free group")
    heap_sub = p.add_subparsers(dest="subcommand", required=True)
    q = heap_sub.add_parser("mu")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--c", required=True)
    q = heap_sub.add_parser("member")
    q.add_argument("--word", required=True)
    q = heap_sub.add_parser("group-ops")
    q.add_argument("--base", required=True)
    q.add_argument("--u")
    q.add_argument("--v")

    p = sub.add_parser("hom", help="homomorphisms out of the free algebra")
    hom_sub = p.add_subparsers(dest="subcommand", required=True)
    q = hom_sub.add_parser("group")
    q.add_argument("--term", required=True)
    q.add_argument("--map")
    q = hom_sub.add_parser("separate")
    q.add_argument("--term", required=True)
    q.add_argument("--witness", required=True)

    p = sub.add_parser("algebra", help="finite-algebra analysis")
    alg_sub = p.add_subparsers(dest="subcommand", required=True)
    q = alg_sub.add_parser("check-identity")
    q.add_argument("--file", required=True)
    q.add_argument("--identity", required=True)
    q = alg_sub.add_parser("maltsev-check")
    q.add_argument("--file", required=True)
    q.add_argument("--symbol", default="mu")
    q = alg_sub.add_parser("derive-maltsev")
    q.add_argument("--file", required=True)
    q.add_argument("--from", dest="source", choices=("group", "left-loop", "quasigroup"), required=True)
    q = alg_sub.add_parser("congruences")
    q.add_argument("--file", required=True)
    q.add_argument("--check-permutability", action="store_true")
    q.add_argument("--max-size", type=int, default=8)
    q = alg_sub.add_parser("principal")
    q.add_argument("--file", required=True)
    q.add_argument("--pair", required=True)
    q = alg_sub.add_parser("quotient")
    q.add_argument("--file", required=True)
    q.add_argument("--partition", required=True)
    q = alg_sub.add_parser("maltsev-term")
    q.add_argument("--file", required=True)
    q.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("selftest", help="seeded randomized property checks")
    p.add_argument("--iterations", type=int, default=500)

    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    env_budget = os.environ.get("MW_BUDGET")
    enum_budget = ENUM_BUDGET
    search_budget = SEARCH_BUDGET
    if env_budget is not None:
        enum_budget = search_budget = int(env_budget)
    explicit = getattr(args, "budget", None)
    if explicit is not None:
        enum_budget = search_budget = explicit

    command = [args.command]
    if getattr(args, "subcommand", None):
        command.append(args.subcommand)

    options = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "subcommand", "format", "seed", "budget")
    }
    if "source" in options:
        options["from"] = options.pop("source")
    if "max_size" not in options and command[0] == "algebra":
        options.setdefault("max_size", 8)

    return RunConfig(
        command=tuple(command),
        options=options,
        output_format=args.format,
        seed=args.seed,
        enum_budget=enum_budget,
        search_budget=search_budget,
    )


def dispatch(cfg: RunConfig) -> tuple[int, str]:
    rep = Report(cfg.output_format)
    try:
        code = HANDLERS[cfg.command[0]](cfg, rep)
    except (MaltsevError, ValueError) as exc:
        rep.text(f"error: {exc}")
        rep.emit(command=" ".join(cfg.command), error=str(exc))
        return 2, rep.render()
    except FileNotFoundError as exc:
        rep.text(f"error: {exc}")
        rep.emit(command=" ".join(cfg.command), error=str(exc))
        return 2, rep.render()
    except json.JSONDecodeError as exc:
        rep.text(f"error: malformed JSON: {exc}")
        rep.emit(command=" ".join(cfg.command), error=f"malformed JSON: {exc}")
        return 2, rep.render()
    return code, rep.render()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = make_config(args)
    code, output = dispatch(cfg)
    if output:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
