"""Command-line interface.

Exit codes: 0 success, 1 law violation found, 2 parse error,
3 scope/validation error, 4 bad configuration.
"""
from __future__ import annotations

import argparse
import sys

from . import lam, laws
from .gen import GenerationError, random_term
from .hss import InitialSystem, SubstRule, subst
from .lam import (
    DUPAPP,
    LC,
    LCE,
    ExtendedLamSystem,
    check_init_compat,
    eval_flatten,
    fusion_eval_instance,
    fusion_reflexive,
    nonfullness_witness,
    shipped_lce_morphisms,
)
from .laws import (
    LawReport,
    check_bracket_laws,
    check_monad_laws,
    check_theta_composition,
    check_theta_identity,
    fin_contexts,
    is_hss_morphism,
    is_monad_morphism,
)
from .oracle import naive_flatten, naive_subst
from .signatures import Signature, parse_signature_expr
from .syntax import ParseError, parse_term, print_term
from .terms import Fin, LIdx, ScopeError, validate

EXIT_OK = 0
EXIT_LAW_VIOLATION = 1
EXIT_PARSE = 2
EXIT_SCOPE = 3
EXIT_CONFIG = 4

SUITES = (
    "bracket-laws", "monad-laws", "hss-morphism-eval", "monad-morphism-eval",
    "init-compat", "fusion", "oracle-equivalence", "nonfullness", "theta-laws",
)


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bindalg",
                     description="Terms over binding signatures: evaluation, "
                                 "substitution, and randomized law suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, term=False):
        p.add_argument("--sig", default="lc",
                       help="signature: lc, lce, or bind:k1,..+flat expression")
        p.add_argument("--scope", type=int, default=0, help="number of free indices")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=12)
        p.add_argument("--format", choices=("text", "summary"), default="text")
        if term:
            p.add_argument("term", nargs="?", help="term text (see grammar in README)")
            p.add_argument("--term-file", help="read the term from a file instead")

    p_eval = sub.add_parser("eval", help="resolve explicit flattenings")
    common(p_eval, term=True)

    p_subst = sub.add_parser("subst", help="apply a parallel substitution")
    common(p_subst, term=True)
    p_subst.add_argument("--map", default="", dest="bindings",
                         help='bindings "i=term[,j=term...]"')

    p_random = sub.add_parser("random", help="print a seeded random term")
    common(p_random)

    p_check = sub.add_parser("check", help="run a named law suite")
    common(p_check)
    p_check.add_argument("--suite", required=True, choices=SUITES)
    p_check.add_argument("--samples", type=int, default=1000)

    p_validate = sub.add_parser("validate", help="check scope-validity of a term")
    common(p_validate, term=True)

    return parser


def _resolve_sig(expr: str) -> Signature:
    try:
        return parse_signature_expr(expr)
    except ValueError as e:
        raise ConfigError(str(e)) from None


def _input_term(args) -> str:
    if getattr(args, "term_file", None):
        with open(args.term_file) as fh:
            return fh.read().strip()
    if args.term is None:
        raise ConfigError("a term (or --term-file) is required")
    return args.term


def _split_bindings(spec: str) -> list[str]:
    # commas inside flat{...} or parens belong to the term, not the list
    parts, depth, current = [], 0, []
    for ch in spec:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current:
        parts.append("".join(current))
    return [p for p in (s.strip() for s in parts) if p]


def _print_report(report: LawReport, fmt: str, sig: Signature) -> None:
    print(report.summary_line())
    if fmt == "text" and report.failures:
        for t in report.counterexamples:
            try:
                print(f"  counterexample: {print_term(t, sig)}")
            except ValueError:
                print(f"  counterexample: {t!r}")


def _run_check(args) -> int:
    sig = _resolve_sig(args.sig)
    if args.samples < 1:
        raise ConfigError("--samples must be at least 1")
    fmt = args.format
    reports: list[LawReport] = []

    suite = args.suite
    if suite == "bracket-laws":
        from .gen import minimal_term, producible
        from .pointed import const_closed, eta_morphism, identity_on_terms

        fs = [identity_on_terms(sig), eta_morphism()]
        if producible(sig, Fin(0)):
            fs.append(const_closed(minimal_term(sig, Fin(0))))
        for f in fs:
            reports.append(check_bracket_laws(sig, f, args.samples, args.seed,
                                              budget=args.budget))
    elif suite == "monad-laws":
        reports.append(check_monad_laws(sig, args.samples, args.seed,
                                        budget=args.budget))
    elif suite == "theta-laws":
        reports.append(check_theta_identity(sig, args.samples, args.seed,
                                            budget=args.budget))
        reports.append(check_theta_composition(sig, args.samples, args.seed))
    elif suite == "hss-morphism-eval":
        reports.append(is_hss_morphism(
            InitialSystem(LCE), ExtendedLamSystem(),
            lambda t, c: eval_flatten(t, c), args.samples, args.seed,
            budget=args.budget, suite="hss-morphism-eval"))
    elif suite == "monad-morphism-eval":
        reports.append(is_monad_morphism(
            InitialSystem(LCE), InitialSystem(LC),
            lambda t, c: eval_flatten(t, c), args.samples, args.seed,
            budget=args.budget, suite="monad-morphism-eval"))
    elif suite == "init-compat":
        reports.append(check_init_compat(args.samples, args.seed,
                                         budget=args.budget))
    elif suite == "fusion":
        fr = fusion_reflexive(args.samples, args.seed)
        print(fr.summary_line())
        failures = fr.premise_failures + fr.conclusion_failures
        for f in shipped_lce_morphisms():
            r = fusion_eval_instance(f, args.samples, args.seed)
            print(r.summary_line())
            failures += r.premise_failures + r.conclusion_failures
        return EXIT_LAW_VIOLATION if failures else EXIT_OK
    elif suite == "oracle-equivalence":
        reports.extend(_oracle_suite(args))
    elif suite == "nonfullness":
        return _run_nonfullness(args)
    else:
        raise ConfigError(f"unknown suite {suite!r}")

    for r in reports:
        _print_report(r, fmt, sig)
    return EXIT_LAW_VIOLATION if any(r.failures for r in reports) else EXIT_OK


def _oracle_suite(args) -> list[LawReport]:
    import random

    from .laws import LawCollector

    rng = random.Random(args.seed)
    contexts = fin_contexts(3)
    budget = min(args.budget, 25)

    flat_check = LawCollector("oracle-flatten", args.seed)
    for _ in range(args.samples):
        c = rng.choice(contexts)
        t = random_term(LCE, c, budget, rng.randrange(2**32))
        ok = eval_flatten(t, c) == naive_flatten(t, c.n)
        flat_check.record(ok, t if not ok else None)

    subst_check = LawCollector("oracle-subst", args.seed)
    for _ in range(args.samples):
        n = rng.randrange(1, 4)
        t = random_term(LCE, Fin(n), budget, rng.randrange(2**32))
        entries = [random_term(LC, Fin(n), 6, rng.randrange(2**32)) for _ in range(n)]
        rule = SubstRule.from_mapping(
            Fin(n), Fin(n), {LIdx(i): e for i, e in enumerate(entries)})
        ok = subst(LCE, rule, t) == naive_subst(t, entries, n, n)
        subst_check.record(ok, t if not ok else None)

    return [flat_check.finish(args.samples), subst_check.finish(args.samples)]


def _run_nonfullness(args) -> int:
    w = nonfullness_witness(args.samples, args.seed)
    print(w.monad_report.summary_line())
    print(f"tau-square counterexample: {w.counterexample!r}")
    print(f"  mapped node:  {w.mapped_node!r}")
    print(f"  rebuilt node: {w.rebuilt_node!r}")
    status = "confirmed" if w.expected_pattern else "NOT OBSERVED"
    print(f"nonfullness pattern (monad morphism passes, constructor square fails): {status}")
    return EXIT_OK if w.expected_pattern else EXIT_LAW_VIOLATION


def _run_eval(args) -> int:
    sig = _resolve_sig(args.sig)
    if sig != LCE:
        raise ConfigError("eval requires the lce signature")
    t = parse_term(_input_term(args), sig, args.scope)
    print(print_term(eval_flatten(t, Fin(args.scope)), LC))
    return EXIT_OK


def _run_subst(args) -> int:
    sig = _resolve_sig(args.sig)
    t = parse_term(_input_term(args), sig, args.scope)
    mapping = {}
    for piece in _split_bindings(args.bindings):
        idx_text, eq, term_text = piece.partition("=")
        if not eq:
            raise ConfigError(f"binding {piece!r} is not of the form i=term")
        try:
            i = int(idx_text.strip())
        except ValueError:
            raise ConfigError(f"binding index {idx_text!r} is not a number") from None
        if not 0 <= i < args.scope:
            raise ScopeError(f"binding index {i} out of scope {args.scope}")
        mapping[LIdx(i)] = parse_term(term_text.strip(), sig, args.scope)
    rule = SubstRule.from_mapping(Fin(args.scope), Fin(args.scope), mapping)
    print(print_term(subst(sig, rule, t), sig))
    return EXIT_OK


def _run_random(args) -> int:
    sig = _resolve_sig(args.sig)
    if args.budget < 0:
        raise ConfigError("--budget must be non-negative")
    t = random_term(sig, Fin(args.scope), args.budget, args.seed)
    try:
        print(print_term(t, sig))
    except ValueError as e:
        raise ConfigError(f"signature has no concrete syntax: {e}") from None
    return EXIT_OK


def _run_validate(args) -> int:
    sig = _resolve_sig(args.sig)
    t = parse_term(_input_term(args), sig, args.scope)
    if not validate(sig, Fin(args.scope), t):
        print("invalid")
        return EXIT_SCOPE
    print("valid")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "eval":
            return _run_eval(args)
        if args.command == "subst":
            return _run_subst(args)
        if args.command == "random":
            return _run_random(args)
        if args.command == "check":
            return _run_check(args)
        if args.command == "validate":
            return _run_validate(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ScopeError as e:
        print(f"scope error: {e}", file=sys.stderr)
        return EXIT_SCOPE
    except (ConfigError, GenerationError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
