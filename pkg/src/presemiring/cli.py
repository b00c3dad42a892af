"""Command-line front end.

Exit codes: 0 when the checked property or theorem holds, 1 when it is
violated (a ``witness:`` line names the offending elements), 2 for usage,
parse and hypothesis errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .algebra import FLAG_NAMES, StructureClass, classify_structure, structure_flag
from .codomains import Integers, IntegersMod, parse_codomain
from .complements import comp_boolean_algebra
from .dedekind import (corollary_check, eval_modular, factor, verify_modular,
                       verify_random_pairs)
from .errors import HypothesisError, InapplicableError, PresemiringError, TheoremViolation
from .formats import (emit_structure, load_function, parse_element, parse_spec,
                      resolve_domain)
from .functions import (IDENTITIES, PROPERTIES, MappedFunction, are_independent,
                        check_property, independence_propagation, poincare, semi_metric,
                        verify_identity)
from .instances import parse_builtin
from .probability import boole_bound, parallel_systems, posteriors, total_probability
from .theorems import (CLAIM_KINDS, THEOREMS, claim_for, classify_modular,
                       sampled_constancy_check, template_function)

# identity that re-checks a witness of each property
_RECHECK = {"modular": "M", "finitely_additive": "FA"}


class Report:
    def __init__(self):
        self.items: list[tuple[str, str]] = []
        self.witness: str | None = None

    def add(self, key, value):
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif value is None:
            value = "none"
        self.items.append((key, str(value)))

    def render(self, fmt: str) -> str:
        sep = "=" if fmt == "lines" else ": "
        lines = [f"{k}{sep}{v}" for k, v in self.items]
        if self.witness is not None:
            lines.append(f"witness: {self.witness}")
        return "\n".join(lines) + "\n"


def _names(S, xs):
    return " ".join(S.fmt(x) for x in xs)


def _elements(S, tokens):
    return [parse_element(S, t) for t in tokens]


def _verdict(report: Report, ok: bool, witness: str | None = None, sampled=False) -> int:
    report.add("verdict", ("holds-on-sample" if sampled else "holds") if ok else "violated")
    if not ok and witness is not None:
        report.witness = witness
    return 0 if ok else 1


def _property_report(report, S, rep):
    report.add("property", rep.name)
    report.add("mode", "exhaustive" if S.is_finite else "sampled")
    report.add("checked", rep.checked)
    if not rep.ok and "clause" in rep.detail and rep.detail["clause"] != rep.name:
        report.add("clause", rep.detail["clause"])
    witness = rep.witness
    if not rep.ok and not witness:
        # normalization fails at the unit itself
        witness = (S.one,)
    return _verdict(report, rep.ok, None if rep.ok else _names(S, witness),
                    sampled=not S.is_finite)


def _comparison(report, T, cmp):
    report.add("lhs", T.fmt(cmp.lhs))
    report.add("relation", cmp.relation)
    report.add("rhs", T.fmt(cmp.rhs))
    return _verdict(report, cmp.holds)


# --- commands -------------------------------------------------------------------


def cmd_classify(args, report):
    S = resolve_domain(args.structure)
    rep = classify_structure(S, samples=args.trials, seed=args.seed)
    report.add("structure", S.label)
    report.add("class", str(rep.kind))
    report.add("mode", rep.label)
    report.add("checked", rep.checked)
    report.add("violations", len(rep.violations))
    for v in rep.violations:
        report.add(f"violation.{v.axiom}", _names(S, v.witness) or "-")
    for name in FLAG_NAMES:
        try:
            value, _ = structure_flag(S, name, args.trials, args.seed)
        except InapplicableError:
            value = "n/a"
        report.add(f"flag.{name}", value)
    if args.emit:
        if not S.is_finite:
            raise InapplicableError("--emit needs a finite structure")
        text = emit_structure(S)
        if args.emit == "-":
            sys.stdout.write(text)
        else:
            with open(args.emit, "w", encoding="ascii") as fh:
                fh.write(text)
            report.add("emitted", args.emit)
    ok = rep.kind is not StructureClass.NOT_A_STRUCTURE and not rep.violations
    first = rep.violations[0] if rep.violations else None
    return _verdict(report, ok, _names(S, first.witness) if first else None)


def cmd_comp(args, report):
    S = resolve_domain(args.structure)
    if not S.is_finite:
        raise InapplicableError("comp needs a finite structure")
    comp = comp_boolean_algebra(S)
    report.add("structure", S.label)
    if comp.complements is not None:
        cmap = comp.complements
        report.add("comp", _names(S, cmap.elements))
        for s in cmap.elements:
            report.add(f"complement.{S.fmt(s)}", S.fmt(cmap[s]))
    report.add("boolean_algebra", comp.ok)
    if not comp.ok:
        report.add("reason", comp.reason)
        # a failed hypothesis is not a violation; a broken equivalence is
        if comp.reason.startswith("equivalence broken"):
            return _verdict(report, False)
    return 0


def cmd_check(args, report):
    f = load_function(args.function)
    rep = check_property(f, args.prop, samples=args.trials,
                         seed=args.seed if not f.domain.is_finite else None)
    report.add("function", f.name)
    code = _property_report(report, f.domain, rep)
    if code and args.prop in _RECHECK:
        report.add("recheck", _RECHECK[args.prop])
    return code


def cmd_identity(args, report):
    f = load_function(args.function)
    S, T = f.domain, f.codomain
    if args.identity == "L1":
        if len(args.args) != 4:
            raise InapplicableError("L1 takes x y m n")
        vals = _elements(S, args.args[:2]) + [int(a) for a in args.args[2:]]
    else:
        vals = _elements(S, args.args)
    rep = verify_identity(f, args.identity, vals, samples=args.trials, seed=args.seed)
    report.add("identity", args.identity)
    report.add("lhs", T.fmt(rep.detail["lhs"]))
    report.add("relation", rep.detail["relation"])
    report.add("rhs", T.fmt(rep.detail["rhs"]))
    shown = args.args if args.identity != "L1" else args.args[:2]
    return _verdict(report, rep.ok, " ".join(shown))


def cmd_independent(args, report):
    f = load_function(args.function)
    rep = are_independent(f, _elements(f.domain, args.elements))
    report.add("checked", rep.checked)
    return _verdict(report, rep.ok, None if rep.ok else _names(f.domain, rep.witness))


def cmd_propagate(args, report):
    f = load_function(args.function)
    rep = independence_propagation(f, _elements(f.domain, args.elements),
                                   samples=args.trials, seed=args.seed)
    T = f.codomain
    report.add("lhs", T.fmt(rep.detail["lhs"]))
    report.add("rhs", T.fmt(rep.detail["rhs"]))
    return _verdict(report, rep.ok, None if rep.ok else _names(f.domain, rep.witness))


def cmd_metric(args, report):
    f = load_function(args.function)
    S, T = f.domain, f.codomain
    elems = _elements(S, args.elements) if args.elements else None
    table, rep = semi_metric(f, elems, samples=args.trials, seed=args.seed)
    if elems is None:
        from .complements import complemented_elements
        elems = list(complemented_elements(S).elements)
    report.add("elements", _names(S, elems))
    for i, s in enumerate(elems):
        report.add(f"d.{S.fmt(s)}", " ".join(T.fmt(v) for v in table[i]))
    report.add("metric", rep.detail.get("metric"))
    if not rep.ok:
        report.add("clause", rep.detail["clause"])
    return _verdict(report, rep.ok, None if rep.ok else _names(S, rep.witness))


def cmd_bayes(args, report):
    f = load_function(args.function)
    S, T = f.domain, f.codomain
    s = parse_element(S, args.event)
    parts = _elements(S, args.part)
    if not 1 <= args.k <= len(parts):
        raise InapplicableError(f"--k must be in 1..{len(parts)}")
    post = posteriors(f, s, parts)
    report.add("posterior", T.fmt(post[args.k - 1]))
    report.add("posteriors", " ".join(T.fmt(p) for p in post))
    total = T.total(post)
    report.add("sum", T.fmt(total))
    return _verdict(report, T.eq(total, T.one))


def cmd_totalprob(args, report):
    f = load_function(args.function)
    S, T = f.domain, f.codomain
    cmp = total_probability(f, parse_element(S, args.event), _elements(S, args.part))
    return _comparison(report, T, cmp)


def cmd_boole(args, report):
    f = load_function(args.function)
    return _comparison(report, f.codomain,
                       boole_bound(f, _elements(f.domain, args.elements),
                                   samples=args.trials, seed=args.seed))


def cmd_parallel(args, report):
    f = load_function(args.function)
    return _comparison(report, f.codomain,
                       parallel_systems(f, _elements(f.domain, args.elements),
                                        samples=args.trials, seed=args.seed))


def cmd_poincare(args, report):
    f = load_function(args.function)
    return _comparison(report, f.codomain,
                       poincare(f, _elements(f.domain, args.elements),
                                samples=args.trials, seed=args.seed))


def cmd_dedekind(args, report):
    if args.action == "factor":
        for g in args.numbers:
            fac = factor(int(g))
            report.add(str(int(g)), " ".join(f"{p}^{e}" for p, e in fac.items()) or "1")
        return 0
    spec = parse_spec(args.spec)
    T = spec.codomain
    if args.action == "eval":
        for a in args.numbers:
            report.add(f"f({int(a)})", T.fmt(eval_modular(spec, int(a))))
        return 0
    if args.action == "verify":
        if args.numbers:
            if len(args.numbers) != 2:
                raise InapplicableError("verify takes zero or two generators")
            a, b = (int(x) for x in args.numbers)
            rep = verify_modular(spec, a, b)
            report.add("case", rep.detail["case"])
            report.add("lhs", T.fmt(rep.detail["lhs"]))
            report.add("rhs", T.fmt(rep.detail["rhs"]))
            return _verdict(report, rep.ok, None if rep.ok else f"{a} {b}")
        rep = verify_random_pairs(spec, trials=args.trials, seed=args.seed)
        report.add("trials", rep.checked)
        for case in ("zero ideal", "whole ring", "comaximal", "common factors"):
            report.add(f"case.{case.replace(' ', '_')}", rep.detail.get("cases", {}).get(case, 0))
        return _verdict(report, rep.ok, None if rep.ok else " ".join(map(str, rep.witness)),
                        sampled=True)
    # corollary
    if len(args.numbers) != 2:
        raise InapplicableError("corollary takes two generators")
    a, b = (int(x) for x in args.numbers)
    variants = ("gcd", "lcm") if args.variant == "both" else (args.variant,)
    ok = True
    for v in variants:
        cmp = corollary_check(spec, a, b, v)
        report.add(f"{v}.lhs", T.fmt(cmp.lhs))
        report.add(f"{v}.rhs", T.fmt(cmp.rhs))
        report.add(f"{v}.verdict", "holds" if cmp.holds else "violated")
        ok = ok and cmp.holds
    if not ok:
        report.witness = f"{a} {b}"
    return 0 if ok else 1


def cmd_enumerate(args, report):
    S = resolve_domain(args.domain)
    if not S.is_finite:
        raise InapplicableError("enumerate needs a finite domain")
    T = parse_codomain(args.codomain)
    if not isinstance(T, IntegersMod):
        raise InapplicableError("enumerate needs a zmod codomain")
    res = classify_modular(S, T, claim_for(args.claim, S), budget=args.budget)
    report.add("total", res.total)
    report.add("modular", res.modular_count)
    report.add("claim", res.verdict)
    report.add("forward", res.forward)
    report.add("converse", res.converse)
    report.add("digest", res.digest)
    if "note" in res.detail:
        report.add("note", res.detail["note"])
    if args.list:
        for k, v in enumerate(res.modular):
            report.add(f"modular.{k}", " ".join(map(str, v)))
    if not res.holds:
        report.witness = " ".join(map(str, res.witness[1:]))
    return 0 if res.holds else 1


_RULES = {
    "identity": lambda x: x,
    "numerator-parity": lambda x: Fraction(x).numerator % 2,
}


def cmd_sample_theorem(args, report):
    S = parse_builtin(args.instance)
    T = parse_codomain(args.codomain)
    if args.rule:
        f = MappedFunction(S, T, rule=_RULES[args.rule], name=args.rule)
    else:
        if args.constant is None:
            raise InapplicableError("give --constant or --rule")
        at = {}
        for item in args.at:
            point, sep, value = item.rpartition("=")
            if not sep:
                raise InapplicableError(f"--at expects POINT=VALUE, got {item!r}")
            at[parse_element(S, point)] = T.parse(value)
        f = template_function(S, T, T.parse(args.constant), at)
    rep = sampled_constancy_check(S, f, args.theorem, samples=args.trials, seed=args.seed)
    report.add("theorem", rep.detail["theorem"])
    report.add("mode", rep.detail["mode"])
    report.add("checked", rep.checked)
    if "note" in rep.detail:
        report.add("note", rep.detail["note"])
    if not rep.ok:
        report.add("clause", rep.detail["clause"])
    return _verdict(report, rep.ok, None if rep.ok else _names(S, rep.witness), sampled=True)


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("lines", "text"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for all sampling (u64)")
    common.add_argument("--trials", type=int, default=10_000, help="sample budget")

    p = argparse.ArgumentParser(prog="presemiring", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("classify", cmd_classify, "classify a structure and report its flags")
    sp.add_argument("structure", help="structure file or builtin:<kind>")
    sp.add_argument("--emit", metavar="PATH", help="write the structure file ('-' for stdout)")

    sp = add("comp", cmd_comp, "complemented elements and comp(S)")
    sp.add_argument("structure")

    sp = add("check", cmd_check, "check a property of a function")
    sp.add_argument("--prop", choices=PROPERTIES, required=True)
    sp.add_argument("function", help="function file or builtin:<kind>@<domain>")

    sp = add("identity", cmd_identity, "verify a catalogued identity")
    sp.add_argument("identity", choices=sorted(IDENTITIES))
    sp.add_argument("function")
    sp.add_argument("args", nargs="+")

    for name, func, help_ in (
            ("independent", cmd_independent, "test independence of elements"),
            ("propagate", cmd_propagate, "independence of s1+..+s(n-1) and sn"),
            ("boole", cmd_boole, "Boole's inequality"),
            ("parallel", cmd_parallel, "parallel systems equality"),
            ("poincare", cmd_poincare, "inclusion-exclusion for a modular function")):
        sp = add(name, func, help_)
        sp.add_argument("function")
        sp.add_argument("elements", nargs="+")

    sp = add("metric", cmd_metric, "semi-metric d(s,t) = f(s tri t)")
    sp.add_argument("function")
    sp.add_argument("elements", nargs="*")

    for name, func, help_ in (("bayes", cmd_bayes, "posterior over a partition"),
                              ("totalprob", cmd_totalprob, "law of total probability")):
        sp = add(name, func, help_)
        sp.add_argument("function")
        sp.add_argument("--event", required=True)
        sp.add_argument("--part", action="append", required=True)
        if name == "bayes":
            sp.add_argument("--k", type=int, required=True, help="1-based part index")

    sp = add("dedekind", cmd_dedekind, "modular functions on the ideals of Z")
    sp.add_argument("action", choices=("verify", "eval", "corollary", "factor"))
    sp.add_argument("numbers", nargs="*")
    sp.add_argument("--spec")
    sp.add_argument("--variant", choices=("gcd", "lcm", "both"), default="both")

    sp = add("enumerate", cmd_enumerate, "enumerate functions and classify the modular ones")
    sp.add_argument("domain")
    sp.add_argument("--codomain", required=True)
    sp.add_argument("--claim", choices=CLAIM_KINDS, required=True)
    sp.add_argument("--budget", type=int, default=10 ** 8)
    sp.add_argument("--list", action="store_true", help="list every modular table")

    sp = add("sample-theorem", cmd_sample_theorem, "forced-constancy check on a symbolic instance")
    sp.add_argument("instance")
    sp.add_argument("--theorem", choices=THEOREMS)
    sp.add_argument("--codomain", default="int")
    sp.add_argument("--constant")
    sp.add_argument("--at", action="append", default=[], metavar="POINT=VALUE")
    sp.add_argument("--rule", choices=sorted(_RULES))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    # positionals may follow options (``dedekind corollary --spec F 2 3``)
    args, extra = parser.parse_known_args(argv)
    if extra:
        rest = next((k for k in ("numbers", "elements", "args") if isinstance(
            getattr(args, k, None), list)), None)
        if rest is None or any(t.startswith("-") and not t.lstrip("-").isdigit() for t in extra):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        getattr(args, rest).extend(extra)
    if args.command == "dedekind" and args.action != "factor" and not args.spec:
        parser.error("dedekind verify/eval/corollary need --spec")
    report = Report()
    try:
        code = args.func(args, report)
    except TheoremViolation as e:
        report.add("verdict", "violated")
        report.add("error", e)
        code = 1
    except HypothesisError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (PresemiringError, OSError, ValueError, KeyError, IndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(report.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
