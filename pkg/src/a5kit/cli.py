"""Command-line front end and the JSON wire formats.

Subcommands:

- ``classify``:  decide existence for a parameter tuple and synthesize a solution
- ``transform``: apply a generator word to parameters, a seed, or a solution file
- ``verify``:    check a solution file exactly
- ``expand``:    Laurent tables of a solution, or the formal expansion at infinity
- ``diagnose``:  full local analysis of a solution file

Rationals are written "p/q" (or a plain integer).  A rational function is
serialized as {"num": [...], "den": [...], "denom": L}: both coefficient lists
are integers equal to L times the canonical numerator and monic denominator
coefficients (ascending powers), so f = num(t)/den(t) exactly and L is the
common denominator scalar.  A solution is {"f": [six rational functions],
"alpha": [six rationals]}.

Exit status: 0 on success, 1 when no solution exists or verification fails,
2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .algebra import INFINITY, LaurentSeries, RatFunc, laurent_expand, pole_support
from .backlund import SEED_BUILDERS, Solution, act_solution_word, verify_solution
from .classify import ClassificationReport, classify
from .local import LocalReport, diagnose, expand_solution_ansatz, InfinityType
from .weyl import Params, TransformWord, WeylError, act_params_word, parse_word


class InputError(Exception):
    pass


# -- wire formats -----------------------------------------------------------


def fraction_to_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed rational {text!r}: {exc}") from None


def parse_alpha(text: str) -> Params:
    parts = text.split(",")
    if len(parts) != 6:
        raise InputError(f"--alpha needs six comma-separated rationals, got {len(parts)}")
    vals = [parse_fraction(t) for t in parts]
    if sum(vals) != 1:
        raise InputError(f"alpha must sum to 1, got {fraction_to_str(sum(vals))}")
    return Params.of(*vals)


def ratfunc_to_json(f: RatFunc) -> dict:
    num, den, denom = f.integer_form()
    return {"num": num, "den": den, "denom": denom}


def ratfunc_from_json(obj) -> RatFunc:
    try:
        num = [int(c) for c in obj["num"]]
        den = [int(c) for c in obj["den"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed rational function object: {exc}") from None
    if not any(den):
        raise InputError("rational function with zero denominator")
    return RatFunc.from_integer_form(num, den)


def params_to_json(p: Params) -> dict:
    return {"alpha": [fraction_to_str(a) for a in p]}


def params_from_json(obj) -> Params:
    alpha = obj.get("alpha")
    if not isinstance(alpha, list) or len(alpha) != 6:
        raise InputError("params object needs an alpha list of six rationals")
    vals = [parse_fraction(str(a)) for a in alpha]
    if sum(vals) != 1:
        raise InputError("alpha must sum to 1")
    return Params.of(*vals)


def solution_to_json(s: Solution) -> dict:
    return {
        "f": [ratfunc_to_json(f) for f in s.f],
        "alpha": [fraction_to_str(a) for a in s.params],
    }


def solution_from_json(obj) -> Solution:
    if not isinstance(obj, dict) or "f" not in obj or "alpha" not in obj:
        raise InputError("solution object needs f and alpha")
    if len(obj["f"]) != 6:
        raise InputError("solution needs six component functions")
    fs = tuple(ratfunc_from_json(x) for x in obj["f"])
    p = params_from_json({"alpha": obj["alpha"]})
    return Solution(fs, p)


def laurent_to_json(series: LaurentSeries) -> dict:
    point = "infinity" if series.point is INFINITY else fraction_to_str(series.point)
    return {
        "point": point,
        "order": series.order,
        "terms": [{"exp": e, "coeff": fraction_to_str(c)}
                  for e, c in series.nonzero_items()],
    }


def condition_to_json(cond) -> Optional[dict]:
    if cond is None:
        return None
    out = {"theorem": cond.theorem, "index": cond.index, "anchor": cond.anchor}
    if cond.recipe is not None:
        out["recipe"] = cond.recipe
    if cond.congruence_witness is not None:
        out["witness"] = list(cond.congruence_witness)
    return out


def report_to_json(rep: ClassificationReport) -> dict:
    verdicts = {}
    for ty, v in rep.verdicts.items():
        verdicts[ty] = {
            "exists": v.exists,
            "verdict": v.verdict,
            "matched": condition_to_json(v.matched),
            "via_orbit": v.via_orbit.to_text() if v.via_orbit is not None else None,
        }
    out = {
        "input": params_to_json(rep.input),
        "orbit_depth": rep.orbit_depth,
        "verdicts": verdicts,
        "standard_form": None,
        "reduction_word": None,
        "solution": None,
        "seed_used": rep.seed_used,
        "checks": {},
    }
    if rep.standard is not None:
        sf, word = rep.standard
        out["standard_form"] = {"family": sf.family,
                                "free_parameter": fraction_to_str(sf.free_parameter)}
        out["reduction_word"] = word.to_text()
    if rep.solution is not None:
        out["solution"] = solution_to_json(rep.solution)
        obs = rep.checks["obstruction"]
        out["checks"] = {
            "residue_integrality": rep.checks["residue_integrality"],
            "infinity_type": {"kind": rep.checks["infinity_type"].kind,
                              "anchor": rep.checks["infinity_type"].anchor},
            "obstruction": {"status": obs.status,
                            "d": fraction_to_str(obs.d),
                            "m": obs.m},
        }
    return out


def local_report_to_json(rep: LocalReport) -> dict:
    hd = rep.hdata
    return {
        "infinity_type": {"kind": rep.infinity.kind, "anchor": rep.infinity.anchor},
        "zero_pattern": {"kind": rep.zero.pattern.kind, "anchor": rep.zero.pattern.anchor,
                         "observed": [fraction_to_str(r) for r in rep.zero.observed],
                         "predicted": [fraction_to_str(r) for r in rep.zero.predicted]},
        "finite_pole_cases": None if rep.finite_cases is None else [
            {"location": fraction_to_str(c.location), "label": c.label, "anchor": c.anchor,
             "residues": [fraction_to_str(r) for r in c.residues]}
            for c in rep.finite_cases],
        "finite_pole_error": rep.finite_case_error,
        "hamiltonian": {
            "h_inf_4": fraction_to_str(hd.h_inf_4),
            "h_inf_2": fraction_to_str(hd.h_inf_2),
            "h_inf_0": fraction_to_str(hd.h_inf_0),
            "h_0_m2": fraction_to_str(hd.h_0_m2),
            "h_0_0": fraction_to_str(hd.h_0_0),
            "rational_pole_ratios": [[fraction_to_str(c), fraction_to_str(e)]
                                     for c, e in hd.finite_pole_residue_ratios],
            "pair_counts": {fraction_to_str(e): n for e, n in sorted(hd.pair_counts.items())},
            "ratios_complete": hd.ratios_complete,
        },
        "obstruction": {"status": rep.obstruction.status,
                        "d": fraction_to_str(rep.obstruction.d),
                        "m": rep.obstruction.m},
        "residue_integrality": rep.residues_integral,
    }


# -- text rendering -----------------------------------------------------------


def poly_to_text(coeffs) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = fraction_to_str(abs(c))
        if k == 0:
            term = mag
        else:
            var = "t" if k == 1 else f"t^{k}"
            term = var if abs(c) == 1 else f"{mag}*{var}"
        parts.append(("- " if c < 0 else "+ ") + term)
    if not parts:
        return "0"
    head = parts[0][2:] if parts[0].startswith("+ ") else "-" + parts[0][2:]
    return " ".join([head] + parts[1:])


def ratfunc_to_text(f: RatFunc) -> str:
    num = poly_to_text(f.num.coeffs)
    if f.is_polynomial():
        return num
    return f"({num}) / ({poly_to_text(f.den.coeffs)})"


def solution_to_text(s: Solution) -> str:
    lines = [f"alpha = ({', '.join(fraction_to_str(a) for a in s.params)})"]
    for j, f in enumerate(s.f):
        lines.append(f"f{j} = {ratfunc_to_text(f)}")
    return "\n".join(lines)


def laurent_to_text(series: LaurentSeries, name: str) -> str:
    point = "infinity" if series.point is INFINITY else f"t={fraction_to_str(series.point)}"
    terms = series.nonzero_items()
    if not terms:
        return f"{name} at {point}: 0"
    body = ", ".join(f"t^{e}: {fraction_to_str(c)}" for e, c in terms)
    return f"{name} at {point}: {body}"


def report_to_text(rep: ClassificationReport) -> str:
    lines = [f"input alpha = ({', '.join(fraction_to_str(a) for a in rep.input)})"]
    for ty in ("A", "B", "C"):
        v = rep.verdicts[ty]
        extra = ""
        if v.matched is not None:
            extra = f"  [condition {v.matched.index} at anchor {v.matched.anchor}"
            if v.matched.recipe:
                extra += f", recipe {v.matched.recipe}"
            extra += "]"
        if v.via_orbit is not None:
            extra += f"  (via orbit word: {v.via_orbit.to_text()})"
        lines.append(f"type {ty}: {v.verdict}{extra}")
    if rep.standard is not None:
        sf, word = rep.standard
        lines.append(f"standard form: {sf.family} at {fraction_to_str(sf.free_parameter)}")
        lines.append(f"reduction word: {word.to_text() or '(empty)'}")
    if rep.solution is not None:
        lines.append("solution:")
        lines.append(solution_to_text(rep.solution))
        obs = rep.checks["obstruction"]
        ty = rep.checks["infinity_type"]
        lines.append(f"checks: infinity type {ty.kind}@{ty.anchor}; "
                     f"residue integrality {rep.checks['residue_integrality']}; "
                     f"obstruction {obs.status} (d={fraction_to_str(obs.d)})")
    else:
        lines.append("no rational solution found within the search bound")
    return "\n".join(lines)


def local_report_to_text(rep: LocalReport) -> str:
    lines = []
    lines.append(f"infinity type: {rep.infinity.kind}@{rep.infinity.anchor}")
    zp = rep.zero.pattern
    anchor = "" if zp.anchor is None else f"@{zp.anchor}"
    lines.append(f"zero pattern: {zp.kind}{anchor}; residues "
                 f"({', '.join(fraction_to_str(r) for r in rep.zero.observed)})")
    if rep.finite_cases is None:
        lines.append(f"finite poles: {rep.finite_case_error}")
    elif not rep.finite_cases:
        lines.append("finite poles: none")
    else:
        for case in rep.finite_cases:
            lines.append(f"finite pole at t={fraction_to_str(case.location)}: "
                         f"{case.label}@{case.anchor}")
    hd = rep.hdata
    lines.append(f"H constants: h_inf_0 = {fraction_to_str(hd.h_inf_0)}, "
                 f"h_0_0 = {fraction_to_str(hd.h_0_0)}, "
                 f"pole pair ratio counts = "
                 f"{{{', '.join(f'{fraction_to_str(e)}: {n}' for e, n in sorted(hd.pair_counts.items()))}}}")
    lines.append(f"obstruction: {rep.obstruction.status} "
                 f"(d = {fraction_to_str(rep.obstruction.d)})")
    lines.append(f"residue integrality: {rep.residues_integral}")
    return "\n".join(lines)


# -- command implementations ----------------------------------------------------


def _emit(args, payload_json: dict, payload_text: str) -> None:
    out = json.dumps(payload_json, indent=2, sort_keys=True) if args.format == "json" \
        else payload_text
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _parse_seed(token: str, p: Params) -> Solution:
    name, _, anchor_text = token.partition("@")
    if name not in SEED_BUILDERS:
        raise InputError(f"unknown seed family {name!r}; choose from "
                         f"{', '.join(sorted(SEED_BUILDERS))} with optional @anchor")
    anchor = 0
    if anchor_text:
        if not anchor_text.isdigit() or int(anchor_text) > 5:
            raise InputError(f"bad seed anchor in {token!r}")
        anchor = int(anchor_text)
    free_slot = {"A1": anchor, "A2": anchor, "A3": anchor, "B": anchor, "C": 4}[name]
    a = p[free_slot] if name != "C" else p[4]
    seed = SEED_BUILDERS[name](anchor=anchor, a=a) if name != "C" else SEED_BUILDERS[name](a=p[4])
    if seed.params.alpha != p.alpha:
        raise InputError(
            f"alpha {tuple(fraction_to_str(x) for x in p)} does not lie on the "
            f"{token} seed family")
    return seed


def cmd_classify(args) -> int:
    p = parse_alpha(args.alpha)
    rep = classify(p, args.orbit_depth)
    _emit(args, report_to_json(rep), report_to_text(rep))
    return 0 if rep.solution is not None else 1


def cmd_transform(args) -> int:
    word = parse_word(args.word) if args.word else TransformWord()
    if args.input:
        sol = solution_from_json(_load_json(args.input))
        out = act_solution_word(sol, word)
        _emit(args, solution_to_json(out), solution_to_text(out))
        return 0
    if args.alpha is None:
        raise InputError("transform needs --alpha or --input")
    p = parse_alpha(args.alpha)
    if args.seed:
        sol = _parse_seed(args.seed, p)
        out = act_solution_word(sol, word)
        _emit(args, solution_to_json(out), solution_to_text(out))
        return 0
    q = act_params_word(p, word)
    _emit(args, params_to_json(q),
          f"alpha = ({', '.join(fraction_to_str(a) for a in q)})")
    return 0


def cmd_verify(args) -> int:
    if not args.input:
        raise InputError("verify needs --input")
    sol = solution_from_json(_load_json(args.input))
    rep = verify_solution(sol)
    payload = {"ok": rep.ok, "failure": rep.failure}
    text = "valid solution" if rep.ok else f"not a solution: {rep.failure}"
    _emit(args, payload, text)
    return 0 if rep.ok else 1


_TYPE_TOKENS = {"A1": "A1", "A2": "A2", "A3": "A3", "B": "B", "C": "C"}


def cmd_expand(args) -> int:
    if args.input:
        sol = solution_from_json(_load_json(args.input))
        tables = []
        texts = []
        for j, f in enumerate(sol.f):
            for point in (INFINITY, Fraction(0)):
                series = laurent_expand(f, point, args.order)
                tables.append({"component": j, **laurent_to_json(series)})
                texts.append(laurent_to_text(series, f"f{j}"))
            sup = pole_support(f)
            for c in sorted(sup.locations()):
                if c != 0:
                    series = laurent_expand(f, c, args.order)
                    tables.append({"component": j, **laurent_to_json(series)})
                    texts.append(laurent_to_text(series, f"f{j}"))
        _emit(args, {"expansions": tables}, "\n".join(texts))
        return 0
    if args.alpha is None or args.type is None:
        raise InputError("expand needs --input, or --alpha with --type")
    p = parse_alpha(args.alpha)
    name, _, anchor_text = args.type.partition("@")
    if name not in _TYPE_TOKENS:
        raise InputError(f"unknown leading type {args.type!r}")
    anchor = int(anchor_text) if anchor_text else 0
    series = expand_solution_ansatz(p, InfinityType(name, anchor), args.order)
    tables = [{"component": j, **laurent_to_json(s)} for j, s in enumerate(series)]
    texts = [laurent_to_text(s, f"f{j}") for j, s in enumerate(series)]
    _emit(args, {"expansions": tables}, "\n".join(texts))
    return 0


def cmd_diagnose(args) -> int:
    if not args.input:
        raise InputError("diagnose needs --input")
    sol = solution_from_json(_load_json(args.input))
    ver = verify_solution(sol)
    if not ver.ok:
        _emit(args, {"ok": False, "failure": ver.failure},
              f"not a solution: {ver.failure}")
        return 1
    rep = diagnose(sol)
    _emit(args, local_report_to_json(rep), local_report_to_text(rep))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="a5kit",
        description="Exact classification and analysis of rational solutions "
                    "of the six-component symmetric Painleve system.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, order_default=12):
        sp.add_argument("--alpha", help="six comma-separated rationals summing to 1")
        sp.add_argument("--word", help="generator word: tokens s0..s5, pi, pi^-1, T1..T6, T1^-1..")
        sp.add_argument("--seed", help="seed family A1,A2,A3,B,C with optional @anchor")
        sp.add_argument("--input", help="input JSON path")
        sp.add_argument("--output", help="output path (defaults to stdout)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--order", type=int, default=order_default,
                        help="expansion truncation order")
        sp.add_argument("--type", help="leading pattern A1,A2,A3,B,C with optional "
                                       "@anchor, for the formal expansion")
        sp.add_argument("--orbit-depth", type=int, default=None,
                        help="bound for the orbit search (default 4, or A5KIT_ORBIT_DEPTH)")

    for name, fn in (("classify", cmd_classify), ("transform", cmd_transform),
                     ("verify", cmd_verify), ("expand", cmd_expand),
                     ("diagnose", cmd_diagnose)):
        sp = sub.add_parser(name)
        common(sp)
        sp.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, WeylError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
