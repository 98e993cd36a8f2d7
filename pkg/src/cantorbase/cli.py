"""Command-line interface.

Exit status: 0 on success, 1 on a domain error (bad field, state cap
exceeded, ...), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from dataclasses import field as dc_field
from pathlib import Path

from . import analysis, scenarios
from .errors import CantorBaseError, MalformedSpec, ParseError
from .morphisms import block_expand, delta_expansion
from .parsing import (
    parse_bases,
    parse_blocks,
    parse_digit_up,
    parse_element,
    parse_field,
    parse_psi,
    parse_rational,
    parse_up,
    parse_wordspec,
    split_letters,
)
from .transducer import BaseAlphabet, Mode, Transducer, build, default_state_cap, run, run_up
from .words import UPWord, render_letters


@dataclass
class JobConfig:
    command: str
    field: str | None = None
    bases: str | None = None
    names: str | None = None
    point: str | None = None
    mode: str = "greedy"
    force: bool = False
    state_cap: int | None = None
    fmt: str = "text"
    params: dict = dc_field(default_factory=dict)


def _add_common(p, point_required=True, point_default=None):
    p.add_argument("--field", help="field: polynomial in x (e.g. 'x^2-x-1') or "
                                    "'field { minpoly = [...]; root = largest | (lo, hi) }'; default Q")
    p.add_argument("--bases", required=True, help="comma-separated bases, polynomials in d (e.g. 'd, 2*d+1')")
    p.add_argument("--names", help="comma-separated display names for the bases")
    if point_required:
        p.add_argument("--point", required=True, help="point r in [0, 1], e.g. 1, 1/2, d-1")
    else:
        p.add_argument("--point", default=point_default, help=f"point r in [0, 1] (default {point_default})")
    p.add_argument("--mode", default="greedy", choices=["greedy", "quasi"])
    p.add_argument("--force", action="store_true", help="skip the Pisot/degree verification of the bases")
    p.add_argument("--state-cap", type=int, default=None,
                   help="maximum number of states (default 100000 or $CANTORBASE_STATE_CAP)")
    p.add_argument("--format", dest="fmt", default="text", choices=["text", "json"])


def make_parser():
    parser = argparse.ArgumentParser(
        prog="cantorbase",
        description="Exact Cantor real base expansions via finite greedy/quasi-greedy transducers.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("build", help="build the transducer reachable from a point")
    _add_common(p)
    p.add_argument("--out", default="text", choices=["text", "dot", "json"])
    p.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = sub.add_parser("expand", help="first n digits for a base given by a word spec")
    _add_common(p)
    p.add_argument("--base-word", required=True, help="word spec, e.g. 'thue-morse: 0 1'")
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("expand-up", help="exact expansion for an ultimately periodic base")
    _add_common(p)
    p.add_argument("--base-up", required=True, help="ultimately periodic base, e.g. '(0 1)'")

    p = sub.add_parser("morphism-expand", help="expansion in an integer base psi(preimage)")
    p.add_argument("--psi", required=True, help="constant-product morphism, e.g. '2: 2 3; 3: 3 2'")
    p.add_argument("--point", required=True, help="rational r in [0, 1)")
    p.add_argument("--base-word", required=True, help="word spec of the preimage")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--format", dest="fmt", default="text", choices=["text", "json"])

    p = sub.add_parser("analyze", help="two-walk property, SCCs or complexity ratio")
    p.add_argument("analysis", choices=["two-walk", "scc", "complexity"])
    p.add_argument("--json", dest="json_path", help="transducer JSON produced by 'build --out json'")
    p.add_argument("--field")
    p.add_argument("--bases")
    p.add_argument("--names")
    p.add_argument("--point", default="1")
    p.add_argument("--mode", default="quasi", choices=["greedy", "quasi"])
    p.add_argument("--force", action="store_true")
    p.add_argument("--state-cap", type=int, default=None)
    p.add_argument("--blocks", help="comma-separated blocks of letters, e.g. '23,32'")
    p.add_argument("--format", dest="fmt", default="text", choices=["text", "json"])

    p = sub.add_parser("prefix-table", help="group shifts n <= N by prefix before a periodic tail")
    _add_common(p, point_required=False, point_default="1")
    p.set_defaults(mode="quasi")
    p.add_argument("--base-word", required=True)
    p.add_argument("--tail", required=True, help="period word of the expected tail, e.g. 200")
    p.add_argument("-N", type=int, default=100)
    p.add_argument("--horizon", type=int, default=None)

    p = sub.add_parser("admissible", help="is an ultimately periodic digit word admissible?")
    p.add_argument("--field")
    p.add_argument("--bases", required=True)
    p.add_argument("--names")
    p.add_argument("--force", action="store_true")
    p.add_argument("--state-cap", type=int, default=None)
    p.add_argument("--candidate", required=True, help="digit word, e.g. 'up: (0 1)'")
    p.add_argument("--base-up", required=True)
    p.add_argument("--format", dest="fmt", default="text", choices=["text", "json"])

    p = sub.add_parser("transduce-morphic", help="uniform-morphic description of the digit word")
    _add_common(p)
    p.add_argument("--base-word", required=True, help="morphic word spec of the base")
    p.add_argument("-n", type=int, default=32, help="digits to display")

    p = sub.add_parser("reproduce", help="run a packaged reproduction scenario")
    p.add_argument("name", help=f"one of: {', '.join(scenarios.SCENARIOS)}, all")
    return parser


def parse_args(argv=None) -> JobConfig:
    ns = make_parser().parse_args(argv)
    d = vars(ns).copy()
    cfg = JobConfig(command=d.pop("command"))
    for key in ("field", "bases", "names", "point", "mode", "force", "state_cap", "fmt"):
        if key in d:
            value = d.pop(key)
            if value is not None:
                setattr(cfg, key, value)
    cfg.params = d
    return cfg


# -- helpers -----------------------------------------------------------------

def _alphabet(cfg: JobConfig) -> BaseAlphabet:
    if not cfg.bases:
        raise MalformedSpec("--bases is required")
    K = parse_field(cfg.field)
    letters, texts = parse_bases(K, cfg.bases)
    names = [n.strip() for n in cfg.names.split(",")] if cfg.names else texts
    return BaseAlphabet(K, letters, tuple(names), verify=not cfg.force)


def _cap(cfg):
    return cfg.state_cap if cfg.state_cap is not None else default_state_cap()


def _digits(ds):
    return render_letters(ds)


def _emit(cfg, text, data):
    if cfg.fmt == "json":
        print(json.dumps(data, indent=1))
    else:
        print(text)


def _load_or_build(cfg) -> Transducer:
    path = cfg.params.get("json_path")
    if path:
        return Transducer.from_json(Path(path).read_text(encoding="utf-8"))
    E = _alphabet(cfg)
    return build(E, parse_element(E.field, cfg.point), cfg.mode, _cap(cfg))


# -- commands ----------------------------------------------------------------

def cmd_build(cfg):
    E = _alphabet(cfg)
    T = build(E, parse_element(E.field, cfg.point), cfg.mode, _cap(cfg))
    out = cfg.params["out"]
    if out == "dot":
        text = T.to_dot()
    elif out == "json":
        text = T.to_json()
    else:
        lines = [f"states={T.n_states} mode={T.mode.value}"]
        for q, e, digit, t in T.edges():
            lines.append(f"{T.states[q]} --{E.names[e]}|{digit}--> {T.states[t]}")
        text = "\n".join(lines)
    if cfg.params.get("output"):
        Path(cfg.params["output"]).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        print(f"states={T.n_states} written to {cfg.params['output']}")
    else:
        print(text.rstrip("\n"))


def cmd_expand(cfg):
    E = _alphabet(cfg)
    base = parse_wordspec(cfg.params["base_word"])
    digits, visited = run(E, parse_element(E.field, cfg.point), base, cfg.params["n"], cfg.mode, _cap(cfg))
    _emit(cfg, _digits(digits), {"digits": digits, "visited_states": visited})


def cmd_expand_up(cfg):
    E = _alphabet(cfg)
    base = parse_up(cfg.params["base_up"])
    word = run_up(E, parse_element(E.field, cfg.point), base, cfg.mode, _cap(cfg))
    _emit(cfg, str(word), {"preperiod": list(word.preperiod), "period": list(word.period)})


def cmd_morphism_expand(cfg):
    psi = parse_psi(cfg.params["psi"])
    r = parse_rational(cfg.point)
    d = delta_expansion(r, psi.delta)
    preimage = parse_wordspec(cfg.params["base_word"])
    digits = block_expand(d, preimage, psi, cfg.params["n"])
    _emit(cfg, _digits(digits), {"delta": psi.delta, "delta_expansion": str(d), "digits": digits})


def cmd_analyze(cfg):
    T = _load_or_build(cfg)
    kind = cfg.params["analysis"]
    if kind == "two-walk":
        res = analysis.two_walk(T)
        if res.holds:
            u, v = res.witness.names(T.alphabet)
            text = (f"two-walk=true state={T.states[res.witness.state]} u={' '.join(u)} "
                    f"v={' '.join(v)} w={_digits(res.witness.w)}")
            data = {"holds": True, "state": res.witness.state, "u": u, "v": v, "w": list(res.witness.w)}
        else:
            text, data = "two-walk=false", {"holds": False}
    elif kind == "scc":
        comps = analysis.scc(T)
        text = f"components={len(comps)} connected={'true' if len(comps) == 1 else 'false'}\n" + "\n".join(
            " ".join(str(q) for q in c) for c in comps)
        data = {"components": comps, "connected": len(comps) == 1}
    else:
        if not cfg.params.get("blocks"):
            raise MalformedSpec("complexity needs --blocks")
        blocks = parse_blocks(cfg.params["blocks"])
        res = analysis.restrict(T, blocks)
        text = f"visited={res.n_visited} states={T.n_states} ratio={res.n_visited}/{T.n_states}"
        data = {"visited": res.n_visited, "states": T.n_states, "ratio": f"{res.n_visited}/{T.n_states}"}
    _emit(cfg, text, data)


def cmd_prefix_table(cfg):
    E = _alphabet(cfg)
    base = parse_wordspec(cfg.params["base_word"])
    tail = [int(c) for c in split_letters(cfg.params["tail"])]
    table = analysis.prefix_table(E, parse_element(E.field, cfg.point), base, cfg.params["N"], tail,
                                  cfg.params["horizon"], cfg.mode)
    rows = [(_digits(w) or "eps", ns) for w, ns in table.prefixes.items()]
    width = max((len(w) for w, _ in rows), default=3)
    lines = [f"{'prefix'.ljust(width)}  n"]
    lines += [f"{w.ljust(width)}  {', '.join(map(str, ns))}" for w, ns in rows]
    if table.undetected:
        lines.append(f"undetected within horizon: {', '.join(map(str, table.undetected))}")
    _emit(cfg, "\n".join(lines), {"tail": list(table.tail), "horizon": table.horizon,
                                  "prefixes": {w: ns for w, ns in rows}, "undetected": table.undetected})


def cmd_admissible(cfg):
    E = _alphabet(cfg)
    cand = parse_digit_up(cfg.params["candidate"])
    base = parse_up(cfg.params["base_up"])
    ok, n = analysis.admissible_up(cand, base, E, _cap(cfg))
    text = "admissible=true" if ok else f"admissible=false first_failure_at_shift={n}"
    _emit(cfg, text, {"admissible": ok, "failure_shift": n})


def cmd_transduce_morphic(cfg):
    E = _alphabet(cfg)
    base = parse_wordspec(cfg.params["base_word"])
    spec = analysis.transduce_uniform_morphic(E, parse_element(E.field, cfg.point), base, cfg.mode)
    n = cfg.params["n"]
    mu = ", ".join(f"{a}->{' '.join(map(str, img))}" for a, img in spec.mu.items())
    coding = ", ".join(f"{a}->{c}" for a, c in spec.coding.items())
    text = f"morphic: k={spec.k}; mu: {mu}; coding: {coding}; seed: {spec.seed}\nprefix: {_digits(spec.stream(n))}"
    _emit(cfg, text, {"k": spec.k, "mu": {str(a): list(img) for a, img in spec.mu.items()},
                      "coding": {str(a): c for a, c in spec.coding.items()}, "seed": spec.seed,
                      "prefix": spec.stream(n)})


def cmd_reproduce(cfg):
    name = cfg.params["name"]
    names = list(scenarios.SCENARIOS) if name == "all" else [name]
    failed = 0
    for nm in names:
        checks = scenarios.reproduce(nm)
        for c in checks:
            prefix = f"[{nm}] " if len(names) > 1 else ""
            print(prefix + c.line())
            failed += not c.ok
    return 1 if failed else 0


COMMANDS = {
    "build": cmd_build,
    "expand": cmd_expand,
    "expand-up": cmd_expand_up,
    "morphism-expand": cmd_morphism_expand,
    "analyze": cmd_analyze,
    "prefix-table": cmd_prefix_table,
    "admissible": cmd_admissible,
    "transduce-morphic": cmd_transduce_morphic,
    "reproduce": cmd_reproduce,
}


def main(argv=None) -> int:
    cfg = parse_args(argv)
    try:
        return COMMANDS[cfg.command](cfg) or 0
    except CantorBaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
