"""Command line: check descriptors, replay the worked examples, run the grid."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import errors
from .align import (
    ALIGNED,
    NEITHER,
    PSEUDO,
    check_aligned,
    check_highest_weight,
    fernando_futorny,
)
from .families import IntSequence, SInfty, SymPartition, Wedge, Xsl, module_from_json
from .oracle import auto_window, find_u_singular, realize
from .orders import (
    ASC,
    BLOCK,
    DESC,
    GroundSet,
    OrderDescriptor,
    enumerate_admissible,
    enumerate_signed,
    make_finite_order,
    positive_blocks,
)
from .sets import SetDescriptor
from .weights import WeightDescriptor

EXIT = {ALIGNED: 0, PSEUDO: 2, NEITHER: 3}
RANK_ENV = "WEIGHT_ALIGN_RANK_BOUND"


@dataclass
class RunConfig:
    horizon: int = 12
    rank_bound: int = 4
    window: int = 6
    output: str = "text"
    seed: int = 0

    def __post_init__(self):
        for name in ("horizon", "rank_bound", "window"):
            if getattr(self, name) < 1:
                raise errors.ParseError(f"--{name.replace('_', '-')} must be at least 1")


def dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise errors.ParseError(f"{path}: {exc}") from exc


def order_from_json(obj):
    """Finite orders carry "n" and explicit blocks; descriptors carry set blocks."""
    if not isinstance(obj, dict):
        raise errors.ParseError(f"bad order: {obj!r}")
    if "n" in obj:
        try:
            g = GroundSet(obj["ground"], int(obj["n"]))
            return make_finite_order(g, [list(b) for b in obj["blocks"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise errors.ParseError(f"bad finite order: {exc}") from exc
    return OrderDescriptor.from_json(obj)


# ---------------------------------------------------------------- demos

ODDS = SetDescriptor.periodic((True, False))
EVENS = SetDescriptor.periodic((False, True))
C_HALF = Fraction(1, 2)


def _fam(M, o):
    return {"module": M.to_json(), "order": o.to_json()}


def _demo_wedge_odds():
    M, o = Wedge(ODDS), positive_blocks(ODDS, EVENS)
    return {**_fam(M, o), "report": check_aligned(M, o).to_json()}


def _demo_smu():
    M = SymPartition((4, 3, 2, 1))
    o = positive_blocks(SetDescriptor.finite([1, 2, 3]), SetDescriptor.finite([4, 5, 6]),
                        SetDescriptor.cofinite(range(1, 7)))
    return {**_fam(M, o), "report": check_aligned(M, o).to_json()}


def _alternating_order():
    return positive_blocks(ODDS, EVENS, kinds=[ASC, DESC])


def _hw_payload(M, o):
    hw = check_highest_weight(M, o)
    out = {**_fam(M, o), "is_hw": hw["is_hw"], "is_pseudo_hw": hw["is_pseudo_hw"],
           "hw_weight": hw["hw_weight"].to_json() if hw["hw_weight"] else None,
           "report": hw["report"].to_json()}
    if hw["dynkin_equivalent"]:
        od, ip, c, w = hw["dynkin_equivalent"]
        out["dynkin_equivalent"] = {"order": od.to_json(), "order_text": od.describe(),
                                    "i_prime": ip, "c": str(c), "weight": w.to_json()}
    return out


def _demo_hw_J():
    return _hw_payload(Xsl(WeightDescriptor((), (-1, 0))), _alternating_order())


def _demo_dynkin():
    out = _hw_payload(Xsl(WeightDescriptor((), (-1, 0))), _alternating_order())
    od = OrderDescriptor.from_json(out["dynkin_equivalent"]["order"])
    M = Xsl(WeightDescriptor.from_json(out["dynkin_equivalent"]["weight"]))
    again = check_aligned(M, od)
    out["dynkin_check"] = {"verdict": again.verdict,
                           "witness": again.witness.to_json() if again.witness else None}
    return out


def _demo_pseudo_c():
    M = Xsl(WeightDescriptor((-1, 0, C_HALF, 0), (1,)))
    out = _hw_payload(M, _alternating_order())
    ff = fernando_futorny(M)
    out["ff_order"] = ff.to_json()
    out["ff_order_text"] = ff.describe()
    out["ff_report"] = check_aligned(M, ff).to_json()
    return out


def borel_sample():
    """20 fixed linear orders on the positive integers."""
    F = SetDescriptor.finite
    out = [positive_blocks(SetDescriptor.all_in(), kinds=[ASC]),
           positive_blocks(SetDescriptor.all_in(), kinds=[DESC])]
    for A, B in ((ODDS, EVENS), (EVENS, ODDS)):
        for ka in (ASC, DESC):
            for kb in (ASC, DESC):
                out.append(positive_blocks(A, B, kinds=[ka, kb]))
    for k in range(1, 7):
        rest = SetDescriptor.cofinite([k])
        out.append(positive_blocks(F([k]), rest, kinds=[ASC, ASC]))
        if len(out) < 20:
            out.append(positive_blocks(rest, F([k]), kinds=[DESC, ASC]))
    return out[:20]


def _demo_sinfty():
    M = SInfty(IntSequence((1, 1), (1, 0)))
    o = positive_blocks(ODDS, EVENS)
    sample = borel_sample()
    hw = sum(check_highest_weight(M, b)["is_hw"] for b in sample)
    return {**_fam(M, o), "report": check_aligned(M, o).to_json(),
            "borel_sample": {"orders": len(sample), "highest_weight": hw}}


DEMOS = {
    "wedge-odds": _demo_wedge_odds,
    "smu-4blocks": _demo_smu,
    "xsl-hw-J": _demo_hw_J,
    "xsl-pseudo-c": _demo_pseudo_c,
    "sinfty-two-blocks": _demo_sinfty,
    "xsl-dynkin-equiv": _demo_dynkin,
}


def run_demo(name):
    if name not in DEMOS:
        raise errors.UnknownDemo(f"unknown demo {name!r}; known: {', '.join(sorted(DEMOS))}")
    return {"demo": name, **DEMOS[name]()}


# ---------------------------------------------------------------- commands


def _text_report(rep, out):
    print(f"verdict: {rep.verdict}", file=out)
    print(f"criterion: {rep.criterion}", file=out)
    if rep.witness is not None:
        print(f"witness: {rep.witness.render()}", file=out)
    if rep.inducing is not None:
        print(f"inducing: {rep.inducing.render()}", file=out)
    if rep.obstruction:
        print(f"obstruction: {rep.obstruction}", file=out)
    if rep.trace is not None:
        print("trace: " + "".join("1" if b else "0" for b in rep.trace), file=out)


def cmd_check(module_file, order_file, cfg: RunConfig, out=None):
    out = out or sys.stdout
    M = module_from_json(load_json(module_file))
    o = order_from_json(load_json(order_file))
    rep = check_aligned(M, o, horizon=cfg.horizon)
    if cfg.output == "json":
        out.write(dump(rep.to_json()))
    else:
        _text_report(rep, out)
    return EXIT[rep.verdict]


def cmd_demo(name, cfg: RunConfig, out=None):
    out = out or sys.stdout
    payload = run_demo(name)
    if cfg.output == "json":
        out.write(dump(payload))
    else:
        print(f"demo: {name}", file=out)
        rep = payload["report"]
        print(f"verdict: {rep['verdict']}", file=out)
        print(f"inducing: {rep['inducing_text']}", file=out)
        for key in ("is_hw", "is_pseudo_hw"):
            if key in payload:
                print(f"{key}: {payload[key]}", file=out)
        if "dynkin_equivalent" in payload:
            d = payload["dynkin_equivalent"]
            print(f"dynkin order: {d['order_text']}  (i'={d['i_prime']}, c={d['c']})", file=out)
        if "dynkin_check" in payload:
            print(f"dynkin check: {payload['dynkin_check']['verdict']}", file=out)
        if "ff_report" in payload:
            print(f"own FF order {payload['ff_order_text']}: {payload['ff_report']['verdict']}", file=out)
        if "borel_sample" in payload:
            b = payload["borel_sample"]
            print(f"highest weight over {b['orders']} Borel orders: {b['highest_weight']}", file=out)
    return EXIT[payload["report"]["verdict"]]


def cmd_verify(cfg: RunConfig, flip=False, replay=None, out=None):
    out = out or sys.stdout
    from .verify import run_grid

    s = run_grid(cfg.rank_bound, flip=flip, seed=cfg.seed, window=cfg.window)
    if replay:
        with open(replay, "w", encoding="utf-8") as fh:
            fh.write(dump(s.counterexamples))
    if cfg.output == "json":
        out.write(dump(s.to_json()))
    else:
        print(f"grid cells: {s.cells}  agreements: {s.agreements}  aligned: {s.aligned}", file=out)
        for line in s.brackets:
            print(f"bracket {line}", file=out)
        print(f"counterexamples: {len(s.counterexamples)}", file=out)
        for c in s.counterexamples[:10]:
            print("  " + json.dumps(c, sort_keys=True, default=str), file=out)
    return 0 if s.ok else 1


def cmd_enumerate(n, typ, out=None):
    out = out or sys.stdout
    if typ == "A":
        orders = enumerate_admissible(n)
    else:
        orders = enumerate_signed(n, d_type=typ == "D")
    for o in orders:
        out.write(json.dumps(o.to_json(), sort_keys=True) + "\n")
    return 0


def cmd_oracle(module_file, order_file, cfg: RunConfig, out=None):
    out = out or sys.stdout
    M = module_from_json(load_json(module_file))
    o = order_from_json(load_json(order_file))
    if isinstance(o, OrderDescriptor):
        raise errors.IncompatibleArguments("the oracle needs a finite order (with \"n\")")
    win = max(cfg.window, auto_window(M, o.n) or 0)
    R = realize(M, o.n, window=win)
    sing = find_u_singular(R, o)
    if cfg.output == "json":
        out.write(dump([{"weight": [str(x) for x in w], "multiplicity": m} for w, m in sing]))
    else:
        for w, m in sing:
            print("(" + ",".join(str(x) for x in w) + f")  x{m}", file=out)
        print(f"singular weights: {len(sing)}", file=out)
    return 0 if sing else 3


# ---------------------------------------------------------------- entry


def build_parser():
    p = argparse.ArgumentParser(prog="weightalign",
                                description="Alignment of bounded weight modules over locally finite Lie algebras.")
    p.add_argument("--horizon", type=int, default=12, help="truncation horizon for traces")
    p.add_argument("--rank-bound", type=int, default=None, help="largest oracle rank (grid)")
    p.add_argument("--window", type=int, default=6, help="oracle monomial window radius")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="decide alignment for a module and an order")
    c.add_argument("module")
    c.add_argument("order")
    d = sub.add_parser("demo", help="replay a worked example")
    d.add_argument("name", nargs="?")
    d.add_argument("--list", action="store_true")
    v = sub.add_parser("verify", help="run the criterion vs oracle grid")
    v.add_argument("--inject-sign-flip", action="store_true", help=argparse.SUPPRESS)
    v.add_argument("--replay", help="write counterexamples to this file")
    e = sub.add_parser("enumerate", help="list admissible orders of rank n")
    e.add_argument("n", type=int)
    e.add_argument("--type", choices=("A", "B", "C", "D"), default="A")
    r = sub.add_parser("oracle", help="u-singular weights of a finite truncation")
    r.add_argument("module")
    r.add_argument("order")
    return p


def main(argv: Optional[list] = None):
    args = build_parser().parse_args(argv)
    try:
        rank = args.rank_bound if args.rank_bound is not None else 4
        if os.environ.get(RANK_ENV):
            rank = int(os.environ[RANK_ENV])
        cfg = RunConfig(args.horizon, rank, args.window, args.format, args.seed)
        if args.command == "check":
            return cmd_check(args.module, args.order, cfg)
        if args.command == "demo":
            if args.list or not args.name:
                print("\n".join(sorted(DEMOS)))
                return 0
            return cmd_demo(args.name, cfg)
        if args.command == "verify":
            return cmd_verify(cfg, flip=args.inject_sign_flip, replay=args.replay)
        if args.command == "enumerate":
            return cmd_enumerate(args.n, args.type)
        if args.command == "oracle":
            return cmd_oracle(args.module, args.order, cfg)
    except (errors.WeightAlignError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
