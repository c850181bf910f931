"""Command-line front end.

Exit codes: 0 success, 1 an invariant or check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from .checks import oracle_check, reference_suite
from .exactfield import FieldSpec
from .ext import euler_mobius_check, ext_report, mitchell_check, rigidity_report
from .formats import FormatError, parse_module, parse_poset
from .pmodule import InvalidModuleError, ModuleError, validate
from .poset import PosetError, vertex_label
from .resolution import global_dimension, minimal_resolution

COMMANDS = ("validate", "resolve", "ext", "report", "mitchell", "euler", "oracle-check", "suite")
MODULE_ARITY = {"validate": 1, "resolve": 1, "ext": 2, "report": 1}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    poset: Optional[str] = None
    modules: list = field(default_factory=list)
    field: Optional[str] = None
    max_degree: Optional[int] = None
    format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        want = MODULE_ARITY.get(self.command, 0)
        if len(self.modules) != want:
            raise UsageError(f"{self.command} takes {want} --module argument(s), got {len(self.modules)}")

    def field_spec(self) -> Optional[FieldSpec]:
        if self.field is None:
            return None
        try:
            return FieldSpec.parse(self.field)
        except ValueError:
            raise UsageError(f"cannot parse field {self.field!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="persext", description="Ext groups and resolutions of poset persistence modules")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--poset", help="poset JSON file or grid:n")
    ap.add_argument("--module", dest="modules", action="append", default=[], help="module JSON file or builtin:...")
    ap.add_argument("--field", help="p:<prime> or q (default p:32003)")
    ap.add_argument("--max-degree", type=int)
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    ap.add_argument("--seed", type=int, default=0)
    return ap


def dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _load(cfg: RunConfig):
    F = cfg.field_spec()
    P = parse_poset(cfg.poset) if cfg.poset else None
    mods = []
    for src in cfg.modules:
        M = parse_module(src, P, F)
        if F is None:
            F = M.field
        if P is None:
            P = M.poset
        mods.append(M)
    if len({M.field for M in mods}) > 1:
        raise FormatError("modules are over different fields")
    return P, F or FieldSpec(), mods


def _fmt_violation(v) -> dict:
    out = {"kind": v["kind"], "message": v["message"]}
    if "pair" in v:
        out["pair"] = [vertex_label(x) for x in v["pair"]]
        out["reference"] = v["reference"]
        out["composite"] = v["composite"]
    if "cover" in v:
        out["cover"] = [vertex_label(x) for x in v["cover"]]
    return out


def execute(cfg: RunConfig, out=sys.stdout) -> int:
    P, F, mods = _load(cfg)
    structured = cfg.format == "structured"
    emit = lambda s: print(s, file=out)

    if cfg.command == "validate":
        bad = [_fmt_violation(v) for v in validate(mods[0])]
        if structured:
            emit(dump({"source": cfg.modules[0], "valid": not bad, "violations": bad}))
        else:
            emit("valid" if not bad else "\n".join(v["message"] for v in bad))
        return 1 if bad else 0

    if cfg.command == "resolve":
        R = minimal_resolution(mods[0])
        emit(dump({"source": cfg.modules[0], "field": str(F), **R.to_dict()}) if structured else R.report())
        return 0 if R.terminated else 1

    if cfg.command == "ext":
        M, N = mods
        top = cfg.max_degree if cfg.max_degree is not None else global_dimension(M.poset, F)
        rep = ext_report(M, N, top, cfg.modules[0], cfg.modules[1])
        emit(dump(rep.to_dict()) if structured else rep.text())
        return 0

    if cfg.command == "report":
        rep = rigidity_report(mods[0], cfg.modules[0])
        emit(dump(rep.to_dict()) if structured else rep.text())
        return 0

    if cfg.command in ("mitchell", "euler"):
        if P is None:
            raise UsageError(f"{cfg.command} needs --poset")
        if cfg.command == "mitchell":
            top = cfg.max_degree if cfg.max_degree is not None else max(2, global_dimension(P, F))
            c = mitchell_check(P, F, top)
            if structured:
                emit(dump({"field": str(F), "ext": c.ext, "nerve": c.nerve, "agree": c.agree}))
            else:
                emit(f"Ext^*(k, k)   = {c.ext}\nH^*(|P|, k)   = {c.nerve}\n{'agree' if c.agree else 'DISAGREE'}")
            return 0 if c.agree else 1
        rows = euler_mobius_check(P, F)
        ok = all(r.agree for r in rows)
        if structured:
            emit(dump({"field": str(F), "agree": ok, "pairs": [
                {"p": vertex_label(r.p), "q": vertex_label(r.q), "ext": r.ext, "euler": r.euler,
                 "mobius": r.mobius, "agree": r.agree} for r in rows]}))
        else:
            for r in rows:
                emit(f"{'ok ' if r.agree else 'BAD'} S_{vertex_label(r.p)} -> S_{vertex_label(r.q)}: "
                     f"Ext dims {r.ext}, euler {r.euler}, mu {r.mobius}")
        return 0 if ok else 1

    if cfg.command == "oracle-check":
        tallies = oracle_check(cfg.seed, F)
        ok = all(t.ok for t in tallies)
        if structured:
            emit(dump({"seed": cfg.seed, "field": str(F), "ok": ok, "checks": [
                {"name": t.name, "checked": t.checked, "failures": [repr(x) for x in t.failures]} for t in tallies]}))
        else:
            for t in tallies:
                emit(t.line())
        return 0 if ok else 1

    results = reference_suite(F)
    ok = all(r.ok for r in results)
    if structured:
        emit(dump({"field": str(F), "passed": sum(r.ok for r in results), "total": len(results),
                   "checks": [{"name": r.name, "ok": r.ok, "expected": repr(r.expected),
                               "computed": repr(r.computed)} for r in results]}))
    else:
        for r in results:
            emit(r.line())
        emit(f"{sum(r.ok for r in results)}/{len(results)} PASS over {F}")
    return 0 if ok else 1


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = RunConfig(ns.command, ns.poset, ns.modules, ns.field, ns.max_degree, ns.format, ns.seed)
        return execute(cfg, out)
    except InvalidModuleError as e:
        print(f"invalid module: {e}", file=err)
        return 1
    except (UsageError, FormatError, PosetError, ModuleError) as e:
        print(f"error: {e}", file=err)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
