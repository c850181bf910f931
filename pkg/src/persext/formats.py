"""Reading posets and modules from JSON files, ``grid:n`` shorthands and ``builtin:`` names."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .exactfield import ExactMatrix, FieldSpec
from .pmodule import (
    PModule,
    diagonal,
    direct_sum_all,
    hook,
    interval_full,
    projective,
    simple,
    trivial_ones,
)
from .poset import Poset, from_covers, grid, vertex_label


class FormatError(ValueError):
    pass


def parse_poset(source) -> Poset:
    """``"grid:n"``, a path to a JSON file, or an already decoded dict."""
    if isinstance(source, Poset):
        return source
    if isinstance(source, str) and source.startswith("grid:"):
        try:
            n = int(source[5:])
        except ValueError:
            raise FormatError(f"bad grid shorthand {source!r}") from None
        if n < 0:
            raise FormatError(f"bad grid shorthand {source!r}")
        return grid(n)
    if isinstance(source, str):
        data = _load_json(source)
        if isinstance(data, str):
            return parse_poset(data)
    else:
        data = source
    if not isinstance(data, dict) or "elements" not in data or "covers" not in data:
        raise FormatError("poset needs 'elements' and 'covers'")
    elements = [str(e) for e in data["elements"]]
    covers = []
    for c in data["covers"]:
        if not isinstance(c, (list, tuple)) or len(c) != 2:
            raise FormatError(f"malformed cover {c!r}")
        covers.append((str(c[0]), str(c[1])))
    try:
        return from_covers(elements, covers)
    except ValueError as e:
        raise FormatError(str(e)) from None


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise FormatError(f"no such file {path!r}") from None
    except json.JSONDecodeError as e:
        raise FormatError(f"malformed JSON in {path!r}: {e}") from None


def _split_top_level(text: str) -> list:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


def _builtin(name: str, P: Poset, field: FieldSpec) -> PModule:
    try:
        if name == "interval_full":
            return interval_full(P, field)
        if name in ("trivial", "trivial_ones"):
            return trivial_ones(P, field)
        if name == "hook":
            return hook(P, field)
        if name == "diagonal":
            return diagonal(P, field)
        if name.startswith("simple:"):
            return simple(P, P.find(name[7:]), field)
        if name.startswith("projective:"):
            return projective(P, P.find(name[11:]), field)
        if name.startswith("sum:"):
            body = name[4:].strip()
            if body.startswith("(") and body.endswith(")"):
                body = body[1:-1]
            items = _split_top_level(body)
            if not items:
                raise FormatError(f"empty sum in builtin {name!r}")
            mods = []
            for it in items:
                if it.split(":")[0] in ("interval_full", "trivial", "trivial_ones", "hook", "diagonal", "simple", "projective"):
                    mods.append(_builtin(it, P, field))
                else:
                    mods.append(simple(P, P.find(it), field))
            return direct_sum_all(mods)
    except FormatError:
        raise
    except ValueError as e:
        raise FormatError(f"builtin:{name}: {e}") from None
    raise FormatError(f"unknown builtin {name!r}")


def parse_module(source, poset: Optional[Poset] = None, field: Optional[FieldSpec] = None) -> PModule:
    """Module from ``builtin:...`` (needs ``poset``), a JSON file path, or a decoded dict.

    A module file may carry its own ``"field"``; an explicitly passed ``field``
    must agree with it.
    """
    if isinstance(source, str) and source.startswith("builtin:"):
        if poset is None:
            raise FormatError(f"{source} needs --poset")
        return _builtin(source[8:], poset, field or FieldSpec())
    data = _load_json(source) if isinstance(source, str) else source
    if not isinstance(data, dict):
        raise FormatError("module file must be a JSON object")
    if "poset" in data:
        P = parse_poset(data["poset"])
        if poset is not None and P != poset:
            raise FormatError("module file poset differs from --poset")
    elif poset is not None:
        P = poset
    else:
        raise FormatError("module file has no 'poset' and none was given")
    F = field
    if "field" in data:
        try:
            ff = FieldSpec.parse(str(data["field"]))
        except ValueError as e:
            raise FormatError(str(e)) from None
        if F is not None and ff != F:
            raise FormatError(f"module file field {ff} conflicts with requested field {F}")
        F = ff
    F = F or FieldSpec()
    try:
        dims = {P.find(k): int(v) for k, v in data.get("dims", {}).items()}
    except ValueError as e:
        raise FormatError(str(e)) from None
    if any(d < 0 for d in dims.values()):
        raise FormatError("negative dimension")
    maps = {}
    for key, rows in data.get("maps", {}).items():
        if "->" not in key:
            raise FormatError(f"map key {key!r} is not of the form 'p->q'")
        a, b = key.split("->", 1)
        try:
            p, q = P.find(a), P.find(b)
        except ValueError as e:
            raise FormatError(str(e)) from None
        if (p, q) not in set(P.covers):
            raise FormatError(f"map key {key!r} is not a cover")
        ncols = dims.get(p, 0)
        try:
            if any(len(r) != ncols for r in rows):
                raise FormatError(f"map {key!r} rows must have {ncols} entries")
            maps[(p, q)] = ExactMatrix.from_rows(rows, F, ncols)
        except (TypeError, ZeroDivisionError) as e:
            raise FormatError(f"map {key!r}: {e}") from None
    return PModule(P, F, dims, maps)


def module_to_dict(M: PModule, poset_ref=None) -> dict:
    return {
        "poset": poset_ref if poset_ref is not None else M.poset.to_dict(),
        "field": str(M.field),
        "dims": {vertex_label(v): d for v, d in M.dims.items()},
        "maps": {f"{vertex_label(p)}->{vertex_label(q)}": A.to_lists() for (p, q), A in M.maps.items()},
    }
