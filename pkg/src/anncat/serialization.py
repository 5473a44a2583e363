"""JSON encodings for rings, bimodules, cochains, functors and reports.

Ring elements serialize as indices; module elements as residue tuples
against the invariant factors.  Every emitted object reparses to an equal
value, and dumps are byte-deterministic (sorted keys, no timestamps).
"""
from __future__ import annotations

import json

import numpy as np

from .bimodules import Bimodule
from .cochains import Cochain1, Cochain2, Cochain3
from .groups import FiniteAbelianGroup
from .rings import FiniteRing, Rng


class FormatError(ValueError):
    pass


def _require(data, keys, what):
    for k in keys:
        if k not in data:
            raise FormatError(f"{what}: missing field {k!r}")


# -- rings --------------------------------------------------------------------

def ring_to_dict(r: Rng) -> dict:
    return {"order": r.order,
            "add": np.asarray(r.add).tolist(),
            "mul": np.asarray(r.mul).tolist(),
            "zero": 0,
            "unit": r.unit,
            "name": r.name}


def ring_from_dict(data: dict) -> Rng:
    _require(data, ("order", "add", "mul", "zero"), "ring file")
    if data["zero"] != 0:
        raise FormatError("ring file: zero must be element 0")
    unit = data.get("unit")
    name = data.get("name", "")
    try:
        cls = FiniteRing if unit is not None else Rng
        return cls(int(data["order"]), data["add"], data["mul"], name=name,
                   unit=None if unit is None else int(unit))
    except ValueError as exc:
        raise FormatError(f"ring file: {exc}") from exc


# -- bimodules ------------------------------------------------------------------

def bimodule_to_dict(m: Bimodule) -> dict:
    to_t = lambda idx: list(m.to_tuple(idx))
    return {"invariant_factors": list(m.group.invariant_factors),
            "left": [[to_t(int(m.left[r, i])) for i in range(m.size)]
                     for r in range(m.ring.order)],
            "right": [[to_t(int(m.right[i, r])) for r in range(m.ring.order)]
                      for i in range(m.size)],
            "name": m.name}


def bimodule_from_dict(data: dict, ring: FiniteRing) -> Bimodule:
    _require(data, ("invariant_factors", "left", "right"), "bimodule file")
    group = FiniteAbelianGroup.from_factors(data["invariant_factors"])
    els = list(group.elements())
    index = {e: i for i, e in enumerate(els)}
    def idx_of(t):
        t = tuple(int(v) % d for v, d in zip(t, group.invariant_factors))
        if t not in index:
            raise FormatError(f"bimodule file: bad module element {t}")
        return index[t]
    try:
        left = [[idx_of(cell) for cell in row] for row in data["left"]]
        right = [[idx_of(cell) for cell in row] for row in data["right"]]
        return Bimodule(ring, group, np.array(left), np.array(right),
                        name=data.get("name", ""))
    except ValueError as exc:
        raise FormatError(f"bimodule file: {exc}") from exc


# -- cochains -------------------------------------------------------------------

_LEVEL3 = ("add_assoc", "add_comm", "mul_assoc", "dist_left", "dist_right")


def cochain_to_dict(c) -> dict:
    m = c.module
    if isinstance(c, Cochain1):
        return {"level": 1, "values": _tab_tuples(c.values, m)}
    if isinstance(c, Cochain2):
        return {"level": 2, "add_part": _tab_tuples(c.add_part, m),
                "mul_part": _tab_tuples(c.mul_part, m)}
    if isinstance(c, Cochain3):
        out = {"level": 3}
        for name in _LEVEL3:
            out[name] = _tab_tuples(getattr(c, name), m)
        return out
    raise TypeError(type(c))


def _tab_tuples(tab, module):
    tab = np.asarray(tab)
    if tab.ndim == 1:
        return [list(module.to_tuple(int(v))) for v in tab]
    return [_tab_tuples(sub, module) for sub in tab]


def _tab_indices(data, module, shape, what):
    arr = np.zeros(shape, dtype=np.int64)
    def fill(node, idx):
        if len(idx) == len(shape):
            try:
                arr[idx] = module.from_tuple(node)
            except (KeyError, TypeError) as exc:
                raise FormatError(f"{what}: bad module element {node}") from exc
            return
        if len(node) != shape[len(idx)]:
            raise FormatError(f"{what}: table dimension mismatch")
        for i, sub in enumerate(node):
            fill(sub, idx + (i,))
    fill(data, ())
    return arr


def cochain_from_dict(data: dict, module: Bimodule, normalized=True):
    _require(data, ("level",), "cochain file")
    n = module.ring.order
    level = int(data["level"])
    try:
        if level == 1:
            return Cochain1(module, _tab_indices(data["values"], module, (n,), "cochain"))
        if level == 2:
            return Cochain2(module,
                            _tab_indices(data["add_part"], module, (n, n), "cochain"),
                            _tab_indices(data["mul_part"], module, (n, n), "cochain"))
        if level == 3:
            tabs = {}
            for name in _LEVEL3:
                shape = (n, n) if name == "add_comm" else (n, n, n)
                tabs[name] = _tab_indices(data[name], module, shape, "cochain")
            return Cochain3(module, normalized=normalized, **tabs)
    except KeyError as exc:
        raise FormatError(f"cochain file: missing component {exc}") from exc
    except ValueError as exc:
        raise FormatError(f"cochain file: {exc}") from exc
    raise FormatError(f"cochain file: unsupported level {level}")


# -- reports --------------------------------------------------------------------

def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def report(command: str, status: int, result, violations=None) -> dict:
    return {"command": command, "status": status, "result": result,
            "violations": violations or []}
