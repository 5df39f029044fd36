"""JSON trees for terms, steps, cells, tower cells, words, and witnesses.

Every registered value encodes to {"$t": <tag>, "f": [children]}; enums
encode by value, tuples as lists (no registered type carries a raw list
field, so decoding restores tuples).  Round-tripping is the identity.
"""

from __future__ import annotations

import dataclasses
import json
from enum import Enum

from . import cells, completion, frontseed, terms, witness

_REGISTRY: dict[str, type] = {}
_ENUMS: dict[str, type] = {}


def _register(*classes):
    for c in classes:
        _REGISTRY[c.__name__] = c


def _register_enum(*classes):
    for c in classes:
        _ENUMS[c.__name__] = c


_register(
    terms.Var, terms.App, terms.Lam, terms.RedStep,
    cells.RedSeq, cells.Hole, cells.CAppFun, cells.CAppArg, cells.CLam,
    cells.Refl, cells.Symm, cells.Trans, cells.WhiskerL, cells.WhiskerR,
    cells.HComp, cells.Assoc, cells.UnitL, cells.UnitR, cells.StepCong,
    cells.Refl3, cells.Symm3, cells.Trans3, cells.WhiskerL3, cells.WhiskerR3,
    cells.HComp3, cells.Interchange, cells.Pentagon, cells.Triangle,
    completion.HDRefl, completion.HDSymm, completion.HDTrans,
    completion.RTowerCell, completion.SigmaCell,
    frontseed.AssL, frontseed.WlL, frontseed.WrL, frontseed.ReflL,
    frontseed.SeedL, frontseed.Word, frontseed.FS1Seed, frontseed.FS2Seed,
    frontseed.HeadNorm, frontseed.Refl3W, frontseed.VComp, frontseed.InvE,
    frontseed.WlCong3, frontseed.WrCong3, frontseed.PasteL, frontseed.PasteR,
    frontseed.FillerE,
    witness.TBeta, witness.TEta, witness.ReflM, witness.ReflN, witness.Comp,
)
_register_enum(terms.StepKind, terms.Dir, witness.SpanEndpoint, witness.Tag)


def encode(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Enum):
        return {"$e": [type(obj).__name__, obj.value]}
    if isinstance(obj, tuple):
        return [encode(x) for x in obj]
    name = type(obj).__name__
    if name in _REGISTRY and dataclasses.is_dataclass(obj):
        fields = [encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)]
        return {"$t": name, "f": fields}
    raise TypeError(f"cannot encode {name}")


def decode(data):
    if data is None or isinstance(data, (bool, int, str)):
        return data
    if isinstance(data, list):
        return tuple(decode(x) for x in data)
    if "$e" in data:
        name, value = data["$e"]
        return _ENUMS[name](value)
    cls = _REGISTRY[data["$t"]]
    return cls(*(decode(x) for x in data["f"]))


def dumps(obj, **kwargs) -> str:
    return json.dumps(encode(obj), sort_keys=True, **kwargs)


def loads(text: str):
    return decode(json.loads(text))
