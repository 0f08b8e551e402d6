"""Exact computations in cobar and cylinder operads of finite cooperads.

Cooperads are given as builtin names ("cocom:4") or paths to cooperad JSON
files. Structured arguments accept dicts or JSON strings; results are
returned as dicts carrying an "ok" flag and a "text" rendering.
"""

import json
from os import fspath

from ._cylop import InvalidInput, LiftFailure
from . import _cylop

__all__ = ["InvalidInput", "LiftFailure", "cooperad", "validate", "cohomology", "lift", "transport", "mc_check"]


def _dump(x):
    if x is None or isinstance(x, str):
        return x
    return json.dumps(x)


def _result(triple):
    ok, body, text = triple
    out = json.loads(body)
    out["ok"] = ok
    out["text"] = text
    return out


def cooperad(spec, cap=-1):
    return json.loads(_cylop.cooperad_json(fspath(spec), cap))


def validate(spec, cap=-1):
    return _result(_cylop.validate(fspath(spec), cap))


def cohomology(spec, n, weight0=False, cap=-1):
    return _result(_cylop.cohomology(fspath(spec), n, weight0, cap))


def lift(spec, derivation=None, seed=1, cap=-1):
    return _result(_cylop.lift(fspath(spec), _dump(derivation), seed, cap))


def transport(spec, triple, derivation=None, seed=1, cap=-1):
    return _result(_cylop.transport(fspath(spec), _dump(triple), _dump(derivation), seed, cap))


def mc_check(spec, element, cap=-1):
    return _result(_cylop.mc_check(fspath(spec), _dump(element), cap))
