"""
Compact channel specifications such as "depolarizing:p=0.5,d=2" or "unitary:H"
"""
import logging
import os
from typing import Callable, Dict, Optional

import numpy as np

from ..channel import GATES, CpMap, amplitude_damping, depolarizing, identity_channel, unitary_channel
from ..errors import ParseError
from .codec import decode_cpmap, load_json
from .generators import make_rng, random_channel

logger = logging.getLogger(__name__)

GATE_ALIASES: Dict[str, str] = {"HADAMARD": "H", "H(ADAMARD)": "H"}


def _parse_params(body: str) -> Dict[str, str]:
    params: Dict[str, str] = {}
    if not body:
        return params
    for item in body.split(","):
        key, sep, value = item.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise ParseError(f"expected key=value, got '{item}'")
        params[key.strip()] = value.strip()
    return params


def _number(params: Dict[str, str], key: str, cast: Callable, default=None):
    if key not in params:
        if default is None:
            raise ParseError(f"missing parameter '{key}'")
        return default
    try:
        return cast(params[key])
    except ValueError as e:
        raise ParseError(f"parameter {key}={params[key]} is not a valid {cast.__name__}") from e


def _check_known(name: str, params: Dict[str, str], allowed) -> None:
    unknown = sorted(set(params) - set(allowed))
    if unknown:
        raise ParseError(f"{name} does not take parameters {unknown}")


def parse_channel_spec(spec: str, rng: Optional[np.random.Generator] = None) -> CpMap:
    """
    Build a channel from a spec string or a CP-map JSON file.

    Grammar: name[:k=v[,k=v...]] with names identity(d), depolarizing(p, d),
    amplitude_damping(gamma), random(din, dout, kraus), or unitary:<gate>
    with gate one of H, X, Y, Z, S, T (H also spelled Hadamard or H(adamard)).
    Anything naming an existing file is read as CP-map JSON.

    Args:
        spec: Channel specification
        rng: Generator for random channels; a fresh default-seed stream otherwise

    Returns:
        CpMap
    """
    spec = spec.strip()
    if os.path.isfile(spec) or spec.endswith(".json"):
        return decode_cpmap(load_json(spec))

    name, _, body = spec.partition(":")
    name = name.strip().lower()
    if name == "unitary":
        gate = body.strip().upper()
        gate = GATE_ALIASES.get(gate, gate)
        if gate not in GATES:
            raise ParseError(f"unknown gate '{body}', expected one of {sorted(GATES)}")
        return unitary_channel(GATES[gate])

    params = _parse_params(body)
    if name == "identity":
        _check_known(name, params, ["d"])
        return identity_channel(_number(params, "d", int, 2))
    if name == "depolarizing":
        _check_known(name, params, ["p", "d"])
        return depolarizing(_number(params, "p", float), _number(params, "d", int, 2))
    if name == "amplitude_damping":
        _check_known(name, params, ["gamma"])
        return amplitude_damping(_number(params, "gamma", float))
    if name == "random":
        _check_known(name, params, ["din", "dout", "kraus"])
        dim_in = _number(params, "din", int, 2)
        dim_out = _number(params, "dout", int, dim_in)
        kraus = _number(params, "kraus", int, dim_in * dim_out)
        return random_channel(rng if rng is not None else make_rng(), dim_in, dim_out, kraus)
    raise ParseError(f"unknown channel '{name}'")
