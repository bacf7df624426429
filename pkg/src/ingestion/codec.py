"""
JSON codec for matrices, ensembles, POVMs, CP maps, overlap instances and bipartite states
"""
import json
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import JSON_INDENT
from ..channel import CpMap
from ..errors import ParseError, QuadboundError
from ..measure import Ensemble, Povm
from ..numlin import TensorFactorization
from ..overlap import OverlapInstance

logger = logging.getLogger(__name__)


def encode_matrix(a: np.ndarray, dims: Optional[Sequence[int]] = None) -> Dict[str, Any]:
    """
    {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major order.

    Vectors are written as n x 1 matrices.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    obj: Dict[str, Any] = {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in a.reshape(-1)],
    }
    if dims is not None:
        obj["dims"] = [int(d) for d in dims]
    return obj


def decode_matrix(obj: Dict[str, Any]) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        data = obj["data"]
        if len(data) != rows * cols:
            raise ParseError(f"matrix declares {rows}x{cols} but carries {len(data)} entries")
        values = np.array([complex(float(re), float(im)) for re, im in data], dtype=complex)
    except QuadboundError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed matrix object: {e}") from e
    return values.reshape(rows, cols)


def _matrix_list(obj: Dict[str, Any], key: str) -> List[np.ndarray]:
    try:
        items = obj[key]
    except (KeyError, TypeError) as e:
        raise ParseError(f"missing '{key}' list") from e
    if not isinstance(items, list):
        raise ParseError(f"'{key}' must be a list")
    return [decode_matrix(item) for item in items]


def encode_ensemble(e: Ensemble) -> Dict[str, Any]:
    return {"dim": e.dim, "states": [encode_matrix(rho) for rho in e.states]}


def decode_ensemble(obj: Dict[str, Any]) -> Ensemble:
    states = _matrix_list(obj, "states")
    try:
        dim = int(obj["dim"])
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"ensemble needs an integer 'dim': {e}") from e
    return Ensemble(dim=dim, states=tuple(states))


def encode_povm(m: Povm) -> Dict[str, Any]:
    return {"dim": m.dim, "elements": [encode_matrix(mk) for mk in m.elements]}


def decode_povm(obj: Dict[str, Any]) -> Povm:
    elements = _matrix_list(obj, "elements")
    try:
        dim = int(obj["dim"])
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"POVM needs an integer 'dim': {e}") from e
    return Povm(dim=dim, elements=tuple(elements))


def encode_cpmap(m: CpMap) -> Dict[str, Any]:
    return {"dim_in": m.dim_in, "dim_out": m.dim_out, "kraus": [encode_matrix(f) for f in m.kraus]}


def decode_cpmap(obj: Dict[str, Any]) -> CpMap:
    kraus = _matrix_list(obj, "kraus")
    try:
        dim_in, dim_out = int(obj["dim_in"]), int(obj["dim_out"])
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"CP map needs integer 'dim_in' and 'dim_out': {e}") from e
    return CpMap(dim_in=dim_in, dim_out=dim_out, kraus=tuple(kraus))


def encode_overlap(instance: OverlapInstance) -> Dict[str, Any]:
    return {
        "dim_k": instance.dim_k,
        "dim_h": instance.dim_h,
        "dim_l": instance.dim_l,
        "mu": encode_matrix(instance.mu, dims=(instance.dim_k, instance.dim_h)),
        "phi": encode_matrix(instance.phi.reshape(-1)),
    }


def decode_overlap(obj: Dict[str, Any]) -> OverlapInstance:
    try:
        dims = int(obj["dim_k"]), int(obj["dim_h"]), int(obj["dim_l"])
        mu, phi = decode_matrix(obj["mu"]), decode_matrix(obj["phi"])
    except QuadboundError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed overlap instance: {e}") from e
    return OverlapInstance(dim_k=dims[0], dim_h=dims[1], dim_l=dims[2], mu=mu, phi=phi)


def encode_bipartite(rho: np.ndarray, dims: TensorFactorization) -> Dict[str, Any]:
    return {"dims": list(dims.dims), "rho": encode_matrix(rho)}


def decode_bipartite(obj: Dict[str, Any]) -> Tuple[np.ndarray, TensorFactorization]:
    try:
        dims = TensorFactorization(tuple(int(d) for d in obj["dims"]))
        rho = decode_matrix(obj["rho"])
    except QuadboundError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed bipartite state: {e}") from e
    return rho, dims


def load_json(path: str) -> Dict[str, Any]:
    """Read a JSON object from disk, mapping I/O and decode failures to ParseError."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
    except FileNotFoundError as e:
        raise ParseError(f"no such file: {path}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    if not isinstance(obj, dict):
        raise ParseError(f"{path} must hold a JSON object")
    logger.debug(f"loaded {path}")
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=JSON_INDENT)
