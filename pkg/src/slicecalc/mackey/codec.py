from __future__ import annotations

from typing import Any, TypedDict, List, Union

from ..errors import InvalidSpecError
from ..io_utils import decode_int, read_json
from ..linalg.abelian import FgAbGroup
from ..linalg.matrix import IntMatrix
from .functor import CpMackey


class LevelSpec(TypedDict):
    gens: int
    rels: List[List[Union[int, str]]]


class MackeySpec(TypedDict):
    p: int
    bottom: LevelSpec
    top: LevelSpec
    res: List[List[Union[int, str]]]
    tr: List[List[Union[int, str]]]
    gamma: List[List[Union[int, str]]]


def mackey_to_json(m: CpMackey) -> MackeySpec:
    return MackeySpec(
        p=m.p,
        bottom=m.bottom.to_json(),  # type: ignore[typeddict-item]
        top=m.top.to_json(),  # type: ignore[typeddict-item]
        res=m.res.matrix.to_json(),
        tr=m.tr.matrix.to_json(),
        gamma=m.gamma.matrix.to_json(),
    )


def _map(obj: Any, key: str, rows: int, cols: int) -> IntMatrix:
    path = f"$.{key}"
    if key not in obj:
        if key == "gamma":
            return IntMatrix.identity(cols)
        raise InvalidSpecError("missing field", path=path)
    mat = IntMatrix.from_json(obj[key], path, cols=cols if not obj[key] else None)
    if mat.shape != (rows, cols):
        raise InvalidSpecError(f"expected a {rows}x{cols} matrix, got {mat.rows}x{mat.cols}", path=path)
    return mat


def mackey_from_json(obj: Any) -> CpMackey:
    """
    Parse the documented schema. Shape and type errors name the JSON path;
    axiom failures are left to `validate`. gamma defaults to the identity.
    """
    if not isinstance(obj, dict):
        raise InvalidSpecError("expected an object", path="$")
    if "p" not in obj:
        raise InvalidSpecError("missing field", path="$.p")
    p = decode_int(obj["p"], "$.p")
    for level in ("bottom", "top"):
        if level not in obj:
            raise InvalidSpecError("missing field", path=f"$.{level}")
    bottom = FgAbGroup.from_json(obj["bottom"], "$.bottom")
    top = FgAbGroup.from_json(obj["top"], "$.top")
    nb, nt = bottom.generators, top.generators
    res = _map(obj, "res", nb, nt)
    tr = _map(obj, "tr", nt, nb)
    gamma = _map(obj, "gamma", nb, nb)
    try:
        return CpMackey.from_matrices(p, bottom, top, res, tr, gamma)
    except InvalidSpecError as e:
        if e.path:
            raise
        raise InvalidSpecError(str(e), path="$.p") from e


def load_mackey(path: str) -> CpMackey:
    return mackey_from_json(read_json(path))
