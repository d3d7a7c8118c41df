"""
JSON manifold specifications.

A spec is one of::

    {"type": "space_form", "dim": 6, "curvature": 1.0, "volume": ..., "euler_char": ...}
    {"type": "cpn", "complex_dim": 2}
    {"type": "product", "factors": [spec, spec], "auto_rescale": false}
    {"type": "custom", "dim": 4, "components": [[[[...]]]], "volume": 1.0,
     "euler_char": 2, "complex_structure": [[...]], "symmetric": false,
     "grad_W_sq": 0.0, "name": "..."}

Optional keys default to absent; ``volume`` is required for space forms with
``curvature <= 0`` and for custom data.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .catalog import ManifoldModel, make_cpn, make_custom, make_product, make_space_form
from .errors import InputError


class SpecError(InputError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


@dataclass(frozen=True)
class SpaceFormSpec:
    dim: int
    curvature: float
    volume: float | None = None
    euler_char: int | None = None


@dataclass(frozen=True)
class CPnSpec:
    complex_dim: int


@dataclass(frozen=True)
class ProductSpec:
    a: "ManifoldSpec"
    b: "ManifoldSpec"
    auto_rescale: bool = False


@dataclass(frozen=True)
class CustomSpec:
    dim: int
    components: tuple
    volume: float
    euler_char: int | None = None
    complex_structure: tuple | None = None
    symmetric: bool = False
    grad_W_sq: float | None = None
    name: str = "custom"


ManifoldSpec = Union[SpaceFormSpec, CPnSpec, ProductSpec, CustomSpec]

_KEYS = {
    "space_form": {"type", "dim", "curvature", "volume", "euler_char"},
    "cpn": {"type", "complex_dim"},
    "product": {"type", "factors", "auto_rescale"},
    "custom": {"type", "dim", "components", "volume", "euler_char", "complex_structure",
               "symmetric", "grad_W_sq", "name"},
}


def _get(doc: dict, key: str, path: str, kind, required: bool = True, default=None):
    if key not in doc:
        if required:
            raise SpecError(f"{path}.{key}", f'missing required field "{key}"')
        return default
    val = doc[key]
    p = f"{path}.{key}"
    if kind is int:
        if isinstance(val, bool) or not isinstance(val, int):
            raise SpecError(p, f"expected an integer, got {type(val).__name__}")
    elif kind is float:
        if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
            raise SpecError(p, "expected a finite number")
        val = float(val)
    elif kind is bool:
        if not isinstance(val, bool):
            raise SpecError(p, "expected true or false")
    elif kind is str:
        if not isinstance(val, str):
            raise SpecError(p, "expected a string")
    return val


def _array(val, shape: tuple[int, ...], path: str) -> tuple:
    try:
        arr = np.asarray(val, dtype=float)
    except (TypeError, ValueError):
        raise SpecError(path, "expected a nested numeric array") from None
    if arr.shape != shape:
        raise SpecError(path, f"expected shape {list(shape)}, got {list(arr.shape)}")
    if not np.all(np.isfinite(arr)):
        raise SpecError(path, "array has non-finite entries")
    return val


def spec_from_dict(doc, path: str = "$") -> ManifoldSpec:
    if not isinstance(doc, dict):
        raise SpecError(path, "expected an object")
    kind = _get(doc, "type", path, str)
    if kind not in _KEYS:
        raise SpecError(f"{path}.type", f"unknown type {kind!r} (expected one of {sorted(_KEYS)})")
    extra = sorted(set(doc) - _KEYS[kind])
    if extra:
        raise SpecError(f"{path}.{extra[0]}", f"unexpected field for type {kind!r}")

    if kind == "space_form":
        dim = _get(doc, "dim", path, int)
        if dim < 2:
            raise SpecError(f"{path}.dim", "dimension must be >= 2")
        if dim > 8:
            raise SpecError(f"{path}.dim", "dimension must be <= 8")
        K = _get(doc, "curvature", path, float)
        vol = _get(doc, "volume", path, float, required=K <= 0)
        if vol is not None and vol <= 0:
            raise SpecError(f"{path}.volume", "volume must be positive")
        chi = _get(doc, "euler_char", path, int, required=False)
        return SpaceFormSpec(dim, K, vol, chi)

    if kind == "cpn":
        m = _get(doc, "complex_dim", path, int)
        if not 1 <= m <= 4:
            raise SpecError(f"{path}.complex_dim", "complex dimension must be in 1..4")
        return CPnSpec(m)

    if kind == "product":
        factors = _get(doc, "factors", path, list)
        if not isinstance(factors, list) or len(factors) != 2:
            raise SpecError(f"{path}.factors", "expected a list of exactly two factor specs")
        a = spec_from_dict(factors[0], f"{path}.factors[0]")
        b = spec_from_dict(factors[1], f"{path}.factors[1]")
        auto = _get(doc, "auto_rescale", path, bool, required=False, default=False)
        return ProductSpec(a, b, auto)

    dim = _get(doc, "dim", path, int)
    if not 2 <= dim <= 8:
        raise SpecError(f"{path}.dim", "dimension must be in 2..8")
    comps = _array(_get(doc, "components", path, list), (dim,) * 4, f"{path}.components")
    vol = _get(doc, "volume", path, float)
    if vol <= 0:
        raise SpecError(f"{path}.volume", "volume must be positive")
    J = doc.get("complex_structure")
    if J is not None:
        J = _array(J, (dim, dim), f"{path}.complex_structure")
    return CustomSpec(
        dim=dim,
        components=comps,
        volume=vol,
        euler_char=_get(doc, "euler_char", path, int, required=False),
        complex_structure=J,
        symmetric=_get(doc, "symmetric", path, bool, required=False, default=False),
        grad_W_sq=_get(doc, "grad_W_sq", path, float, required=False),
        name=_get(doc, "name", path, str, required=False, default="custom"),
    )


def parse_spec(text: bytes | str) -> ManifoldSpec:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecError("$", f"input is not UTF-8 ({exc.reason})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("$", f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return spec_from_dict(doc)


def spec_to_dict(spec: ManifoldSpec) -> dict:
    if isinstance(spec, SpaceFormSpec):
        d = {"type": "space_form", "dim": spec.dim, "curvature": spec.curvature}
        if spec.volume is not None:
            d["volume"] = spec.volume
        if spec.euler_char is not None:
            d["euler_char"] = spec.euler_char
        return d
    if isinstance(spec, CPnSpec):
        return {"type": "cpn", "complex_dim": spec.complex_dim}
    if isinstance(spec, ProductSpec):
        return {"type": "product", "factors": [spec_to_dict(spec.a), spec_to_dict(spec.b)],
                "auto_rescale": spec.auto_rescale}
    d = {"type": "custom", "name": spec.name, "dim": spec.dim, "components": spec.components,
         "volume": spec.volume, "symmetric": spec.symmetric}
    for key in ("euler_char", "complex_structure", "grad_W_sq"):
        if getattr(spec, key) is not None:
            d[key] = getattr(spec, key)
    return d


def build(spec: ManifoldSpec) -> ManifoldModel:
    if isinstance(spec, SpaceFormSpec):
        return make_space_form(spec.dim, spec.curvature, spec.volume, spec.euler_char)
    if isinstance(spec, CPnSpec):
        return make_cpn(spec.complex_dim)
    if isinstance(spec, ProductSpec):
        return make_product(build(spec.a), build(spec.b), spec.auto_rescale)
    return make_custom(
        np.asarray(spec.components, dtype=float), spec.volume, spec.euler_char,
        None if spec.complex_structure is None else np.asarray(spec.complex_structure, dtype=float),
        name=spec.name, is_symmetric=spec.symmetric, grad_W_sq=spec.grad_W_sq,
    )


CATALOG_SPECS: dict[str, dict] = {
    "S^4": {"type": "space_form", "dim": 4, "curvature": 1.0},
    "S^6": {"type": "space_form", "dim": 6, "curvature": 1.0},
    "CP^2": {"type": "cpn", "complex_dim": 2},
    "CP^3": {"type": "cpn", "complex_dim": 3},
    "S^2 x S^2": {"type": "product", "auto_rescale": False, "factors": [
        {"type": "space_form", "dim": 2, "curvature": 1.0},
        {"type": "space_form", "dim": 2, "curvature": 1.0}]},
    "S^3 x S^3": {"type": "product", "auto_rescale": False, "factors": [
        {"type": "space_form", "dim": 3, "curvature": 1.0},
        {"type": "space_form", "dim": 3, "curvature": 1.0}]},
    "S^2 x S^4": {"type": "product", "auto_rescale": True, "factors": [
        {"type": "space_form", "dim": 2, "curvature": 1.0},
        {"type": "space_form", "dim": 4, "curvature": 1.0}]},
    "T^4": {"type": "space_form", "dim": 4, "curvature": 0.0, "volume": 1.0},
    "H^4": {"type": "space_form", "dim": 4, "curvature": -1.0, "volume": 1.0},
}
