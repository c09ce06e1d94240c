"""Tensor documents: the JSON file format consumed and emitted by the CLI.

A document is a single JSON object with exactly three keys:

    field    "rational" | "gf(p)" | "gaussian-rational"
    dims     list of 2 or 3 positive integers
    entries  dense:  list of scalar strings, row-major, length prod(dims)
             sparse: list of {"index": [0-based ints], "value": "scalar"}

Scalars are exact strings ("a", "a/b", "a/b+c/di"); anything that smells
of floating point is rejected.  Unknown keys are rejected so that typos
fail loudly instead of being ignored.
"""

from __future__ import annotations

import json

from .fields import field_from_descriptor
from .tensors import Shape, ShapeError, Tensor


class DocumentError(ValueError):
    """A tensor document failed to parse or validate."""


_TOP_KEYS = {"field", "dims", "entries"}
_SPARSE_KEYS = {"index", "value"}


def parse_document(text: str, source: str = "<input>") -> Tensor:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: not valid JSON: {exc}") from exc

    if not isinstance(data, dict):
        raise DocumentError(f"{source}: document must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise DocumentError(f"{source}: unknown field(s) {sorted(unknown)}; allowed: field, dims, entries")
    missing = _TOP_KEYS - set(data)
    if missing:
        raise DocumentError(f"{source}: missing field(s) {sorted(missing)}")

    if not isinstance(data["field"], str):
        raise DocumentError(f"{source}: 'field' must be a string descriptor")
    try:
        field = field_from_descriptor(data["field"])
    except ValueError as exc:
        raise DocumentError(f"{source}: {exc}") from exc

    dims = data["dims"]
    if not isinstance(dims, list) or not all(isinstance(d, int) and not isinstance(d, bool) for d in dims):
        raise DocumentError(f"{source}: 'dims' must be a list of integers")
    try:
        shape = Shape(dims)
    except ShapeError as exc:
        raise DocumentError(f"{source}: {exc}") from exc

    entries = data["entries"]
    if not isinstance(entries, list):
        raise DocumentError(f"{source}: 'entries' must be a list")

    if all(isinstance(e, str) for e in entries):
        if len(entries) != shape.size:
            raise DocumentError(
                f"{source}: dense entries need {shape.size} scalars for dims {shape.dims}, "
                f"got {len(entries)}"
            )
        coeffs = []
        for pos, s in enumerate(entries):
            try:
                coeffs.append(field.parse(s))
            except ValueError as exc:
                raise DocumentError(f"{source}: entries[{pos}]: {exc}") from exc
        return Tensor(field, shape, coeffs)

    if all(isinstance(e, dict) for e in entries):
        coeffs = [field.zero] * shape.size
        seen = set()
        for pos, item in enumerate(entries):
            unknown = set(item) - _SPARSE_KEYS
            if unknown:
                raise DocumentError(f"{source}: entries[{pos}]: unknown field(s) {sorted(unknown)}")
            if set(item) != _SPARSE_KEYS:
                raise DocumentError(f"{source}: entries[{pos}]: need exactly 'index' and 'value'")
            index = item["index"]
            if (
                not isinstance(index, list)
                or len(index) != shape.n
                or not all(isinstance(i, int) and not isinstance(i, bool) for i in index)
            ):
                raise DocumentError(
                    f"{source}: entries[{pos}]: 'index' must be a list of {shape.n} integers (0-based)"
                )
            try:
                off = shape.offset(index)
            except ShapeError as exc:
                raise DocumentError(f"{source}: entries[{pos}]: {exc}") from exc
            if off in seen:
                raise DocumentError(f"{source}: entries[{pos}]: duplicate index {index}")
            seen.add(off)
            if not isinstance(item["value"], str):
                raise DocumentError(f"{source}: entries[{pos}]: 'value' must be a scalar string")
            try:
                coeffs[off] = field.parse(item["value"])
            except ValueError as exc:
                raise DocumentError(f"{source}: entries[{pos}]: {exc}") from exc
        return Tensor(field, shape, coeffs)

    raise DocumentError(
        f"{source}: entries must be all scalar strings (dense) or all index/value objects (sparse)"
    )


def document_dict(tensor: Tensor, sparse: bool = False) -> dict:
    if sparse:
        entries = [
            {"index": list(index), "value": tensor.field.format(c)}
            for index, c in zip(tensor.shape.indices(), tensor.coeffs)
            if c
        ]
    else:
        entries = [tensor.field.format(c) for c in tensor.coeffs]
    return {
        "field": tensor.field.descriptor,
        "dims": list(tensor.shape.dims),
        "entries": entries,
    }


def emit_document(tensor: Tensor, sparse: bool = False) -> str:
    return json.dumps(document_dict(tensor, sparse=sparse), indent=2) + "\n"
