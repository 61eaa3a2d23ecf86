"""Reading complexes from JSON."""
from __future__ import annotations

import json
import sys
from typing import TextIO

from .complex import MAX_VERTICES, SimplicialComplex, mask


class InputError(ValueError):
    exit_code = 1


class MalformedInput(InputError):
    exit_code = 1


class VertexCapExceeded(InputError):
    exit_code = 3


class FacetOutOfRange(InputError):
    exit_code = 4


def _int_list(x, what: str) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise MalformedInput(f"{what} must be a list of integers")
    return x


def complex_from_json(data) -> SimplicialComplex:
    if not isinstance(data, dict) or "m" not in data or "facets" not in data:
        raise MalformedInput('expected an object with "m" and "facets"')
    m = data["m"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise MalformedInput('"m" must be a non-negative integer')
    if m > MAX_VERTICES:
        raise VertexCapExceeded(f"vertex cap exceeded: m = {m} > {MAX_VERTICES}")
    if not isinstance(data["facets"], list):
        raise MalformedInput('"facets" must be a list')
    facets = [_int_list(f, "each facet") for f in data["facets"]]
    ground = _int_list(data["ground_set"], '"ground_set"') if "ground_set" in data else list(range(1, m + 1))
    for v in [v for f in facets for v in f] + ground:
        if not 1 <= v <= m:
            raise FacetOutOfRange(f"vertex {v} out of range 1..{m}")
    G = mask(v - 1 for v in ground)
    masks = [mask(v - 1 for v in f) for f in facets]
    if any(f & ~G for f in masks):
        raise FacetOutOfRange("facet uses a vertex outside the ground set")
    return SimplicialComplex.from_masks(masks, G)


def parse_complex(source: str | TextIO | None = None) -> SimplicialComplex:
    """Parse from a path, '-' / None for stdin, or an open text stream."""
    if source is None or source == "-":
        text = sys.stdin.read()
    elif isinstance(source, str):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"malformed JSON: {exc}") from None
    return complex_from_json(data)
