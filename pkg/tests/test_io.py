import io

import pytest

from fillable.complex import mask
from fillable.io import FacetOutOfRange, MalformedInput, VertexCapExceeded, complex_from_json, parse_complex


def test_parse_stream():
    K = parse_complex(io.StringIO('{"m": 3, "facets": [[1, 2], [3]]}'))
    assert K.facets == (mask([2]), mask([0, 1]))


def test_ground_set_and_ghosts():
    K = complex_from_json({"m": 3, "facets": [[1]], "ground_set": [1, 3]})
    assert K.ground_set == 0b101 and K.ghost_vertices == 0b100
    assert complex_from_json(K.to_json()) == K
    assert complex_from_json({"m": 2, "facets": []}).is_void
    assert complex_from_json({"m": 2, "facets": [[]]}).dim == -1


@pytest.mark.parametrize("doc,exc", [
    ("{", MalformedInput),
    ('{"facets": []}', MalformedInput),
    ('{"m": "3", "facets": []}', MalformedInput),
    ('{"m": 3, "facets": [[1, "a"]]}', MalformedInput),
    ('{"m": 3, "facets": [[true]]}', MalformedInput),
    ('{"m": 25, "facets": []}', VertexCapExceeded),
    ('{"m": 3, "facets": [[4]]}', FacetOutOfRange),
    ('{"m": 3, "facets": [[0]]}', FacetOutOfRange),
    ('{"m": 3, "facets": [[3]], "ground_set": [1, 2]}', FacetOutOfRange),
])
def test_errors(doc, exc):
    with pytest.raises(exc):
        parse_complex(io.StringIO(doc))


def test_exit_codes():
    assert (MalformedInput.exit_code, VertexCapExceeded.exit_code, FacetOutOfRange.exit_code) == (1, 3, 4)
