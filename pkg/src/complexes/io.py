"""JSON reading and writing of complexes."""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Union

from complexes.simplicial import DEFAULT_FACE_BUDGET, SimplicialComplex
from errors import ComplexError


def _to_json_value(value):
    if isinstance(value, (tuple, list)):
        return [_to_json_value(v) for v in value]
    return value


def _from_json_value(value):
    if isinstance(value, list):
        return tuple(_from_json_value(v) for v in value)
    return value


def complex_to_dict(X: SimplicialComplex) -> Dict[str, Any]:
    """Serialize a complex; weights are exact "p/q" strings and omitted when uniform."""
    tops = X.faces(X.dimension)
    weights = [X.top_weights[face] for face in tops]
    vertices = list(X.vertices)
    doc: Dict[str, Any] = {
        "dimension": X.dimension,
        "vertex_count": len(vertices),
        "maximal_faces": [list(face) for face in tops],
    }
    if X.name:
        doc["name"] = X.name
    if len(set(weights)) > 1:
        doc["weights"] = [str(w) for w in weights]
    if vertices != list(range(len(vertices))):
        doc["vertices"] = vertices
    if X.is_colored:
        colors = X.colors
        doc["colors"] = [colors[v] for v in vertices]
    if X.labels is not None:
        labels = X.labels
        doc["labels"] = [_to_json_value(labels[v]) for v in vertices]
    return doc


def complex_from_dict(doc: Dict[str, Any], face_budget: int = DEFAULT_FACE_BUDGET) -> SimplicialComplex:
    """Parse a complex document; floats and "p/q" strings are both accepted as weights."""
    try:
        tops = doc["maximal_faces"]
        dimension = int(doc["dimension"])
    except (KeyError, TypeError, ValueError) as e:
        raise ComplexError(f"Malformed complex document: {e}")
    vertices = doc.get("vertices")
    if vertices is None:
        vertices = list(range(int(doc.get("vertex_count", 0))))
    colors = doc.get("colors")
    labels = doc.get("labels")
    color_map = None
    if colors is not None:
        if len(colors) != len(vertices):
            raise ComplexError("colors must be parallel to the vertex list")
        color_map = dict(zip(vertices, colors))
    label_map = None
    if labels is not None:
        label_map = {v: _from_json_value(label) for v, label in zip(vertices, labels)}
    weights = doc.get("weights")
    if weights is not None:
        weights = [Fraction(w) if isinstance(w, str) else w for w in weights]
    X = SimplicialComplex(tops, weights=weights, colors=color_map, labels=label_map,
                          face_budget=face_budget, name=doc.get("name", ""))
    if X.dimension != dimension:
        raise ComplexError(f"Declared dimension {dimension} but faces have dimension {X.dimension}")
    return X


def save_complex(X: SimplicialComplex, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(complex_to_dict(X), f, indent=2)
    return path


def load_complex(path: Union[str, Path], face_budget: int = DEFAULT_FACE_BUDGET) -> SimplicialComplex:
    """Load one JSON document, or the first record of a line-delimited file."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise ComplexError(f"Empty complex file: {path}")
        try:
            doc = json.loads(lines[0])
        except json.JSONDecodeError as e:
            raise ComplexError(f"Invalid complex file {path}: {e}")
    return complex_from_dict(doc, face_budget=face_budget)
