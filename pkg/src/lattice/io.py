"""JSON reading and writing of lattices."""

import json
from pathlib import Path
from typing import Any, Dict, Union

from errors import LatticeError
from lattice.geometric import BooleanLattice, GeometricLattice, TableLattice
from lattice.subspace import SubspaceLattice


def lattice_to_dict(L: GeometricLattice) -> Dict[str, Any]:
    return L.to_dict()


def lattice_from_dict(doc: Dict[str, Any]) -> GeometricLattice:
    """
    Parse a lattice document. Subspace and Boolean lattices are rebuilt from
    their tag ("subspace:q,n", "boolean:n"); anything else needs a join table.
    """
    join = doc.get("join")
    try:
        if isinstance(join, str) and join.startswith("subspace:"):
            q, n = (int(x) for x in join.split(":", 1)[1].split(","))
            return SubspaceLattice(n, q)
        if isinstance(join, str) and join.startswith("boolean:"):
            return BooleanLattice(int(join.split(":", 1)[1]))
        ranks = doc["rank"]
    except (KeyError, TypeError, ValueError) as e:
        raise LatticeError(f"Malformed lattice document: {e}")
    if not isinstance(join, list):
        raise LatticeError("Lattice document needs a join table or a subspace/boolean tag")
    return TableLattice(ranks, join, homogeneous=bool(doc.get("homogeneous", False)),
                        name=doc.get("name", ""))


def save_lattice(L: GeometricLattice, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(lattice_to_dict(L), f, indent=2)
    return path


def load_lattice(path: Union[str, Path]) -> GeometricLattice:
    try:
        with open(path, 'r') as f:
            doc = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise LatticeError(f"Cannot read lattice file {path}: {e}")
    return lattice_from_dict(doc)
