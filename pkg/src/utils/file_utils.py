"""File handling utilities: JSON reports, input hashing and run manifests."""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from errors import ForgeError


def write_json(doc: Dict[str, Any], path: Union[str, Path]) -> Path:
    """Write a report with sorted keys so identical runs give identical bytes."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w') as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write('\n')
    return path


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise ForgeError(f"Input file not found: {path}")
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ForgeError(f"Malformed JSON in {path}: {e}")


def sha256_file(path: Union[str, Path]) -> str:
    if not Path(path).is_file():
        raise ForgeError(f"Input file not found: {path}")
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for block in iter(lambda: f.read(1 << 16), b''):
            digest.update(block)
    return digest.hexdigest()


def output_path(output: Optional[str], output_dir: Union[str, Path], default_name: str) -> Path:
    """Explicit --output wins; otherwise the default name inside the output directory."""
    if output:
        path = Path(output)
        if path.suffix != '.json':
            path = path.with_name(path.name + '.json')
        return path
    return Path(output_dir) / default_name


def manifest_path(report: Union[str, Path]) -> Path:
    report = Path(report)
    return report.with_name(report.stem + '.manifest.json')


@dataclass
class RunManifest:
    """What a command was asked to do and what it produced."""
    command: str
    parameters: Dict[str, Any]
    seed: Optional[int]
    inputs: Dict[str, str] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    wall_time: float = 0.0

    def add_input(self, path: Union[str, Path]):
        self.inputs[str(path)] = sha256_file(path)

    def add_output(self, path: Union[str, Path]):
        self.outputs.append(str(path))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "inputs": dict(sorted(self.inputs.items())),
            "outputs": list(self.outputs),
            "wall_time": round(self.wall_time, 3),
        }

    def write(self, report: Union[str, Path]) -> Path:
        return write_json(self.to_dict(), manifest_path(report))
