"""Report records produced by the expansion measurements."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from cochains.cochain import Cochain

COBOUNDARY = "coboundary"
COSYSTOLIC = "cosystolic"
MODES = (COBOUNDARY, COSYSTOLIC)

EXHAUSTIVE = "exhaustive"
RANDOMIZED = "randomized"


def number_to_json(value: Union[None, int, float, Fraction]) -> Optional[float]:
    if value is None:
        return None
    return float(value)


def exact_to_json(value) -> Optional[str]:
    """Exact rationals are also written as "p/q" strings so reports stay lossless."""
    if isinstance(value, Fraction):
        return str(value)
    return None


@dataclass
class ExpansionReport:
    complex_name: str
    level: int
    group: str
    mode: str
    value: Optional[Union[Fraction, float]]
    witness: Optional[Cochain]
    method: str
    budget_used: int
    nontrivial_cohomology: bool = False
    cosystolic_value: Optional[Fraction] = None
    systole: Optional[Fraction] = None
    exact: bool = True
    seed: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    @property
    def has_witness(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {
            "kind": "expansion",
            "params": {
                "complex": self.complex_name,
                "k": self.level,
                "group": self.group,
                "mode": self.mode,
            },
            "value": number_to_json(self.value),
            "method": self.method,
            "seed": self.seed,
            "budget_used": self.budget_used,
            "exact": self.exact,
            "nontrivial_cohomology": self.nontrivial_cohomology,
        }
        if exact_to_json(self.value):
            doc["value_exact"] = exact_to_json(self.value)
        if self.cosystolic_value is not None:
            doc["cosystolic_value"] = number_to_json(self.cosystolic_value)
        if self.systole is not None:
            doc["systole"] = number_to_json(self.systole)
        if self.witness is not None:
            doc["witness"] = self.witness.to_dict()
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc
