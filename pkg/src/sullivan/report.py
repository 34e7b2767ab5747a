"""Structured check reports, rendered as text or deterministic JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

PASS, FAIL, INFO = "pass", "fail", "info"


@dataclass
class Check:
    check: str
    status: str
    witness: Any = None
    paper_ref: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"check": self.check, "status": self.status, "witness": plain(self.witness),
                "paper_ref": self.paper_ref}


@dataclass
class Report:
    command: str
    subject: str = ""
    checks: List[Check] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    def add(self, check: str, ok: Optional[bool], witness: Any = None, ref: str = "") -> Check:
        status = INFO if ok is None else (PASS if ok else FAIL)
        item = Check(check, status, witness, ref)
        self.checks.append(item)
        return item

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.check, c.status, c.witness, c.paper_ref))

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def status(self) -> str:
        return PASS if self.ok else FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "subject": self.subject,
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
            "data": plain(self.data),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        head = f"{self.command}" + (f" {self.subject}" if self.subject else "")
        lines = [f"{head}: {self.status.upper()}"]
        for key, value in self.data.items():
            lines.extend(_text_block(key, plain(value), 1))
        for c in self.checks:
            line = f"  [{c.status.upper():4}] {c.check}"
            if c.paper_ref:
                line += f"  ({c.paper_ref})"
            lines.append(line)
            if c.witness not in (None, [], {}, ""):
                lines.extend(_text_block("witness", plain(c.witness), 3))
        return "\n".join(lines) + "\n"


def _text_block(key: str, value: Any, indent: int) -> List[str]:
    pad = "  " * indent
    if key == "-" and not isinstance(value, dict):
        if isinstance(value, list) and not any(isinstance(v, (dict, list)) for v in value):
            return [f"{pad}- " + ", ".join(str(v) for v in value)]
        if not isinstance(value, list):
            return [f"{pad}- {value}"]
    if key == "-" and isinstance(value, dict) and value:
        out = []
        for k, v in value.items():
            out.extend(_text_block(str(k), v, indent + 1))
        out[0] = f"{pad}- " + out[0].lstrip()
        return out
    if isinstance(value, dict):
        out = [f"{pad}{key}:"]
        for k, v in value.items():
            out.extend(_text_block(str(k), v, indent + 1))
        return out
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        out = [f"{pad}{key}:"]
        for v in value:
            out.extend(_text_block("-", v, indent + 1))
        return out
    if isinstance(value, list):
        return [f"{pad}{key}: " + ", ".join(str(v) for v in value)]
    return [f"{pad}{key}: {value}"]


def plain(value: Any) -> Any:
    """Convert to JSON-ready data: Fractions become 'p/q' strings, keys become strings."""
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return round(value, 6)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [plain(v) for v in value]
        return sorted(items, key=str) if isinstance(value, (set, frozenset)) else items
    if hasattr(value, "to_dict"):
        return plain(value.to_dict())
    return str(value)


# Descriptive provenance tags attached to checks and numbers.
REFS = {
    "d_squared": "cochain complex axiom d∘d = 0",
    "minimality": "minimality condition: d lands in word length >= 2",
    "nilpotence": "nilpotence condition: exhaustive tower Z(r)",
    "cautious": "cautious filtration definition",
    "naive_equals_cautious": "lemma: naive and cautious filtrations agree",
    "delta_injective": "lemma: delta is injective on E^n(J), J >= 2",
    "dnil_step_bound": "lemma: nilpotent component lies in blocks with i + j <= J",
    "coformal_refinement": "coformal lemma: quadratic blocks satisfy i1 + i2 <= J + c",
    "weight": "definition of weight",
    "weight_bounds": "weight bounds: J (degree 1), J + 2c (degree 2), n(4c-1) - 3(2c-1) + (J-1), 2n-1 (simple), (c+1)(n-1) + J - c (coformal)",
    "light_factor": "conjecture: a weight-maximizing simple summand has a step-1 factor",
    "exponents": "summary table of filling-volume exponents",
    "conjecture": "conjecture: O(L^{3nc}) for c-step nilpotent targets",
    "fundamental_theorems": "fundamental theorems for the integration operators",
    "obstruction": "elementary-extension obstruction O(z) = (f(dz), g(z) + ∫_0^1 Φ(dz))",
    "extension": "extension formulas f~(z) = b, Φ~(z) = g(z) + d(c⊗t) + ∫_0^t Φ(dz)",
    "relative_obstruction": "relative obstruction ψ(z) - φ(z) - ∫_0^1 Φ(dz)",
    "dilatation": "dilatation Dil(φ) = max_k ||φ|V_k||^{1/k}",
    "zeta": "iterated-bracket classes ζ_{k,j}",
    "jacobi": "Jacobi lemmas: [t, ζ_{k,c}] = 0 and ζ_{k,j} = [α_j, ζ_{k-1,c}]",
    "nonvanishing": "lemma: ζ_{k,c} != 0",
    "scaling": "scaling weight (c+1)(k-1) of ζ_{k,c}",
    "artifact": "artifact plumbing",
}
