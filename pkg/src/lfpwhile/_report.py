from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of a brute-force property check.

    ``witness`` holds the first violation found (in the checker's canonical
    enumeration order) and is ``None`` when the property held.
    """

    property: str
    passed: bool
    checked: int = 0
    witness: Any = None
    detail: str = ""
    extra: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {
            "property": self.property,
            "status": self.status,
            "states_checked": self.checked,
        }
        if self.witness is not None:
            out["witness"] = repr(self.witness)
        if self.detail:
            out["detail"] = self.detail
        out.update(self.extra)
        return out
