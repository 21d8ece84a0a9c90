"""Three-valued stability verdicts shared by the scalar and matrix layers."""

import enum
from dataclasses import dataclass, field


class Verdict(enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


@dataclass
class StabilityVerdict:
    status: Verdict
    witness: object = None  # offending root / eigenvalue / sample tuple
    evidence: dict = field(default_factory=dict)

    @property
    def holds(self):
        return self.status is Verdict.HOLDS

    @property
    def violated(self):
        return self.status is Verdict.VIOLATED

    def to_dict(self):
        def enc(v):
            if isinstance(v, complex):
                return [v.real, v.imag]
            if isinstance(v, (list, tuple)):
                return [enc(u) for u in v]
            return v

        return {
            "status": self.status.value,
            "witness": enc(self.witness) if self.witness is not None else None,
            "evidence": {k: enc(v) for k, v in self.evidence.items()},
        }
