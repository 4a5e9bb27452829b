"""Certificate and report records shared by the bound engine.

A disjointness certificate witnesses the hypothesis "every conjugate of
A meets B trivially" for a pair of subgroups.  Each step is either
machine-verified (an executable check that ran and passed) or cited
(a literature fact carried with its citation); the distinction is kept
all the way into rendered reports so nothing overclaims mechanical
verification.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class CertificateError(ValueError):
    """A certificate check failed; the message names the failing witness."""


@dataclass(frozen=True)
class CertStep:
    description: str
    status: str  # "machine-verified" | "cited"
    citation: str = ""

    def __post_init__(self) -> None:
        if self.status not in ("machine-verified", "cited"):
            raise CertificateError(f"unknown step status {self.status!r}")
        if self.status == "cited" and not self.citation:
            raise CertificateError("cited steps must carry a citation")

    def to_json(self) -> dict:
        d = {"description": self.description, "status": self.status}
        if self.citation:
            d["citation"] = self.citation
        return d


@dataclass(frozen=True)
class DisjointnessCertificate:
    """Witness that conjugates of A intersect B trivially inside G."""

    variant: str  # "retraction" | "split-extension" | "linking" | "trusted-chain"
    a_label: str
    b_label: str
    steps: tuple[CertStep, ...]

    def __post_init__(self) -> None:
        if self.variant not in ("retraction", "split-extension", "linking", "trusted-chain"):
            raise CertificateError(f"unknown certificate variant {self.variant!r}")
        if not self.steps:
            raise CertificateError("certificate needs at least one step")

    @property
    def fully_machine_verified(self) -> bool:
        return all(s.status == "machine-verified" for s in self.steps)

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "subgroup_a": self.a_label,
            "subgroup_b": self.b_label,
            "steps": [s.to_json() for s in self.steps],
        }


@dataclass(frozen=True)
class Provenance:
    rule: str
    value: int

    def to_json(self) -> dict:
        return {"rule": self.rule, "value": self.value}


@dataclass(frozen=True)
class BoundReport:
    """An interval for TC with per-bound provenance and certificates."""

    group: str
    lower: int
    upper: int
    lower_provenance: tuple[Provenance, ...]
    upper_provenance: tuple[Provenance, ...]
    certificates: tuple[DisjointnessCertificate, ...] = field(default=())
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise CertificateError(
                f"report for {self.group}: lower bound {self.lower} exceeds upper {self.upper}"
            )

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_json(self) -> dict:
        return {
            "schema": "tcbounds/1",
            "group": self.group,
            "tc_lower": self.lower,
            "tc_upper": self.upper,
            "exact": self.exact,
            "lower_provenance": [p.to_json() for p in self.lower_provenance],
            "upper_provenance": [p.to_json() for p in self.upper_provenance],
            "certificates": [c.to_json() for c in self.certificates],
            "notes": list(self.notes),
        }
