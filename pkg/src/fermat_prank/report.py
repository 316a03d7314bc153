from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvariantViolation


@dataclass(frozen=True)
class PRankReport:
    """Result of a p-rank computation.

    ``method`` names the path that produced ``gamma``: ``naive``,
    ``digit_dp``, ``via_A``, ``hyperelliptic``, ``box_formula``, ``oracle``
    or ``closed_form:<family id>``.
    """

    gamma: int
    genus: int | None
    method: str
    supersingular: bool | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.gamma < 0:
            raise InvariantViolation(f"negative p-rank {self.gamma} from {self.method}")
        if self.genus is not None and self.gamma > self.genus:
            raise InvariantViolation(
                f"p-rank {self.gamma} exceeds genus {self.genus} ({self.method})"
            )
