"""Tagged bound values shared by the constant catalogs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

Kind = Literal["exact", "upper", "lower"]


class ValidityError(ValueError):
    """A bound was requested outside the range in which it is proved."""


@dataclass(frozen=True)
class BoundValue:
    """A real value tagged with what it says about an unknown constant.

    Attributes:
        value: the bound itself (``math.inf`` if it overflows a double; the
            exact figure is then in ``log_value``).
        kind: ``"exact"``, ``"upper"`` or ``"lower"``.
        method: identifier of the formula that produced it.
        valid_from: smallest parameter for which the bound is proved.
        valid_to: largest such parameter, ``None`` for unbounded.
        log_value: natural log of ``value``; always populated.
    """

    value: float
    kind: Kind
    method: str
    valid_from: int = 1
    valid_to: Optional[int] = None
    log_value: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind not in ("exact", "upper", "lower"):
            raise ValueError(f"bad kind {self.kind!r}")
        if not self.value > 0:
            raise ValueError("bound value must be positive")
        if self.valid_from < 1:
            raise ValueError("valid_from must be >= 1")
        if self.valid_to is not None and self.valid_to < self.valid_from:
            raise ValueError("valid_to must be >= valid_from")
        if self.log_value is None:
            object.__setattr__(self, "log_value", math.log(self.value))

    @classmethod
    def from_log(cls, log_value: float, kind: Kind, method: str, valid_from: int = 1,
                 valid_to: Optional[int] = None) -> "BoundValue":
        """Build from a log-space value, saturating ``value`` at infinity."""
        value = math.exp(log_value) if log_value < 709.0 else math.inf
        return cls(value, kind, method, valid_from, valid_to, log_value)

    def covers(self, n: int) -> bool:
        return n >= self.valid_from and (self.valid_to is None or n <= self.valid_to)

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "log_value": self.log_value,
            "kind": self.kind,
            "method": self.method,
            "valid_from": self.valid_from,
            "valid_to": self.valid_to,
        }


def require_range(n: int, valid_from: int, what: str) -> None:
    if n < valid_from:
        raise ValidityError(f"{what} is only proved for parameter >= {valid_from}, got {n}")
