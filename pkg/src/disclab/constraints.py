from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import VarSetMismatch
from .poly import Polynomial, VarSet


@dataclass(frozen=True)
class ConstraintSet:
    """K = {g = 0, p >= 0}.

    ``compact`` and ``closed_at_infinity`` are assertions made by the caller;
    nothing here checks them.
    """

    equalities: tuple = ()
    inequalities: tuple = ()
    compact: bool = False
    closed_at_infinity: bool = False

    def __post_init__(self):
        object.__setattr__(self, "equalities", tuple(self.equalities))
        object.__setattr__(self, "inequalities", tuple(self.inequalities))

    @property
    def is_empty(self) -> bool:
        return not self.equalities and not self.inequalities

    def all(self) -> list[Polynomial]:
        return list(self.equalities) + list(self.inequalities)

    def check_varset(self, varset: VarSet):
        for c in self.all():
            if c.varset != varset:
                raise VarSetMismatch(f"constraint varset {c.varset} != {varset}")

    def embed(self, varset: VarSet) -> "ConstraintSet":
        return ConstraintSet([g.embed(varset) for g in self.equalities],
                             [p.embed(varset) for p in self.inequalities],
                             self.compact, self.closed_at_infinity)

    def homogenize(self, newvar: str, wrt: Sequence[str] | None = None) -> "ConstraintSet":
        return ConstraintSet([g.homogenize(newvar, wrt) for g in self.equalities],
                             [p.homogenize(newvar, wrt) for p in self.inequalities],
                             self.compact, self.closed_at_infinity)
