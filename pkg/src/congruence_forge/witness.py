"""Verification records for single congruence cells."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional


class Statement(str, enum.Enum):
    THM_MAIN = "thm_main"
    COR_THREE = "cor_three"
    EQ1_BEUKERS = "eq1_beukers"
    EQ2_SB = "eq2_sb"
    LEMMA_REDUCE = "lemma_reduce"

    @classmethod
    def parse(cls, name: str) -> "Statement":
        name = name.strip().lower()
        aliases = {"thm": cls.THM_MAIN, "cor": cls.COR_THREE, "eq1": cls.EQ1_BEUKERS,
                   "eq2": cls.EQ2_SB, "lemma": cls.LEMMA_REDUCE}
        if name in aliases:
            return aliases[name]
        return cls(name)


@dataclass(frozen=True)
class CongruenceWitness:
    statement: Statement
    p: int
    m: Optional[int]
    r: int
    A: Optional[int]
    B: Optional[int]
    lhs: int
    rhs: int
    required: int
    attained: object  # int, or math.inf when lhs == rhs exactly
    passed: bool
    boundary_convention_used: bool = False
    mode: str = "exact"
    k: Optional[int] = None
    chi: Optional[str] = None

    def __post_init__(self):
        if self.passed != (self.attained >= self.required):
            raise ValueError("pass flag disagrees with the valuations")

    @property
    def margin(self):
        return self.attained - self.required

    @property
    def sharp(self) -> bool:
        return self.attained == self.required

    def sort_key(self):
        def k(x):
            return -1 if x is None else x
        return (self.statement.value, self.p, k(self.m), self.r, k(self.A), k(self.B),
                k(self.k), self.chi or "")

    def to_record(self) -> dict:
        return {
            "statement": self.statement.value,
            "p": self.p,
            "m": self.m,
            "r": self.r,
            "A": self.A,
            "B": self.B,
            "required": self.required,
            "attained": "inf" if self.attained == math.inf else self.attained,
            "pass": self.passed,
            "boundary_convention_used": self.boundary_convention_used,
            "mode": self.mode,
            "k": self.k,
            "chi": self.chi,
        }


RECORD_FIELDS = ("statement", "p", "m", "r", "A", "B", "required", "attained", "pass",
                 "boundary_convention_used", "mode", "k", "chi")
