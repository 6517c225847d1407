"""Witness-producing checks of the supercongruences and grid scans over them.

Every check is expressed as a linear form in sequence values,
``sum(coef * seq(index))`` on each side.  A scan first gathers the sequence
values all cells need (the expensive part, optionally in a process pool and
backed by a persistent cache), then evaluates the cells in a fixed order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from .errors import DomainError, ParameterError, UnsupportedStatementError
from .padic import binomial_exact, binomial_mod_prime_power, check_prime, vp
from .qseries import DEFAULT_ETA_ORDER, EigenformSpec, eta6_4z_coefficient
from .sequences import C, C_mod, SequenceParams, apery_B, apery_B_mod, as_params
from .witness import CongruenceWitness, Statement

__all__ = [
    "Cell", "GridRanges", "ScanResult", "TermStore", "TwoSumSplit", "EigenformSpec",
    "required_valuation", "scan_grid", "summarize", "two_sum_decomposition",
    "verify_corollary", "verify_eq1_beukers", "verify_eq2_sb", "verify_lemma_reduce",
    "verify_theorem_main",
]

MODES = ("exact", "modular")


@dataclass(frozen=True)
class Cell:
    statement: Statement
    p: int
    m: int
    r: int
    A: Optional[int] = None
    B: Optional[int] = None
    eigenform: Optional[EigenformSpec] = None
    allow_boundary: bool = False

    def sort_key(self):
        ef = self.eigenform
        return (self.p, self.m, self.r, -1 if self.A is None else self.A,
                -1 if self.B is None else self.B,
                -1 if ef is None else ef.weight, "" if ef is None else str(ef.character))


def required_valuation(cell: Cell) -> int:
    s, r = cell.statement, cell.r
    if s is Statement.THM_MAIN:
        return 3 * r if cell.A >= 3 else 2 * r
    if s in (Statement.EQ1_BEUKERS, Statement.LEMMA_REDUCE):
        return 3 * r
    if s is Statement.EQ2_SB:
        return r
    k = cell.eigenform.weight
    if cell.A >= 3:
        return 3 * r + k - 4 if k < 4 else 3 * r
    return 2 * r + k - 3 if k < 3 else 2 * r


def _validate(cell: Cell) -> None:
    check_prime(cell.p)
    s, p, m, r = cell.statement, cell.p, cell.m, cell.r
    if not isinstance(r, int) or r < 1:
        raise ParameterError(f"r must be a positive integer, got {r!r}")
    if s is Statement.LEMMA_REDUCE:
        if m < 0:
            raise ParameterError("m must be nonnegative")
    elif m < 1:
        raise ParameterError("m must be positive")
    if s is Statement.EQ2_SB:
        if p == 2:
            raise ParameterError("this congruence needs an odd prime")
        if m % 2 == 0:
            raise ParameterError(f"m must be odd, got {m}")
        return
    if p <= 3:
        raise ParameterError(f"this statement needs p > 3, got {p}")
    if s in (Statement.THM_MAIN, Statement.COR_THREE):
        as_params((cell.A, cell.B))
        if cell.A < 2:
            raise UnsupportedStatementError("no congruence is claimed for A = 1")
    if s is Statement.COR_THREE:
        ef = cell.eigenform
        if ef is None:
            raise ParameterError("the corollary needs an eigenform")
        if p % ef.character.modulus == 0 and ef.character.modulus > 1:
            raise DomainError(f"p = {p} divides the character modulus {ef.character.modulus}")
        if r < 2 and not cell.allow_boundary:
            raise ParameterError("r = 1 involves C(m/p); pass allow_boundary to use the zero convention")


# A term is (coefficient, family, index); index may be a Fraction or negative.
def _linear_form(cell: Cell, a_coeff: Callable[[int], int]):
    p, m, r = cell.p, cell.m, cell.r

    def pw(e):  # m p^e as an exact rational, e possibly negative
        return Fraction(m) * Fraction(p) ** e

    s = cell.statement
    if s is Statement.THM_MAIN:
        return [(1, "C", pw(r))], [(1, "C", pw(r - 1))]
    if s is Statement.EQ1_BEUKERS:
        return [(1, "B", pw(r) - 1)], [(1, "B", pw(r - 1) - 1)]
    if s is Statement.LEMMA_REDUCE:
        return [(1, "cbin", pw(r))], [(1, "cbin", pw(r - 1))]
    if s is Statement.EQ2_SB:
        sign = -1 if p % 4 == 3 else 1
        lhs = [(1, "B", (pw(r) - 1) / 2),
               (-a_coeff(p), "B", (pw(r - 1) - 1) / 2),
               (sign * p * p, "B", (pw(r - 2) - 1) / 2)]
        return lhs, []
    ef = cell.eigenform
    chi_p = ef.character(p)
    twist = chi_p * p ** (ef.weight - 1)
    gamma_p = 1 + twist
    lhs = [(1, "C", pw(r)), (-gamma_p, "C", pw(r - 1)), (twist, "C", pw(r - 2))]
    return lhs, []


def _term_key(cell: Cell, family: str, n: int, mode: str, K: Optional[int]):
    if family == "C":
        base = ("C", cell.A, cell.B, n)
    else:
        base = (family, n)
    if mode == "modular":
        return base + (cell.p, K)
    return base


def compute_term(key: tuple) -> int:
    """Value of one sequence term; keys with a trailing (p, K) are residues."""
    family = key[0]
    if family == "C":
        if len(key) == 6:
            _, A, B, n, p, K = key
            return C_mod(n, SequenceParams(A, B), p, K)
        _, A, B, n = key
        return C(n, SequenceParams(A, B))
    if family == "B":
        return apery_B(key[1]) if len(key) == 2 else apery_B_mod(*key[1:])
    if family == "cbin":
        n = key[1]
        if len(key) == 2:
            return binomial_exact(2 * n, n)
        return binomial_mod_prime_power(2 * n, n, key[2], key[3])
    raise ValueError(f"unknown term family {family!r}")


def _compute_batch(keys):
    return [compute_term(k) for k in keys]


class TermStore:
    """Sequence values shared across cells.

    ``computed`` counts values actually calculated, ``hits`` lookups that were
    already present (preloaded from a cache or computed earlier).
    """

    def __init__(self, values: Optional[dict] = None):
        self.values: dict = dict(values or {})
        self.computed = 0
        self.hits = 0

    def ensure(self, keys: Iterable[tuple], jobs: int = 1) -> None:
        wanted = set(keys)
        missing = sorted((k for k in wanted if k not in self.values), key=repr)
        self.hits += len(wanted) - len(missing)
        if not missing:
            return
        if jobs > 1 and len(missing) > 1:
            # larger indices are costlier; deal them round-robin for balance
            ordered = sorted(missing, key=lambda k: -k[3] if k[0] == "C" else -k[1])
            batches = [ordered[i::jobs] for i in range(jobs)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for batch, vals in zip(batches, pool.map(_compute_batch, batches)):
                    self.values.update(zip(batch, vals))
        else:
            for k in missing:
                self.values[k] = compute_term(k)
        self.computed += len(missing)

    def __getitem__(self, key):
        return self.values[key]


def _resolve(cell, side, mode, K):
    """Turn a side of a linear form into [(coef, key)] plus the boundary flag."""
    out, fired = [], False
    for coef, family, index in side:
        index = Fraction(index)
        if index.denominator != 1 or index < 0:
            fired = True
            continue
        out.append((coef, _term_key(cell, family, int(index), mode, K)))
    return out, fired


def _default_a_coeff(p: int) -> int:
    return eta6_4z_coefficient(p, max(DEFAULT_ETA_ORDER, p + 1))


def _plan(cell, mode, K, a_coeff):
    _validate(cell)
    lhs, rhs = _linear_form(cell, a_coeff or _default_a_coeff)
    lhs, f1 = _resolve(cell, lhs, mode, K)
    rhs, f2 = _resolve(cell, rhs, mode, K)
    return lhs, rhs, f1 or f2


def _evaluate(cell, lhs, rhs, fired, store, mode, K) -> CongruenceWitness:
    required = required_valuation(cell)
    if mode == "modular":
        mod = cell.p**K
        lv = sum(c * store[k] for c, k in lhs) % mod
        rv = sum(c * store[k] for c, k in rhs) % mod
        diff = (lv - rv) % mod
        attained = K if diff == 0 else min(vp(diff, cell.p), K)
    else:
        lv = sum(c * store[k] for c, k in lhs)
        rv = sum(c * store[k] for c, k in rhs)
        attained = vp(lv - rv, cell.p)
    ef = cell.eigenform
    return CongruenceWitness(
        cell.statement, cell.p, cell.m, cell.r, cell.A, cell.B, lv, rv, required, attained,
        attained >= required, fired, mode,
        None if ef is None else ef.weight, None if ef is None else str(ef.character))


def _check_mode(mode, K):
    if mode not in MODES:
        raise ParameterError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "modular" and (K is None or K < 1):
        raise ParameterError("modular mode needs a positive residue width K")


def verify_cell(cell: Cell, mode: str = "exact", K: Optional[int] = None,
                a_coeff: Optional[Callable[[int], int]] = None,
                store: Optional[TermStore] = None) -> CongruenceWitness:
    _check_mode(mode, K)
    lhs, rhs, fired = _plan(cell, mode, K, a_coeff)
    store = store if store is not None else TermStore()
    store.ensure([k for _, k in lhs + rhs])
    return _evaluate(cell, lhs, rhs, fired, store, mode, K)


def verify_theorem_main(p: int, m: int, r: int, params, mode: str = "exact",
                        K: Optional[int] = None) -> CongruenceWitness:
    """C(mp^r, A, B) against C(mp^(r-1), A, B): mod p^(3r) for A >= 3, p^(2r) for A = 2."""
    params = as_params(params)
    return verify_cell(Cell(Statement.THM_MAIN, p, m, r, params.A, params.B), mode, K)


def verify_eq1_beukers(p: int, m: int, r: int, mode: str = "exact",
                       K: Optional[int] = None) -> CongruenceWitness:
    """B(mp^r - 1) against B(mp^(r-1) - 1) modulo p^(3r)."""
    return verify_cell(Cell(Statement.EQ1_BEUKERS, p, m, r), mode, K)


def verify_eq2_sb(p: int, m: int, r: int, a_coeffs: Optional[Callable[[int], int]] = None,
                  mode: str = "exact", K: Optional[int] = None) -> CongruenceWitness:
    """Three-term congruence for B((mp^r - 1)/2) modulo p^r.

    ``a_coeffs`` maps n to the n-th coefficient of eta^6(4z); by default the
    shared expansion table is used.  Indices that are negative or not
    integers contribute 0 and set ``boundary_convention_used``.
    """
    return verify_cell(Cell(Statement.EQ2_SB, p, m, r), mode, K, a_coeff=a_coeffs)


def verify_lemma_reduce(p: int, m: int, r: int, mode: str = "exact",
                        K: Optional[int] = None) -> CongruenceWitness:
    return verify_cell(Cell(Statement.LEMMA_REDUCE, p, m, r), mode, K)


def verify_corollary(p: int, m: int, r: int, params, eigenform: EigenformSpec,
                     mode: str = "exact", K: Optional[int] = None,
                     allow_boundary: bool = False) -> CongruenceWitness:
    """C(mp^r) - gamma(p) C(mp^(r-1)) + chi(p) p^(k-1) C(mp^(r-2)) against 0.

    The modulus follows the four-case ladder in k and A.  r = 1 reaches
    C(m/p) and is only evaluated with ``allow_boundary``.
    """
    params = as_params(params)
    cell = Cell(Statement.COR_THREE, p, m, r, params.A, params.B, eigenform, allow_boundary)
    return verify_cell(cell, mode, K)


@dataclass(frozen=True)
class TwoSumSplit:
    coprime_part: int
    divisible_part: int
    coprime_valuation: object
    divisible_valuation: object
    bound: int

    @property
    def bound_holds(self) -> bool:
        return self.coprime_valuation >= self.bound


def two_sum_decomposition(p: int, m: int, r: int, params) -> TwoSumSplit:
    """Split C(mp^r, A, B) by whether p divides the summation index.

    Each term with p not dividing k carries binom(mp^r, k)^A, hence p^(Ar).
    """
    params = as_params(params)
    _validate(Cell(Statement.THM_MAIN, p, m, r, params.A, params.B))
    n = m * p**r
    coprime = divisible = 0
    for k in range(n + 1):
        term = binomial_exact(n, k) ** params.A * binomial_exact(2 * k, k) ** params.B
        if k % p:
            coprime += term
        else:
            divisible += term
    return TwoSumSplit(coprime, divisible, vp(coprime, p), vp(divisible, p), params.A * r)


@dataclass(frozen=True)
class GridRanges:
    primes: Sequence[int]
    ms: Sequence[int]
    rs: Sequence[int]
    As: Sequence[int] = ()
    Bs: Sequence[int] = ()
    eigenforms: Sequence[EigenformSpec] = ()
    allow_boundary: bool = False


def grid_cells(statement: Statement, ranges: GridRanges) -> list[Cell]:
    statement = Statement(statement)
    base = product(sorted(set(ranges.primes)), sorted(set(ranges.ms)), sorted(set(ranges.rs)))
    if statement in (Statement.EQ1_BEUKERS, Statement.EQ2_SB, Statement.LEMMA_REDUCE):
        cells = [Cell(statement, p, m, r) for p, m, r in base]
    else:
        ab = list(product(sorted(set(ranges.As)), sorted(set(ranges.Bs))))
        if statement is Statement.THM_MAIN:
            cells = [Cell(statement, p, m, r, A, B) for (p, m, r) in base for A, B in ab]
        else:
            cells = [Cell(statement, p, m, r, A, B, ef, ranges.allow_boundary)
                     for (p, m, r) in base for A, B in ab for ef in ranges.eigenforms]
    return sorted(cells, key=Cell.sort_key)


@dataclass
class ScanResult:
    statement: Statement
    mode: str
    witnesses: list
    summary: dict = field(default_factory=dict)


def summarize(witnesses: Sequence[CongruenceWitness]) -> dict:
    margins = [w.margin for w in witnesses]
    min_margin = min(margins) if margins else None
    sharp = [w for w in witnesses if w.sharp]
    return {
        "count": len(witnesses),
        "passed": sum(w.passed for w in witnesses),
        "failed": sum(not w.passed for w in witnesses),
        "boundary_convention_cells": sum(w.boundary_convention_used for w in witnesses),
        "min_margin": "inf" if min_margin == math.inf else min_margin,
        "sharp_cells": [{key: w.to_record()[key] for key in ("p", "m", "r", "A", "B", "k", "chi")}
                        for w in sharp],
    }


def scan_grid(statement, ranges: GridRanges, mode: str = "exact", K: Optional[int] = None,
              jobs: int = 1, store: Optional[TermStore] = None,
              a_coeff: Optional[Callable[[int], int]] = None) -> ScanResult:
    """One witness per grid cell, in lexicographic (p, m, r, A, B) order.

    The result does not depend on ``jobs``: workers only compute sequence
    values, and cells are evaluated afterwards in sorted order.
    """
    statement = Statement(statement)
    _check_mode(mode, K)
    cells = grid_cells(statement, ranges)
    plans = [_plan(cell, mode, K, a_coeff) for cell in cells]
    store = store if store is not None else TermStore()
    store.ensure([k for lhs, rhs, _ in plans for _, k in lhs + rhs], jobs=jobs)
    witnesses = [_evaluate(cell, lhs, rhs, fired, store, mode, K)
                 for cell, (lhs, rhs, fired) in zip(cells, plans)]
    return ScanResult(statement, mode, witnesses, summarize(witnesses))


def max_required(statement, ranges: GridRanges) -> int:
    cells = grid_cells(statement, ranges)
    return max((required_valuation(c) for c in cells), default=0)
