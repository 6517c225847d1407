"""Exact computation and empirical certification of supercongruences for
Apéry-like binomial sums."""

from .errors import DomainError, ForgeError, ParameterError, SeriesRangeError, UnsupportedStatementError
from .padic import (INF, Congruence, binomial_exact, binomial_mod_prime_power,
                    congruent_mod_pk, factorial_valuation, is_prime, vp)
from .sequences import (APERY_TRIPLE, C, C_mod, SequenceParams, ZagierTriple, apery_B,
                        apery_B_recurrence_check, zagier_integrality_scan, zagier_u)
from .witness import CongruenceWitness, Statement

__version__ = "0.1.0"
