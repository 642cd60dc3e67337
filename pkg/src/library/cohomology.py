"""Chevalley–Eilenberg cohomology with trivial coefficients."""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from typing import Optional, Sequence

import numpy as np
import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .exceptions import ParametricEvaluationError
from .exterior import basis_form, differential
from .lie_structure import LieAlgebra
from .scalars import Point

LOGGER = logging.getLogger(__name__)


class BettiVector:
    """Betti numbers b_0, ..., b_n of a Lie algebra.

    Attributes:
        b:
            tuple of integers, b[k] = dim H^k.
    """

    def __init__(self, b: Sequence[int]):
        self.b = tuple(int(x) for x in b)

    def __repr__(self) -> str:
        return f"BettiVector{self.b}"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BettiVector):
            return self.b == other.b
        if isinstance(other, (tuple, list)):
            return self.b == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.b)

    def __getitem__(self, k: int) -> int:
        return self.b[k]

    def __len__(self) -> int:
        return len(self.b)

    @property
    def reduced(self) -> tuple[int, ...]:
        """(b_1, ..., b_n), the form tables usually quote."""
        return self.b[1:]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * bk for k, bk in enumerate(self.b))

    def to_json(self) -> list[int]:
        return list(self.b)


def differential_matrix(alg: LieAlgebra, k: int) -> DomainMatrix:
    """Matrix of d: Λ^k -> Λ^(k+1) over QQ, in the increasing multi-index bases."""
    n = alg.dim
    source = list(itertools.combinations(range(1, n + 1), k))
    target = {idx: r for r, idx in enumerate(itertools.combinations(range(1, n + 1), k + 1))}
    rows: dict[int, dict[int, object]] = {}
    for col, idx in enumerate(source):
        for out_idx, c in differential(alg, basis_form(n, *idx)):
            rows.setdefault(target[out_idx], {})[col] = QQ.convert(c)
    return DomainMatrix(rows, (len(target), len(source)), QQ)


def _rank(alg: LieAlgebra, k: int) -> int:
    if k < 0 or k >= alg.dim:
        return 0
    matrix = differential_matrix(alg, k)
    if not matrix.shape[0] or not matrix.shape[1]:
        return 0
    return matrix.rank()


def betti(alg: LieAlgebra, point: Optional[Point] = None) -> BettiVector:
    """b_k = dim ker(d on Λ^k) - rank(d on Λ^(k-1)), exact over the rationals.

    Raises:
        ParametricEvaluationError: the algebra still has free parameters.
    """
    concrete = alg.at(point)
    symbols = concrete.free_symbols()
    if symbols:
        raise ParametricEvaluationError(symbols, "betti")
    if point and alg.free_symbols():
        LOGGER.warning(f"Betti numbers of {alg.name or 'algebra'} computed at {dict(point)}; ranks may jump elsewhere.")
    n = concrete.dim
    ranks = [_rank(concrete, k) for k in range(n + 1)]
    return BettiVector(
        sympy.binomial(n, k) - ranks[k] - (ranks[k - 1] if k > 0 else 0) for k in range(n + 1)
    )


def _random_point(symbols: Sequence[sympy.Symbol], rng: np.random.Generator) -> dict[sympy.Symbol, sympy.Rational]:
    point = {}
    for s in symbols:
        num = int(rng.integers(-9, 10))
        den = int(rng.integers(1, 8))
        point[s] = sympy.Rational(num or 1, den)
    return point


def generic_betti(alg: LieAlgebra, samples: int = 3, seed: int = 0) -> tuple[BettiVector, bool]:
    """Majority Betti vector over random rational points, and whether all samples agreed."""
    symbols = sorted(alg.free_symbols(), key=str)
    if not symbols:
        return betti(alg), True
    rng = np.random.default_rng(seed)
    results = [betti(alg, _random_point(symbols, rng)) for _ in range(samples)]
    counts = Counter(results)
    majority, _ = counts.most_common(1)[0]
    consistent = len(counts) == 1
    if not consistent:
        LOGGER.warning(f"Generic Betti samples disagree for {alg.name or 'algebra'}: {[r.b for r in results]}")
    return majority, consistent


def euler_check(bv: BettiVector) -> bool:
    """The alternating sum of Betti numbers of a CE complex vanishes in positive dimension."""
    if len(bv) <= 1:
        return tuple(bv.b) in ((), (1,))
    return bv.euler_characteristic() == 0
