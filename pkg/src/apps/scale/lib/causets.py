"""
Causal sets built from scale-factor series and checked against the
transitivity, antisymmetry and local-finiteness axioms.
"""

import logging

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Optional, Sequence, Tuple

import numpy as np

from apps.scale.lib.dynamics import ScaleSeries

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CausalSet:
    """
    Finite element set with a strict precedence relation.

    chain marks sets built from a time series: consecutive elements are
    then expected to be related, and a missing pair is an ordering gap.
    """

    elements: Tuple[Hashable, ...]
    relation: FrozenSet[Tuple[Hashable, Hashable]]
    chain: bool = False

    def adjacency(self) -> np.ndarray:
        index = {element: position for position, element in enumerate(self.elements)}
        matrix = np.zeros((len(self.elements), len(self.elements)), dtype=bool)
        for x, y in self.relation:
            matrix[index[x], index[y]] = True
        return matrix


@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    witness: Optional[Tuple[Hashable, ...]] = None


@dataclass(frozen=True)
class CausalSetReport:
    axioms: Dict[str, AxiomResult] = field(default_factory=dict)
    interval_count: int = 0
    max_interval: int = 0

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.axioms.values())


def series_to_causet(series: ScaleSeries) -> CausalSet:
    """Time indices ordered by i < j together with a(t_j) >= a(t_i)."""
    a = series.a_values
    n = len(series)
    later = np.triu(np.ones((n, n), dtype=bool), k=1)
    grows = a[None, :] >= a[:, None]
    xs, ys = np.nonzero(later & grows)
    relation = frozenset((int(x), int(y)) for x, y in zip(xs, ys))
    return CausalSet(elements=tuple(range(n)), relation=relation, chain=True)


def from_pairs(elements: Sequence[Hashable], pairs: Sequence[Tuple[Hashable, Hashable]]) -> CausalSet:
    return CausalSet(elements=tuple(elements), relation=frozenset(pairs))


def verify_causal_set(c: CausalSet) -> CausalSetReport:
    """
    Check the causal-set axioms and report a witness for each failure.

    Interval finiteness always holds for a finite set; interval sizes are
    still counted so the report shows them.
    """
    elements = c.elements
    matrix = c.adjacency()
    n = len(elements)
    axioms: Dict[str, AxiomResult] = {}

    as_int = matrix.astype(np.int64)
    two_step = (as_int @ as_int) > 0
    missing = two_step & ~matrix
    if missing.any():
        x, z = map(int, np.argwhere(missing)[0])
        y = int(np.argmax(matrix[x, :] & matrix[:, z]))
        axioms['transitivity'] = AxiomResult(False, (elements[x], elements[y], elements[z]))
    else:
        axioms['transitivity'] = AxiomResult(True)

    mutual = matrix & matrix.T & ~np.eye(n, dtype=bool)
    if mutual.any():
        x, y = map(int, np.argwhere(mutual)[0])
        axioms['antisymmetry'] = AxiomResult(False, (elements[x], elements[y]))
    else:
        axioms['antisymmetry'] = AxiomResult(True)

    # |{y : x < y < z}| for every related pair
    intervals = (as_int @ as_int)[matrix] if n else np.zeros(0, dtype=np.int64)
    axioms['interval_finiteness'] = AxiomResult(True)

    if c.chain:
        gaps = [i for i in range(n - 1) if not (matrix[i, i + 1] or matrix[i + 1, i])]
        if gaps:
            axioms['ordering'] = AxiomResult(False, (elements[gaps[0]], elements[gaps[0] + 1]))
        else:
            axioms['ordering'] = AxiomResult(True)

    report = CausalSetReport(
        axioms=axioms,
        interval_count=int(intervals.size),
        max_interval=int(intervals.max()) if intervals.size else 0,
    )
    if not report.passed:
        failed = [name for name, result in axioms.items() if not result.passed]
        logger.info(f"Causal set with {n} elements fails {failed}")
    return report
