"""Systems of difference constraints a_i - a_j <= w and a_i - a_j < w"""
from fractions import Fraction
from typing import Optional, Sequence

from tropls.common.custom_exceptions import InconsistencyException

Constraint = tuple[int, int, Fraction]


def _tightest(size: int, constraints: Sequence[Constraint]) -> dict[tuple[int, int], Fraction]:
    tightest: dict[tuple[int, int], Fraction] = {}
    for first, second, bound in constraints:
        if not (0 <= first < size and 0 <= second < size):
            raise InconsistencyException(f"constraint on unknown variable {first} or {second}")
        if first == second:
            tightest[(first, first)] = min(bound, tightest.get((first, first), bound))
            continue
        key = (first, second)
        tightest[key] = min(bound, tightest.get(key, bound))
    return tightest


def _potentials(size: int, tightest: dict[tuple[int, int], Fraction]) -> Optional[list[Fraction]]:
    values = [Fraction(0)] * size
    for _ in range(size + 1):
        changed = False
        for (first, second), bound in tightest.items():
            if first == second:
                continue
            if values[second] + bound < values[first]:
                values[first] = values[second] + bound
                changed = True
        if not changed:
            least = min(values) if values else Fraction(0)
            return [value - least for value in values]
    return None


def solve_weak(size: int, constraints: Sequence[Constraint]) -> Optional[list[Fraction]]:
    """
    A solution of a_i - a_j <= w for all (i, j, w), normalized to minimum 0

    returns:
      None when a negative cycle makes the system infeasible
    """
    tightest = _tightest(size, constraints)
    if any(bound < 0 for (first, second), bound in tightest.items() if first == second):
        return None
    return _potentials(size, tightest)


def minimum_cycle(size: int, tightest: dict[tuple[int, int], Fraction]) -> Optional[Fraction]:
    """
    Least total weight of a directed cycle, None without cycles
    """
    distance: list[list[Optional[Fraction]]] = [[None] * size for _ in range(size)]
    for (first, second), bound in tightest.items():
        distance[second][first] = bound
    for middle in range(size):
        for start in range(size):
            if distance[start][middle] is None:
                continue
            for end in range(size):
                if distance[middle][end] is None:
                    continue
                total = distance[start][middle] + distance[middle][end]
                if distance[start][end] is None or total < distance[start][end]:
                    distance[start][end] = total
    cycles = [distance[node][node] for node in range(size) if distance[node][node] is not None]
    return min(cycles) if cycles else None


def solve_strict(size: int, constraints: Sequence[Constraint]) -> Optional[list[Fraction]]:
    """
    A solution of a_i - a_j < w for all (i, j, w), normalized to minimum 0

    The system is feasible iff every directed cycle has positive weight.
    """
    tightest = _tightest(size, constraints)
    shortest = minimum_cycle(size, tightest)
    if shortest is not None and shortest <= 0:
        return None
    margin = Fraction(1) if shortest is None else shortest / (size + 1)
    relaxed = {key: bound - margin for key, bound in tightest.items()}
    return _potentials(size, relaxed)
