"""Valuated circuits of rank-1 tropical linear series"""
from itertools import combinations
from logging import getLogger
from typing import Optional

from tropls.common.constants import AnswerKind
from tropls.common.custom_exceptions import InconsistencyException
from tropls.graphs.pl_function import compare_up_to_constant
from tropls.matroids.matroid import ValuatedCircuit, ValuatedMatroid, valuated_axioms_check
from tropls.series.dependence import DependenceEngine
from tropls.series.trop_module import TropicalSubmodule

_logger = getLogger(__name__)

VALUATION_CAVEAT = "built on generators; whether generators suffice for the strong axiom is open"


def rank1_valuated_circuits(
    module: TropicalSubmodule, engine: Optional[DependenceEngine] = None
) -> ValuatedMatroid:
    """
    Valuated matroid on the generators of a rank-1 series

    Elements are the generator positions "0", "1", ... Two generators
    differing by a constant form a circuit of size two; every other triple
    carries the coefficients of a dependence in which all three functions
    attain the minimum somewhere.
    """
    engine = engine or DependenceEngine()
    generators = module.generators
    elements = tuple(str(index) for index in range(len(generators)))
    circuits = []
    pairs = set()
    for first, second in combinations(range(len(generators)), 2):
        difference = compare_up_to_constant(generators[second], generators[first])
        if difference is not None:
            pairs.add(frozenset((first, second)))
            circuits.append(ValuatedCircuit.of({elements[first]: difference, elements[second]: 0}))
    for triple in combinations(range(len(generators)), 3):
        if any(frozenset(pair) in pairs for pair in combinations(triple, 2)):
            continue
        answer = engine.decide([generators[index] for index in triple])
        if answer.kind != AnswerKind.DEPENDENT:
            raise InconsistencyException(f"generators {triple} are not dependent")
        active = set().union(*(achievers for _, achievers in answer.verdict.tie_cells))
        if active != {0, 1, 2}:
            raise InconsistencyException(f"dependence of {triple} does not involve all three functions")
        circuits.append(ValuatedCircuit.of({
            elements[index]: coefficient for index, coefficient in zip(triple, answer.coefficients)
        }))
    matroid = ValuatedMatroid(elements, tuple(circuits))
    verdict = valuated_axioms_check(matroid)
    if not verdict.passed:
        raise InconsistencyException(f"valuated circuits fail the axioms: {verdict.reason}")
    if matroid.rank() > 2:
        raise InconsistencyException(f"valuated matroid has rank {matroid.rank()}, at most 2 expected")
    _logger.info("Valuated matroid with %s circuits on %s generators", len(circuits), len(generators))
    return matroid
