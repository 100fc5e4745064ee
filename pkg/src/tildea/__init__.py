"""Workbench for quiver mutation on annulus-type quivers: class recognition,
parameter extraction, normal forms, gentle-algebra Cartan matrices and the
thread-pairing derived invariant."""

from .ag import (
    AGInvariant,
    DecisionRecord,
    SignAssignment,
    Thread,
    assign_signs,
    derived_equivalent,
    full_relation_cycles,
    phi,
    threads,
)
from .census import ClassCensus, enumerate_class, verify_theorems
from .errors import (
    AssertionFailure,
    CapExceeded,
    ConflictingConstraints,
    InfiniteDimensional,
    InvalidParameters,
    InvariantViolation,
    NonTermination,
    NotInClass,
    PairingFailure,
    ParseError,
    SizeLimit,
    UnknownVertex,
    WorkbenchError,
)
from .gentle import (
    CartanMatrix,
    GentleAlgebra,
    TwoTermComplexSpec,
    bb_cartan,
    cartan,
    cluster_tilted,
    validate_gentle,
)
from .quiver import (
    Arrow,
    ExchangeMatrix,
    Quiver,
    canonical_form,
    is_isomorphic,
    mutate,
    read_quiver,
    renormalize,
    write_quiver,
)
from .report import AnalysisReport, analyze
from .structure import (
    MutationStep,
    MutationTrace,
    Parameters,
    TildeADecomposition,
    build_cycle,
    build_normal_form,
    compute_parameters,
    decompose,
    mutation_equivalent,
    recognize_type_a,
    reduce_to_normal_form,
    to_cycle_form,
)

__all__ = [name for name in dir() if not name.startswith("_")]
