"""Conformance checking for UML generalization hierarchies and object snapshots."""

from .metamodel import (
    Classifier,
    Generalization,
    Model,
    OverlappingGroup,
    UnknownIdentifierError,
    all_parents,
    specializations_of,
)
from .oracle import CrossCheckReport, cross_check, enumerate_snapshots, valid_by_definition
from .semantics import (
    IllFormedModelError,
    Instance,
    Snapshot,
    check_snapshot,
    direct_of,
    indirect_of,
    instances_of,
    ocl_is_kind_of,
    ocl_is_type_of,
)
from .textformats import ParseError, parse_model, parse_snapshot, render_model, render_snapshot
from .wellformedness import Violation, check_model

__version__ = "0.1.0"
