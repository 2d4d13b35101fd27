"""Executable interaction laws over finite containers."""
from .config import Bounds
from .container import (
    Container,
    ContainerElement,
    ContainerMorphism,
    c_compose,
    c_const,
    c_coproduct,
    c_exceptions,
    c_id,
    c_maybe,
    c_nelist,
    c_product,
    c_reader,
    c_writer,
    c_zero,
    find_iso,
    small_containers,
)
from .dual import Dual, dual, il_to_morphism, morphism_to_il
from .finset import FinFn, FinSet, SizeGuardError, fset, nat
from .interaction import InteractionLaw, il_count, il_enumerate, il_identity, il_tensor
from .report import Report

__all__ = [
    "Bounds",
    "Container",
    "ContainerElement",
    "ContainerMorphism",
    "Dual",
    "FinFn",
    "FinSet",
    "InteractionLaw",
    "Report",
    "SizeGuardError",
    "c_compose",
    "c_const",
    "c_coproduct",
    "c_exceptions",
    "c_id",
    "c_maybe",
    "c_nelist",
    "c_product",
    "c_reader",
    "c_writer",
    "c_zero",
    "dual",
    "find_iso",
    "fset",
    "il_count",
    "il_enumerate",
    "il_identity",
    "il_tensor",
    "il_to_morphism",
    "morphism_to_il",
    "nat",
    "small_containers",
]

__version__ = "0.1.0"
