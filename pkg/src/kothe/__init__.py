"""Decide when a group ring R[G] over a finite ring is a Köthe ring.

Finite groups and rings are materialized as Cayley tables; the structural
questions (principal ideals, Jacobson radical, idempotents, local
decomposition) are answered by exhaustive oracles, and a rule engine turns
them into Yes / No / Unknown verdicts with a trace of the theorems used.
"""
from kothe.classifier import (
    Answer,
    Assumptions,
    Verdict,
    classify_kothe,
    classify_pure_semisimple,
    necessary_condition_scan,
)
from kothe.descriptors import (
    CapExceeded,
    Cyclic,
    Dihedral,
    DirectProduct,
    FromTable,
    GaloisField,
    GroupRingOf,
    IntegersMarker,
    Product,
    Quaternion8,
    Quotient,
    Symmetric,
    ZMod,
    group_from_json,
    ring_from_json,
)
from kothe.group_ring import build_group_ring, is_r_admissible
from kothe.groups import GroupTable, materialize_group
from kothe.materialize import materialize_ring
from kothe.rings import RingTable, is_pir, jacobson_radical

__version__ = "0.1.0"

__all__ = [
    "Answer", "Assumptions", "CapExceeded", "Cyclic", "Dihedral", "DirectProduct", "FromTable",
    "GaloisField", "GroupRingOf", "GroupTable", "IntegersMarker", "Product", "Quaternion8",
    "Quotient", "RingTable", "Symmetric", "Verdict", "ZMod", "build_group_ring", "classify_kothe",
    "classify_pure_semisimple", "group_from_json", "is_pir", "is_r_admissible", "jacobson_radical",
    "materialize_group", "materialize_ring", "necessary_condition_scan", "ring_from_json",
]
