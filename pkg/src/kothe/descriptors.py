"""Symbolic descriptors for groups and coefficient rings, and their JSON form.

Descriptors are small frozen dataclasses; materializing them into explicit
tables lives in :mod:`kothe.groups` and :mod:`kothe.materialize`.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Any, Union

SCHEMA_VERSION = 1

DEFAULT_CAP = int(os.environ.get("KOTHE_CAP", "4096"))
DEFAULT_LATTICE_CAP = int(os.environ.get("KOTHE_LATTICE_CAP", "100000"))
DEFAULT_GROUP_CAP = int(os.environ.get("KOTHE_GROUP_CAP", "64"))


class DescriptorError(ValueError):
    """Malformed or unsupported descriptor."""


class CapExceeded(RuntimeError):
    """A materialization or enumeration would exceed its configured cap."""

    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(f"{what}: {needed} exceeds cap {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap


# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class Dihedral:
    order: int


@dataclass(frozen=True)
class Quaternion8:
    pass


@dataclass(frozen=True)
class DirectProduct:
    factors: tuple


@dataclass(frozen=True)
class FromTable:
    table: tuple


GroupDescriptor = Union[Cyclic, Symmetric, Dihedral, Quaternion8, DirectProduct, FromTable]


# ----------------------------------------------------------------- rings


@dataclass(frozen=True)
class ZMod:
    n: int


@dataclass(frozen=True)
class GaloisField:
    p: int
    k: int = 1


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class GroupRingOf:
    ring: Any
    group: Any


@dataclass(frozen=True)
class Quotient:
    ring: Any
    generators: tuple


@dataclass(frozen=True)
class IntegersMarker:
    """The ring of integers; never materialized, only refused as non-artinian."""


RingDescriptor = Union[ZMod, GaloisField, Product, GroupRingOf, Quotient, IntegersMarker]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _int(obj: dict, key: str) -> int:
    if key not in obj:
        raise DescriptorError(f"missing field {key!r} in {obj!r}")
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise DescriptorError(f"field {key!r} must be an integer, got {val!r}")
    return val


def _list(obj: dict, key: str) -> list:
    val = obj.get(key)
    if not isinstance(val, list):
        raise DescriptorError(f"field {key!r} must be a list in {obj!r}")
    return val


def group_from_json(obj: Any) -> GroupDescriptor:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DescriptorError(f"group descriptor must be an object with 'kind': {obj!r}")
    kind = obj["kind"]
    if kind == "cyclic":
        d: GroupDescriptor = Cyclic(_int(obj, "n"))
    elif kind == "symmetric":
        d = Symmetric(_int(obj, "n"))
    elif kind == "dihedral":
        d = Dihedral(_int(obj, "order"))
    elif kind == "quaternion8":
        d = Quaternion8()
    elif kind == "direct_product":
        d = DirectProduct(tuple(group_from_json(f) for f in _list(obj, "factors")))
    elif kind == "from_table":
        rows = _list(obj, "table")
        if not all(isinstance(r, list) for r in rows):
            raise DescriptorError("from_table 'table' must be a list of rows")
        d = FromTable(tuple(tuple(r) for r in rows))
    else:
        raise DescriptorError(f"unknown group kind {kind!r}")
    validate_group_descriptor(d)
    return d


def group_to_json(d: GroupDescriptor) -> dict:
    if isinstance(d, Cyclic):
        return {"kind": "cyclic", "n": d.n}
    if isinstance(d, Symmetric):
        return {"kind": "symmetric", "n": d.n}
    if isinstance(d, Dihedral):
        return {"kind": "dihedral", "order": d.order}
    if isinstance(d, Quaternion8):
        return {"kind": "quaternion8"}
    if isinstance(d, DirectProduct):
        return {"kind": "direct_product", "factors": [group_to_json(f) for f in d.factors]}
    if isinstance(d, FromTable):
        return {"kind": "from_table", "table": [list(r) for r in d.table]}
    raise DescriptorError(f"not a group descriptor: {d!r}")


def validate_group_descriptor(d: GroupDescriptor) -> None:
    if isinstance(d, (Cyclic, Symmetric)):
        if d.n < 1:
            raise DescriptorError(f"{type(d).__name__.lower()}(n) requires n >= 1, got {d.n}")
    elif isinstance(d, Dihedral):
        if d.order < 2 or d.order % 2:
            raise DescriptorError(f"dihedral(order) requires an even order >= 2, got {d.order}")
    elif isinstance(d, DirectProduct):
        if not d.factors:
            raise DescriptorError("direct_product needs at least one factor")
        for f in d.factors:
            validate_group_descriptor(f)
    elif isinstance(d, FromTable):
        if not d.table:
            raise DescriptorError("from_table needs a non-empty table")
    elif not isinstance(d, Quaternion8):
        raise DescriptorError(f"not a group descriptor: {d!r}")


def ring_from_json(obj: Any) -> RingDescriptor:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DescriptorError(f"ring descriptor must be an object with 'kind': {obj!r}")
    kind = obj["kind"]
    if kind == "zmod":
        d: RingDescriptor = ZMod(_int(obj, "n"))
    elif kind == "galois_field":
        d = GaloisField(_int(obj, "p"), _int(obj, "k") if "k" in obj else 1)
    elif kind == "product":
        d = Product(tuple(ring_from_json(f) for f in _list(obj, "factors")))
    elif kind == "group_ring":
        if "ring" not in obj or "group" not in obj:
            raise DescriptorError("group_ring needs 'ring' and 'group'")
        d = GroupRingOf(ring_from_json(obj["ring"]), group_from_json(obj["group"]))
    elif kind == "quotient":
        if "ring" not in obj:
            raise DescriptorError("quotient needs 'ring'")
        gens = _list(obj, "generators")
        if not all(isinstance(g, int) and not isinstance(g, bool) for g in gens):
            raise DescriptorError("quotient generators must be element indices")
        d = Quotient(ring_from_json(obj["ring"]), tuple(gens))
    elif kind == "integers_marker":
        d = IntegersMarker()
    else:
        raise DescriptorError(f"unknown ring kind {kind!r}")
    validate_ring_descriptor(d)
    return d


def ring_to_json(d: RingDescriptor) -> dict:
    if isinstance(d, ZMod):
        return {"kind": "zmod", "n": d.n}
    if isinstance(d, GaloisField):
        return {"kind": "galois_field", "p": d.p, "k": d.k}
    if isinstance(d, Product):
        return {"kind": "product", "factors": [ring_to_json(f) for f in d.factors]}
    if isinstance(d, GroupRingOf):
        return {"kind": "group_ring", "ring": ring_to_json(d.ring), "group": group_to_json(d.group)}
    if isinstance(d, Quotient):
        return {"kind": "quotient", "ring": ring_to_json(d.ring), "generators": list(d.generators)}
    if isinstance(d, IntegersMarker):
        return {"kind": "integers_marker"}
    raise DescriptorError(f"not a ring descriptor: {d!r}")


def validate_ring_descriptor(d: RingDescriptor) -> None:
    if isinstance(d, ZMod):
        if d.n < 2:
            raise DescriptorError(f"zmod(n) requires n >= 2 (rings have 1 != 0), got {d.n}")
    elif isinstance(d, GaloisField):
        if not is_prime(d.p):
            raise DescriptorError(f"galois_field needs a prime p, got {d.p}")
        if d.k < 1:
            raise DescriptorError(f"galois_field needs k >= 1, got {d.k}")
    elif isinstance(d, Product):
        if not d.factors:
            raise DescriptorError("product needs at least one factor")
        for f in d.factors:
            validate_ring_descriptor(f)
    elif isinstance(d, GroupRingOf):
        validate_ring_descriptor(d.ring)
        validate_group_descriptor(d.group)
    elif isinstance(d, Quotient):
        validate_ring_descriptor(d.ring)
    elif not isinstance(d, IntegersMarker):
        raise DescriptorError(f"not a ring descriptor: {d!r}")


def is_non_artinian(d: RingDescriptor) -> bool:
    """True when the descriptor involves the integers in a way that stays infinite."""
    if isinstance(d, IntegersMarker):
        return True
    if isinstance(d, Product):
        return any(is_non_artinian(f) for f in d.factors)
    if isinstance(d, GroupRingOf):
        return is_non_artinian(d.ring)
    if isinstance(d, Quotient):
        return is_non_artinian(d.ring)
    return False


def projected_ring_size(d: RingDescriptor) -> int | None:
    """Cardinality of the materialized ring, or None when it is not known up front."""
    from kothe.groups import group_order

    if isinstance(d, ZMod):
        return d.n
    if isinstance(d, GaloisField):
        return d.p ** d.k
    if isinstance(d, Product):
        total = 1
        for f in d.factors:
            s = projected_ring_size(f)
            if s is None:
                return None
            total *= s
        return total
    if isinstance(d, GroupRingOf):
        base = projected_ring_size(d.ring)
        if base is None:
            return None
        return base ** group_order(d.group)
    return None


def describe_ring(d: RingDescriptor) -> str:
    if isinstance(d, ZMod):
        return f"Z_{d.n}"
    if isinstance(d, GaloisField):
        return f"F_{d.p ** d.k}"
    if isinstance(d, Product):
        return " x ".join(describe_ring(f) for f in d.factors)
    if isinstance(d, GroupRingOf):
        return f"({describe_ring(d.ring)})[{describe_group(d.group)}]"
    if isinstance(d, Quotient):
        return f"{describe_ring(d.ring)}/({', '.join(map(str, d.generators))})"
    if isinstance(d, IntegersMarker):
        return "Z"
    raise DescriptorError(f"not a ring descriptor: {d!r}")


def describe_group(d: GroupDescriptor) -> str:
    if isinstance(d, Cyclic):
        return f"C_{d.n}"
    if isinstance(d, Symmetric):
        return f"S_{d.n}"
    if isinstance(d, Dihedral):
        return f"D_{d.order}"
    if isinstance(d, Quaternion8):
        return "Q_8"
    if isinstance(d, DirectProduct):
        return " x ".join(describe_group(f) for f in d.factors)
    if isinstance(d, FromTable):
        return f"G({len(d.table)})"
    raise DescriptorError(f"not a group descriptor: {d!r}")
