"""Turn ring descriptors into ring tables."""
from __future__ import annotations

from functools import lru_cache

from kothe.descriptors import (
    DEFAULT_CAP,
    CapExceeded,
    DescriptorError,
    GaloisField,
    GroupRingOf,
    IntegersMarker,
    Product,
    Quotient,
    RingDescriptor,
    ZMod,
    describe_ring,
    projected_ring_size,
    validate_ring_descriptor,
)
from kothe.group_ring import build_group_ring
from kothe.groups import materialize_group
from kothe.rings import RingTable, galois_field, generated_ideal, product_ring, quotient_ring, zmod


class NonArtinianRing(DescriptorError):
    """The integers (or something built on them) cannot be materialized."""


def materialize_ring(d: RingDescriptor, cap: int = DEFAULT_CAP) -> RingTable:
    validate_ring_descriptor(d)
    if isinstance(d, IntegersMarker):
        raise NonArtinianRing("the integers are infinite and not artinian")
    base = d
    while isinstance(base, Quotient):
        base = base.ring
    base_size = projected_ring_size(base)
    if base_size is not None and base_size > cap:
        raise CapExceeded(f"|{describe_ring(base)}|", base_size, cap)
    size = projected_ring_size(d)
    if size is not None and size > cap:
        raise CapExceeded(f"|{describe_ring(d)}|", size, cap)
    R = _materialize(d)
    if R.size > cap:
        raise CapExceeded(f"|{describe_ring(d)}|", R.size, cap)
    return R


@lru_cache(maxsize=8)
def _materialize(d: RingDescriptor) -> RingTable:
    if isinstance(d, ZMod):
        return zmod(d.n)
    if isinstance(d, GaloisField):
        return galois_field(d.p, d.k)
    if isinstance(d, Product):
        return product_ring([_materialize(f) for f in d.factors])
    if isinstance(d, GroupRingOf):
        R = _materialize(d.ring)
        G = materialize_group(d.group)
        return build_group_ring(R, G, cap=R.size ** G.order)
    if isinstance(d, Quotient):
        R = _materialize(d.ring)
        if any(g < 0 or g >= R.size for g in d.generators):
            raise DescriptorError("quotient generator index out of range")
        I = generated_ideal(R, d.generators)
        if I.is_whole():
            raise DescriptorError("quotient by the whole ring")
        return quotient_ring(R, I)[0]
    if isinstance(d, IntegersMarker):
        raise NonArtinianRing("the integers are infinite and not artinian")
    raise DescriptorError(f"not a ring descriptor: {d!r}")
