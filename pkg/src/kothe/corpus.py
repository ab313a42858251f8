"""Sweep small (R, G) pairs and compare the symbolic rules with brute force."""
from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass

from kothe.classifier import Answer, Assumptions, brute_force_kothe, symbolic_kothe
from kothe.descriptors import (
    Cyclic,
    Dihedral,
    DirectProduct,
    GaloisField,
    GroupDescriptor,
    Quaternion8,
    RingDescriptor,
    Symmetric,
    ZMod,
    describe_group,
    describe_ring,
    is_prime,
    projected_ring_size,
)
from kothe.groups import group_order
from kothe.materialize import materialize_ring

log = logging.getLogger(__name__)

AGREE = "agree"
DISAGREE = "disagree"
SYMBOLIC_ONLY = "symbolic_only"
ORACLE_ONLY = "oracle_only"
NEITHER = "neither"

ACCEPTANCE_RINGS: tuple[RingDescriptor, ...] = (
    GaloisField(2), GaloisField(3), GaloisField(2, 2), GaloisField(5),
    ZMod(4), ZMod(6), ZMod(8), ZMod(9),
)
ACCEPTANCE_GROUPS: tuple[GroupDescriptor, ...] = (
    Cyclic(1), Cyclic(2), Cyclic(3), Cyclic(4), Cyclic(5), Cyclic(6),
    DirectProduct((Cyclic(2), Cyclic(2))), Symmetric(3), Dihedral(8), Quaternion8(),
)


def coefficient_rings(max_card: int) -> list[RingDescriptor]:
    """``Z_n`` (n composite) and ``GF(p^k)`` of cardinality at most ``max_card``."""
    out: list[RingDescriptor] = []
    for n in range(2, max_card + 1):
        prime_power = next(((p, k) for p in range(2, n + 1) if is_prime(p)
                            for k in range(1, n.bit_length() + 1) if p ** k == n), None)
        if prime_power is not None:
            out.append(GaloisField(*prime_power))
        if not is_prime(n):
            out.append(ZMod(n))
    return out


def small_groups(max_order: int) -> list[GroupDescriptor]:
    out: list[GroupDescriptor] = [Cyclic(n) for n in range(1, max_order + 1)]
    extra: list[GroupDescriptor] = [
        DirectProduct((Cyclic(2), Cyclic(2))), Symmetric(3),
        DirectProduct((Cyclic(2), Cyclic(4))), DirectProduct((Cyclic(2), Cyclic(2), Cyclic(2))),
        Dihedral(8), Quaternion8(), DirectProduct((Cyclic(3), Cyclic(3))),
    ]
    out += [g for g in extra if group_order(g) <= max_order]
    return out


def group_ring_size(rd: RingDescriptor, gd: GroupDescriptor) -> int:
    base = projected_ring_size(rd)
    if base is None:
        base = materialize_ring(rd).size
    return base ** group_order(gd)


@dataclass(frozen=True)
class CorpusRow:
    ring: str
    group: str
    size: int
    symbolic: str
    symbolic_rule: str
    oracle: str
    status: str


def compare(rd: RingDescriptor, gd: GroupDescriptor, a: Assumptions) -> CorpusRow:
    sym = symbolic_kothe(rd, gd, a)
    ora = brute_force_kothe(rd, gd, a)
    s_ok, o_ok = sym.answer is not Answer.UNKNOWN, ora.answer is not Answer.UNKNOWN
    if s_ok and o_ok:
        status = AGREE if sym.answer is ora.answer else DISAGREE
    elif s_ok:
        status = SYMBOLIC_ONLY
    elif o_ok:
        status = ORACLE_ONLY
    else:
        status = NEITHER
    size = group_ring_size(rd, gd)
    return CorpusRow(describe_ring(rd), describe_group(gd), size, sym.answer.value,
                     sym.rule_id or "", ora.answer.value, status)


def run_corpus(rings, groups, max_size: int = 4096, a: Assumptions | None = None) -> list[CorpusRow]:
    """Every pair with ``|R[G]| <= max_size``, sorted by (size, ring, group)."""
    a = a or Assumptions(cap=max(max_size, Assumptions().cap))
    rows = []
    for rd in rings:
        for gd in groups:
            size = group_ring_size(rd, gd)
            if size > max_size:
                log.info("skipping %s[%s]: %d elements", describe_ring(rd), describe_group(gd), size)
                continue
            rows.append(compare(rd, gd, a))
    rows.sort(key=lambda r: (r.size, r.ring, r.group))
    return rows


def disagreements(rows: list[CorpusRow]) -> list[CorpusRow]:
    return [r for r in rows if r.status == DISAGREE]


def to_csv(rows: list[CorpusRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["ring", "group", "size", "symbolic", "symbolic_rule", "oracle", "status"])
    for r in rows:
        w.writerow([r.ring, r.group, r.size, r.symbolic, r.symbolic_rule, r.oracle, r.status])
    return buf.getvalue()
