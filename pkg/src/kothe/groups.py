"""Finite groups as Cayley tables, subgroup enumeration and group predicates.

Elements are dense indices ``0..order-1`` with ``0`` the identity.  Subsets of
a group (subgroups in particular) are Python ``int`` bitmasks, which makes
them hashable and gives canonical deduplication for free.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from kothe.descriptors import (
    DEFAULT_GROUP_CAP,
    CapExceeded,
    Cyclic,
    DescriptorError,
    Dihedral,
    DirectProduct,
    FromTable,
    GroupDescriptor,
    Quaternion8,
    Symmetric,
    is_prime,
    validate_group_descriptor,
)


class InvalidGroup(DescriptorError):
    """A table that does not satisfy the group axioms."""


def mask_of(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << int(e)
    return m


def elements_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class GroupTable:
    """A finite group given by its full multiplication table."""

    def __init__(self, product, labels=None, name: str = "", validate: bool = True):
        table = np.asarray(product, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidGroup("Cayley table must be a non-empty square array")
        self.order = int(table.shape[0])
        self.product = table
        self.product.setflags(write=False)
        self.identity = 0
        self.name = name or f"G({self.order})"
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.order))
        if validate:
            self.check_axioms()
        inv = np.argmax(table == 0, axis=1)
        self.inverse = inv
        self.inverse.setflags(write=False)

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order={self.order})"

    def check_axioms(self) -> None:
        """Exhaustively verify closure, identity at index 0, inverses and associativity."""
        t = self.product
        n = self.order
        if t.min() < 0 or t.max() >= n:
            raise InvalidGroup("table entries out of range")
        idx = np.arange(n)
        if not (np.array_equal(t[0], idx) and np.array_equal(t[:, 0], idx)):
            raise InvalidGroup("element 0 must be a two-sided identity")
        # latin square <=> unique solvability, so every element has a two-sided inverse
        for axis in (0, 1):
            if not np.all(np.sort(t, axis=axis) == (idx[:, None] if axis == 0 else idx[None, :])):
                raise InvalidGroup("table is not a latin square")
        left = t[t[:, :, None], idx[None, None, :]]  # (ab)c
        right = t[idx[:, None, None], t[None, :, :]]  # a(bc)
        if not np.array_equal(left, right):
            a, b, c = (int(v[0]) for v in np.nonzero(left != right))
            raise InvalidGroup(f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})")

    def mul(self, a: int, b: int) -> int:
        return int(self.product[a, b])

    def power(self, a: int, k: int) -> int:
        x = 0
        for _ in range(k % self.element_orders[a]):
            x = int(self.product[x, a])
        return x

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.order):
            x, k = a, 1
            while x != 0:
                x = int(self.product[x, a])
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def conjugation(self) -> np.ndarray:
        """``conjugation[g, h] = g h g^-1``."""
        t = self.product
        return t[t, self.inverse[:, None]]

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.product, self.product.T))

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def closure(self, generators) -> int:
        """Bitmask of the subgroup generated by ``generators``."""
        current = np.unique(np.array([0, *generators], dtype=np.int64))
        while True:
            nxt = np.unique(self.product[np.ix_(current, current)])
            if len(nxt) == len(current):
                return mask_of(current)
            current = nxt

    def is_normal_mask(self, mask: int) -> bool:
        members = elements_of(mask)
        conj = self.conjugation[:, members]
        return all(mask >> int(x) & 1 for x in np.unique(conj))

    def label(self, g: int) -> str:
        return self.labels[g]


@dataclass(frozen=True)
class SubgroupRef:
    mask: int
    is_normal: bool

    @property
    def elements(self) -> list[int]:
        return elements_of(self.mask)

    @property
    def order(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, g: int) -> bool:
        return bool(self.mask >> g & 1)

    def members(self, group_order: int) -> np.ndarray:
        """Membership bit-vector over the parent's elements."""
        return np.array([bool(self.mask >> i & 1) for i in range(group_order)])


def subgroup_ref(G: GroupTable, elements) -> SubgroupRef:
    mask = mask_of(elements)
    if G.closure(elements_of(mask)) != mask:
        raise ValueError("elements do not form a subgroup")
    return SubgroupRef(mask, G.is_normal_mask(mask))


# ------------------------------------------------------------- materialize


def _cyclic(n: int) -> GroupTable:
    idx = np.arange(n)
    labels = ["e"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return GroupTable((idx[:, None] + idx[None, :]) % n, labels, f"C_{n}", validate=False)


def _cycle_notation(perm: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for s in range(len(perm)):
        if s in seen or perm[s] == s:
            seen.add(s)
            continue
        cyc, x = [], s
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "e"


def _symmetric(n: int) -> GroupTable:
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # composition (a*b)(x) = a(b(x)), i.e. b acts first
    table = [[index[tuple(a[b[x]] for x in range(n))] for b in perms] for a in perms]
    return GroupTable(table, [_cycle_notation(p) for p in perms], f"S_{n}", validate=False)


def _dihedral(order: int) -> GroupTable:
    m = order // 2

    def mul(a, b):
        i, s = a % m, a // m
        j, t = b % m, b // m
        k = (i + j) % m if s == 0 else (i - j) % m
        return k + m * ((s + t) % 2)

    table = [[mul(a, b) for b in range(order)] for a in range(order)]
    labels = []
    for a in range(order):
        i, s = a % m, a // m
        r = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        labels.append((r + ("s" if s else "")) or "e")
    return GroupTable(table, labels, f"D_{order}", validate=False)


def _quaternion8() -> GroupTable:
    # basis unit, sign: 1, -1, i, -i, j, -j, k, -k
    unit_mul = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
        (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
        (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
    }

    def split(a):
        return a // 2, (1 if a % 2 == 0 else -1)

    table = []
    for a in range(8):
        row = []
        for b in range(8):
            ua, sa = split(a)
            ub, sb = split(b)
            u, s = unit_mul[(ua, ub)]
            sign = sa * sb * s
            row.append(2 * u + (0 if sign == 1 else 1))
        table.append(row)
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return GroupTable(table, labels, "Q_8", validate=False)


def direct_product(groups: list[GroupTable]) -> GroupTable:
    """Mixed-radix product; the first factor is the least significant digit."""
    orders = [g.order for g in groups]
    total = math.prod(orders)
    idx = np.arange(total)
    digits = []
    rest = idx.copy()
    for o in orders:
        digits.append(rest % o)
        rest //= o
    table = np.zeros((total, total), dtype=np.int64)
    radix = 1
    for g, d in zip(groups, digits):
        table += g.product[d[:, None], d[None, :]] * radix
        radix *= g.order
    labels = []
    for i in range(total):
        parts = [g.labels[int(d[i])] for g, d in zip(groups, digits)]
        labels.append("(" + ",".join(parts) + ")")
    name = " x ".join(g.name for g in groups)
    return GroupTable(table, labels, name, validate=False)


def group_order(d: GroupDescriptor) -> int:
    if isinstance(d, Cyclic):
        return d.n
    if isinstance(d, Symmetric):
        return math.factorial(d.n)
    if isinstance(d, Dihedral):
        return d.order
    if isinstance(d, Quaternion8):
        return 8
    if isinstance(d, DirectProduct):
        return math.prod(group_order(f) for f in d.factors)
    if isinstance(d, FromTable):
        return len(d.table)
    raise DescriptorError(f"not a group descriptor: {d!r}")


@lru_cache(maxsize=128)
def materialize_group(d: GroupDescriptor) -> GroupTable:
    """Deterministically build the Cayley table described by ``d``."""
    validate_group_descriptor(d)
    if isinstance(d, Cyclic):
        return _cyclic(d.n)
    if isinstance(d, Symmetric):
        if d.n > 6:
            raise CapExceeded("symmetric group order", math.factorial(d.n), 720)
        return _symmetric(d.n)
    if isinstance(d, Dihedral):
        return _dihedral(d.order)
    if isinstance(d, Quaternion8):
        return _quaternion8()
    if isinstance(d, DirectProduct):
        return direct_product([materialize_group(f) for f in d.factors])
    if isinstance(d, FromTable):
        rows = d.table
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidGroup("from_table rows must all have the table's length")
        return GroupTable(rows, name=f"G({n})", validate=True)
    raise DescriptorError(f"not a group descriptor: {d!r}")


# -------------------------------------------------------------- subgroups


def subgroups(G: GroupTable, cap: int = DEFAULT_GROUP_CAP) -> list[SubgroupRef]:
    """Every subgroup of ``G``, sorted by (order, bitmask).

    Subgroups are built as joins of cyclic subgroups, breadth first.
    """
    if G.order > cap:
        raise CapExceeded("group order for subgroup enumeration", G.order, cap)
    return list(_subgroups(G))


def _subgroups(G: GroupTable) -> tuple[SubgroupRef, ...]:
    cached = G.__dict__.get("_subgroups")
    if cached is not None:
        return cached
    cyclic = sorted({G.closure([g]) for g in range(G.order)})
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyclic:
                if c & ~h == 0:
                    continue
                j = G.closure(elements_of(h | c))
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    refs = tuple(
        SubgroupRef(m, G.is_normal_mask(m))
        for m in sorted(found, key=lambda m: (bin(m).count("1"), m))
    )
    G.__dict__["_subgroups"] = refs
    return refs


def normal_subgroups(G: GroupTable, cap: int = DEFAULT_GROUP_CAP) -> list[SubgroupRef]:
    return [s for s in subgroups(G, cap) if s.is_normal]


def trivial_subgroup(G: GroupTable) -> SubgroupRef:
    return SubgroupRef(1, True)


def whole_group(G: GroupTable) -> SubgroupRef:
    return SubgroupRef(G.full_mask, True)


def quotient_group(G: GroupTable, N: SubgroupRef) -> tuple[GroupTable, np.ndarray]:
    """``G/N`` with cosets ordered by least representative, plus the projection."""
    if not G.is_normal_mask(N.mask):
        raise ValueError("quotient_group needs a normal subgroup")
    members = np.array(N.elements, dtype=np.int64)
    reps_of = G.product[:, members].min(axis=1)
    reps = np.unique(reps_of)
    coset = np.searchsorted(reps, reps_of)
    table = coset[G.product[np.ix_(reps, reps)]]
    labels = [G.labels[int(r)] + ("N" if len(members) > 1 else "") for r in reps]
    if len(members) > 1:
        labels[0] = "N"
    Q = GroupTable(table, labels, f"{G.name}/N", validate=False)
    return Q, coset


def subgroup_table(G: GroupTable, H: SubgroupRef) -> GroupTable:
    """``H`` as a group in its own right, elements in increasing parent order."""
    members = np.array(H.elements, dtype=np.int64)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[members] = np.arange(len(members))
    table = pos[G.product[np.ix_(members, members)]]
    return GroupTable(table, [G.labels[int(g)] for g in members], f"H<{G.name}", validate=False)


# ------------------------------------------------------------- predicates


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def is_cyclic(G: GroupTable) -> bool:
    return G.order in G.element_orders


def is_p_group(G: GroupTable, p: int) -> bool:
    """Order is a power of ``p``; the trivial group counts (p^0)."""
    _check_prime(p)
    n = G.order
    while n % p == 0:
        n //= p
    return n == 1


def is_p_prime_group(G: GroupTable, p: int) -> bool:
    _check_prime(p)
    return math.gcd(G.order, p) == 1


def p_prime_by_cyclic_p_witness(G: GroupTable, p: int) -> SubgroupRef | None:
    """A normal p'-subgroup ``N`` with ``G/N`` a cyclic p-group, or ``None``.

    Such an ``N`` is a normal Hall p'-subgroup, hence it is generated by the
    p'-elements of ``G``; only that candidate needs checking.
    """
    _check_prime(p)
    p_free = [g for g in range(G.order) if math.gcd(G.element_orders[g], p) == 1]
    mask = G.closure(p_free)
    n_order = bin(mask).count("1")
    if math.gcd(n_order, p) != 1:
        return None
    index = G.order // n_order
    k = index
    while k % p == 0:
        k //= p
    if k != 1 or not G.is_normal_mask(mask):
        return None
    N = SubgroupRef(mask, True)
    Q, _ = quotient_group(G, N)
    return N if is_cyclic(Q) else None


def is_p_prime_by_cyclic_p(G: GroupTable, p: int) -> bool:
    return p_prime_by_cyclic_p_witness(G, p) is not None


def is_dedekind(G: GroupTable, cap: int = DEFAULT_GROUP_CAP) -> bool:
    return all(s.is_normal for s in subgroups(G, cap))


def is_lagrangian(G: GroupTable, cap: int = DEFAULT_GROUP_CAP) -> bool:
    orders = {s.order for s in subgroups(G, cap)}
    return all(d in orders for d in range(1, G.order + 1) if G.order % d == 0)


def describe_subgroup(G: GroupTable, N: SubgroupRef) -> str:
    return "{" + ", ".join(G.labels[g] for g in N.elements) + "}"
