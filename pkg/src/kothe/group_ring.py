"""Group rings R[G] as materialized ring tables.

An element ``sum_g r_g g`` is stored at index ``sum_g r_g * |R|**g`` (mixed
radix, group element 0 least significant).  All heavier algebra reuses the
oracles in :mod:`kothe.rings` on the resulting table.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from kothe.descriptors import DEFAULT_CAP, CapExceeded
from kothe.groups import GroupTable, SubgroupRef, quotient_group
from kothe.rings import (
    TWO_SIDED,
    GroupRingBasis,
    IdealRef,
    RingTable,
    _index_dtype,
    central_idempotent_atoms,
    check_ideal,
    ideal_product,
    is_n_one_unit,
    is_local,
    jacobson_radical,
    quotient_ring,
)

_ROW_BLOCK = 256


def group_ring_size(R: RingTable, G: GroupTable) -> int:
    return R.size ** G.order


def coefficient_matrix(q: int, m: int, n: int | None = None) -> np.ndarray:
    """Row ``x`` holds the ``m`` base-``q`` digits of ``x``."""
    n = q ** m if n is None else n
    idx = np.arange(n, dtype=np.int64)
    return np.stack([(idx // q ** g) % q for g in range(m)], axis=1)


def build_group_ring(R: RingTable, G: GroupTable, cap: int = DEFAULT_CAP) -> RingTable:
    """Materialize ``R[G]``; raises :class:`CapExceeded` when ``|R|**|G| > cap``."""
    q, m = R.size, G.order
    n = group_ring_size(R, G)
    if n > cap:
        raise CapExceeded(f"|{R.name}[{G.name}]|", n, cap)
    C = coefficient_matrix(q, m, n)
    weights = q ** np.arange(m, dtype=np.int64)
    dt = _index_dtype(n)
    add = np.empty((n, n), dtype=dt)
    mul = np.empty((n, n), dtype=dt)
    # pairs (g, h) grouped by their product k = gh
    pairs = [[] for _ in range(m)]
    for g in range(m):
        for h in range(m):
            pairs[int(G.product[g, h])].append((g, h))
    if R.modulus is not None:
        # Z/q coefficients: exact integer convolution through matrix products
        Cf = C.astype(np.float64)
        shifted = []
        for k in range(m):
            # Yk[y, g] = coefficient of y at g^-1 k, so (x*y)_k = sum_g x_g Yk[y, g]
            cols = [next(h for (gg, h) in pairs[k] if gg == g) for g in range(m)]
            shifted.append(Cf[:, cols])
        for s in range(0, n, _ROW_BLOCK):
            Xb = Cf[s:s + _ROW_BLOCK]
            idx = np.zeros((Xb.shape[0], n), dtype=np.int64)
            for k in range(m):
                coef = np.rint(Xb @ shifted[k].T).astype(np.int64) % q
                idx += coef * weights[k]
            mul[s:s + _ROW_BLOCK] = idx
            sums = (C[s:s + _ROW_BLOCK, None, :] + C[None, :, :]) % q
            add[s:s + _ROW_BLOCK] = sums @ weights
    else:
        radd = R.add.astype(np.int64)
        rmul = R.mul.astype(np.int64)
        # T[a, h] = a * (coefficient of y at h), for every y
        T = rmul[:, C]  # (q, n, m)
        for s in range(0, n, _ROW_BLOCK):
            Xb = C[s:s + _ROW_BLOCK]
            idx = np.zeros((Xb.shape[0], n), dtype=np.int64)
            for k in range(m):
                acc = np.zeros((Xb.shape[0], n), dtype=np.int64)
                for g, h in pairs[k]:
                    acc = radd[acc, T[Xb[:, g], :, h]]
                idx += acc * weights[k]
            mul[s:s + _ROW_BLOCK] = idx
            sums = radd[Xb[:, None, :], C[None, :, :]]
            add[s:s + _ROW_BLOCK] = sums @ weights
    basis = GroupRingBasis(R, G)

    def label(x: int) -> str:
        terms = []
        for g in range(m):
            c = int(C[x, g])
            if c == 0:
                continue
            gl = G.labels[g]
            cl = R.label(c)
            if g == 0:
                terms.append(cl)
            elif c == R.one:
                terms.append(gl)
            else:
                terms.append(f"{cl}*{gl}")
        return " + ".join(terms) or "0"

    return RingTable(add, mul, R.one, labels=label, name=f"{R.name}[{G.name}]", basis=basis)


def _basis(RG: RingTable) -> GroupRingBasis:
    if RG.basis is None:
        raise ValueError(f"{RG.name} carries no group-ring basis metadata")
    return RG.basis


def coefficients(RG: RingTable, x: int) -> tuple[int, ...]:
    b = _basis(RG)
    q = b.radix
    return tuple((x // q ** g) % q for g in range(b.group.order))


def element(RG: RingTable, coeffs) -> int:
    b = _basis(RG)
    q = b.radix
    if len(coeffs) != b.group.order:
        raise ValueError("coefficient vector length must equal |G|")
    return sum(int(c) * q ** g for g, c in enumerate(coeffs))


def scalar(RG: RingTable, r: int) -> int:
    """Index of ``r * e``."""
    return int(r)


def group_element(RG: RingTable, g: int) -> int:
    """Index of ``1_R * g``."""
    b = _basis(RG)
    return b.ring.one * b.radix ** g


def scalar_elements(RG: RingTable) -> np.ndarray:
    return np.arange(_basis(RG).ring.size)


def augmentation(RG: RingTable, x: int) -> int:
    """Sum of the coefficients of ``x``, as an element of the coefficient ring."""
    R = _basis(RG).ring
    total = 0
    for c in coefficients(RG, x):
        total = int(R.add[total, c])
    return total


def augmentation_map(RG: RingTable) -> np.ndarray:
    b = _basis(RG)
    R = b.ring
    C = coefficient_matrix(b.radix, b.group.order, RG.size)
    total = np.zeros(RG.size, dtype=np.int64)
    for g in range(b.group.order):
        total = R.add[total, C[:, g]].astype(np.int64)
    return total


def augmentation_ideal(RG: RingTable) -> IdealRef:
    return IdealRef(augmentation_map(RG) == 0, TWO_SIDED)


def extend_coefficient_ideal(RG: RingTable, I: IdealRef) -> IdealRef:
    """``I*R[G]``: the elements all of whose coefficients lie in ``I``."""
    b = _basis(RG)
    C = coefficient_matrix(b.radix, b.group.order, RG.size)
    return IdealRef(I.members[C].all(axis=1), TWO_SIDED)


def coefficient_map(source: RingTable, target: RingTable, ring_map: np.ndarray,
                    group_map: np.ndarray | None = None) -> np.ndarray:
    """Index map ``sum r_g g -> sum f(r_g) pi(g)`` between two group rings."""
    bs, bt = _basis(source), _basis(target)
    C = coefficient_matrix(bs.radix, bs.group.order, source.size)
    mapped = ring_map[C]
    group_map = np.arange(bs.group.order) if group_map is None else group_map
    Rt = bt.ring
    out_coeffs = np.zeros((source.size, bt.group.order), dtype=np.int64)
    for g in range(bs.group.order):
        k = int(group_map[g])
        out_coeffs[:, k] = Rt.add[out_coeffs[:, k], mapped[:, g]]
    weights = bt.radix ** np.arange(bt.group.order, dtype=np.int64)
    return out_coeffs @ weights


def is_ring_homomorphism(A: RingTable, B: RingTable, f: np.ndarray, chunk: int = 512) -> bool:
    if f[A.one] != B.one or f[0] != 0:
        return False
    for s in range(0, A.size, chunk):
        rows = slice(s, s + chunk)
        fa = f[s:s + chunk]
        if not np.array_equal(f[A.add[rows]], B.add[fa[:, None], f[None, :]]):
            return False
        if not np.array_equal(f[A.mul[rows]], B.mul[fa[:, None], f[None, :]]):
            return False
    return True


@dataclass
class QuotientIso:
    """Element-wise verified isomorphism ``R[G]/IG -> (R/I)[G]``."""

    ideal: IdealRef            # IG inside R[G]
    quotient: RingTable        # R[G]/IG
    target: RingTable          # (R/I)[G]
    mapping: np.ndarray        # quotient index -> target index
    verified: bool


def _iso_for(RG: RingTable, I: IdealRef, cap: int) -> QuotientIso:
    b = _basis(RG)
    R, G = b.ring, b.group
    IG = extend_coefficient_ideal(RG, I)
    if I.is_zero():
        Q, proj = RG, np.arange(RG.size)
    else:
        Q, proj = quotient_ring(RG, IG)
    RI, rproj = (R, np.arange(R.size)) if I.is_zero() else quotient_ring(R, I)
    target = build_group_ring(RI, G, cap)
    direct = coefficient_map(RG, target, rproj)  # R[G] -> (R/I)[G]
    mapping = np.full(Q.size, -1, dtype=np.int64)
    mapping[proj] = direct
    ok = bool(
        np.all(mapping >= 0)
        and np.array_equal(np.sort(mapping), np.arange(target.size))
        and np.array_equal(mapping[proj], direct)
        and is_ring_homomorphism(Q, target, mapping)
    )
    return QuotientIso(IG, Q, target, mapping, ok)


def verify_quotient_iso(RG: RingTable, I: IdealRef, cap: int = DEFAULT_CAP) -> tuple[QuotientIso, QuotientIso]:
    """Build and check ``R[G]/IG ~ (R/I)[G]`` and ``R[G]/I^2 G ~ (R/I^2)[G]``."""
    R = _basis(RG).ring
    if not check_ideal(R, I.members, TWO_SIDED) or I.is_whole():
        raise ValueError("verify_quotient_iso needs a proper two-sided ideal of R")
    I2 = ideal_product(R, I, I)
    I2.sidedness = TWO_SIDED
    return _iso_for(RG, I, cap), _iso_for(RG, I2, cap)


@dataclass
class RadicalTransfer:
    containment: bool   # J(R)G is inside J(R[G])
    equal: bool         # J(R)G == J(R[G])
    extended: IdealRef
    radical: IdealRef


def radical_transfer_check(R: RingTable, G: GroupTable, cap: int = DEFAULT_CAP,
                           RG: RingTable | None = None) -> RadicalTransfer:
    """Compare ``J(R)G`` with ``J(R[G])``, both computed from the tables."""
    if is_local(R) is None or not is_n_one_unit(R, G.order):
        raise ValueError("radical_transfer_check needs R local and |G|*1 a unit")
    RG = build_group_ring(R, G, cap) if RG is None else RG
    ext = extend_coefficient_ideal(RG, jacobson_radical(R))
    rad = jacobson_radical(RG)
    return RadicalTransfer(ext.issubset(rad), ext == rad, ext, rad)


def quotient_group_ring(R: RingTable, G: GroupTable, I: IdealRef | None, N: SubgroupRef | None,
                        cap: int = DEFAULT_CAP) -> RingTable:
    """``(R/I)[G/N]`` (``None`` meaning the zero ideal / trivial subgroup)."""
    RI = R if I is None or I.is_zero() else quotient_ring(R, I)[0]
    GN = G if N is None or N.order == 1 else quotient_group(G, N)[0]
    return build_group_ring(RI, GN, cap)


def residue_maps(R: RingTable):
    """``(R/J, R -> R/J, R/J^2, R -> R/J^2)`` for the Jacobson radical ``J``."""
    J = jacobson_radical(R)
    if J.is_zero():
        ident = np.arange(R.size)
        return R, ident, R, ident
    Q1, p1 = quotient_ring(R, J)
    J2 = ideal_product(R, J, J)
    J2.sidedness = TWO_SIDED
    if J2.is_zero():
        Q2, p2 = R, np.arange(R.size)
    else:
        Q2, p2 = quotient_ring(R, J2)
    return Q1, p1, Q2, p2


def is_r_admissible(R: RingTable, G: GroupTable, cap: int = DEFAULT_CAP) -> bool:
    """``|G|*1`` is a unit of ``R/J`` and every centrally primitive idempotent of
    ``(R/J)[G]`` is the image of one of ``(R/J^2)[G]``."""
    if is_local(R) is None:
        raise ValueError("R-admissibility is defined for local rings")
    Q1, p1, Q2, p2 = residue_maps(R)
    if not is_n_one_unit(Q1, G.order):
        return False
    down = np.zeros(Q2.size, dtype=np.int64)
    down[p2] = p1  # J^2 is inside J, so this is well defined
    A1 = build_group_ring(Q1, G, cap)
    A2 = build_group_ring(Q2, G, cap)
    f = coefficient_map(A2, A1, down)
    images = {int(f[a]) for a in central_idempotent_atoms(A2)}
    return all(a in images for a in central_idempotent_atoms(A1))


# ------------------------------------------------------ sparse arithmetic


def sparse_multiply(R: RingTable, G: GroupTable, a, b) -> tuple[int, ...]:
    """Product of coefficient vectors in ``R[G]`` without materializing the group ring."""
    out = [0] * G.order
    for g, x in enumerate(a):
        if x == 0:
            continue
        for h, y in enumerate(b):
            if y == 0:
                continue
            k = int(G.product[g, h])
            out[k] = int(R.add[out[k], R.mul[x, y]])
    return tuple(out)


@dataclass(frozen=True)
class IdempotentWitness:
    idempotent: bool
    central: bool
    non_commuting_with: int | None  # a group element g with xg != gx


def check_idempotent_witness(R: RingTable, G: GroupTable, coeffs) -> IdempotentWitness:
    """Is ``x`` idempotent, and does it commute with every ``r*g``?

    For a commutative coefficient ring, commuting with the group basis is
    the same as being central.
    """
    x = tuple(int(c) for c in coeffs)
    if len(x) != G.order:
        raise ValueError("coefficient vector length must equal |G|")
    idem = sparse_multiply(R, G, x, x) == x
    bad = None
    for g in range(G.order):
        basis = tuple(R.one if h == g else 0 for h in range(G.order))
        if sparse_multiply(R, G, x, basis) != sparse_multiply(R, G, basis, x):
            bad = g
            break
    if bad is None and not R.is_commutative:
        raise ValueError("centrality over a non-commutative coefficient ring needs the full table")
    return IdempotentWitness(idem, bad is None, bad)
