"""Finite unital rings as explicit operation tables, and exhaustive oracles on them.

Every materialized ring has ``zero == 0``.  Subsets of a ring (ideals,
cosets, spans) are boolean numpy masks over the element indices.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from kothe.descriptors import DEFAULT_LATTICE_CAP, CapExceeded, is_prime

LEFT, RIGHT, TWO_SIDED = "left", "right", "two_sided"

_CHUNK = 512


class InvalidRing(ValueError):
    """Tables that violate the ring axioms."""


class InternalConsistencyError(AssertionError):
    """A table disagrees with a fact that holds in every finite ring."""


class NotAbelianError(ValueError):
    """Raised when an operation needs every idempotent to be central."""

    def __init__(self, witness: int, label: str = ""):
        super().__init__(f"ring is not abelian: non-central idempotent {label or witness}")
        self.witness = witness


def _index_dtype(n: int):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


@dataclass(frozen=True)
class GroupRingBasis:
    """Coefficient ring and group of a materialized group ring.

    Element ``x`` has coefficient ``(x // |R|**g) % |R|`` at group element ``g``.
    """

    ring: "RingTable"
    group: object  # GroupTable

    @property
    def radix(self) -> int:
        return self.ring.size


class RingTable:
    """A finite unital ring with full addition and multiplication tables."""

    def __init__(self, add, mul, one: int = 1, *, labels=None, name: str = "",
                 basis: GroupRingBasis | None = None, modulus: int | None = None,
                 validate: bool = False):
        add = np.asarray(add)
        mul = np.asarray(mul)
        n = add.shape[0]
        if add.shape != (n, n) or mul.shape != (n, n) or n == 0:
            raise InvalidRing("addition and multiplication tables must be square and equal-sized")
        dt = _index_dtype(n)
        self.size = n
        self.add = add.astype(dt, copy=False)
        self.mul = mul.astype(dt, copy=False)
        self.add.setflags(write=False)
        self.mul.setflags(write=False)
        self.zero = 0
        self.one = int(one) if n > 1 else 0
        self.name = name or f"R({n})"
        self._labels = labels
        self.basis = basis
        # set when the ring is literally Z/modulus with index == residue
        self.modulus = modulus
        neg = np.argmax(self.add == 0, axis=1).astype(dt)
        self.neg = neg
        self.neg.setflags(write=False)
        self._cache: dict = {}
        if validate:
            check_ring_axioms(self)

    def __repr__(self) -> str:
        return f"RingTable({self.name}, size={self.size})"

    def label(self, x: int) -> str:
        if self._labels is not None:
            return self._labels(x) if callable(self._labels) else self._labels[x]
        return str(x)

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def times(self, x: int, k: int) -> int:
        """``k * x`` by double-and-add; ``k`` may be negative."""
        if k < 0:
            x, k = int(self.neg[x]), -k
        acc, base = 0, int(x)
        while k:
            if k & 1:
                acc = int(self.add[acc, base])
            base = int(self.add[base, base])
            k >>= 1
        return acc

    def mask(self, elements) -> np.ndarray:
        m = np.zeros(self.size, dtype=bool)
        m[np.asarray(list(elements), dtype=np.int64)] = True
        return m

    @property
    def characteristic(self) -> int:
        if "char" not in self._cache:
            k, x = 1, self.one
            while x != 0:
                x = int(self.add[x, self.one])
                k += 1
            self._cache["char"] = k
        return self._cache["char"]

    @property
    def is_commutative(self) -> bool:
        if "comm" not in self._cache:
            self._cache["comm"] = bool(np.array_equal(self.mul, self.mul.T))
        return self._cache["comm"]


def check_ring_axioms(R: RingTable, budget: int = 1 << 24) -> None:
    """Verify the ring axioms; exhaustive when ``size**3 <= budget``, sampled otherwise."""
    n = R.size
    a_, m_ = R.add.astype(np.int64), R.mul.astype(np.int64)
    idx = np.arange(n)
    if a_.min() < 0 or a_.max() >= n or m_.min() < 0 or m_.max() >= n:
        raise InvalidRing("table entries out of range")
    if not np.array_equal(a_[0], idx) or not np.array_equal(a_[:, 0], idx):
        raise InvalidRing("index 0 must be the additive identity")
    if not np.array_equal(a_, a_.T):
        raise InvalidRing("addition is not commutative")
    if not np.all(a_[idx, R.neg] == 0):
        raise InvalidRing("missing additive inverses")
    if n > 1 and R.one == 0:
        raise InvalidRing("one must differ from zero")
    if not (np.array_equal(m_[R.one], idx) and np.array_equal(m_[:, R.one], idx)):
        raise InvalidRing("one is not a two-sided multiplicative identity")
    if n ** 3 <= budget:
        triples = (idx[:, None, None], idx[None, :, None], idx[None, None, :])
    else:
        rng = np.random.default_rng(0)
        s = budget // 4
        triples = tuple(rng.integers(0, n, s) for _ in range(3))
    a, b, c = triples
    checks = {
        "addition is not associative": (a_[a_[a, b], c], a_[a, a_[b, c]]),
        "multiplication is not associative": (m_[m_[a, b], c], m_[a, m_[b, c]]),
        "left distributivity fails": (m_[a, a_[b, c]], a_[m_[a, b], m_[a, c]]),
        "right distributivity fails": (m_[a_[a, b], c], a_[m_[a, c], m_[b, c]]),
    }
    for msg, (lhs, rhs) in checks.items():
        if not np.array_equal(lhs, rhs):
            raise InvalidRing(msg)


# ------------------------------------------------------------ constructors


def zmod(n: int) -> RingTable:
    if n < 1:
        raise ValueError("zmod needs n >= 1")
    idx = np.arange(n)
    return RingTable((idx[:, None] + idx[None, :]) % n, (idx[:, None] * idx[None, :]) % n,
                     1 % n, name=f"Z_{n}", modulus=n)


def _poly_mulmod(a, b, f, p):
    """Multiply coefficient lists (low degree first) modulo monic ``f``."""
    k = len(f) - 1
    prod = [0] * (2 * k - 1 if k else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for t in range(k + 1):
                prod[d - k + t] = (prod[d - k + t] - c * f[t]) % p
    return prod[:k]


def _has_root_or_factor(f, p) -> bool:
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            # polynomial remainder of f by monic g
            r = list(f)
            for top in range(k, d - 1, -1):
                c = r[top]
                if c:
                    for t in range(d + 1):
                        r[top - d + t] = (r[top - d + t] - c * g[t]) % p
            if not any(r[:d]):
                return True
    return False


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``k`` over F_p.

    Coefficients are listed low degree first and compared in that order.
    """
    for low in itertools.product(range(p), repeat=k):
        f = list(low) + [1]
        if k == 1 or (f[0] != 0 and not _has_root_or_factor(f, p)):
            return tuple(f)
    raise AssertionError("an irreducible polynomial always exists")


def galois_field(p: int, k: int = 1) -> RingTable:
    if not is_prime(p) or k < 1:
        raise ValueError(f"galois_field needs prime p and k >= 1, got ({p}, {k})")
    if k == 1:
        R = zmod(p)
        R.name = f"F_{p}"
        return R
    f = least_irreducible(p, k)
    q = p ** k
    vecs = [[(x // p ** i) % p for i in range(k)] for x in range(q)]
    weights = [p ** i for i in range(k)]

    def enc(v):
        return sum(c * w for c, w in zip(v, weights))

    add = np.array([[enc([(a + b) % p for a, b in zip(u, v)]) for v in vecs] for u in vecs])
    mul = np.array([[enc(_poly_mulmod(u, v, f, p)) for v in vecs] for u in vecs])

    def label(x):
        v = vecs[x]
        terms = []
        for i in range(k - 1, -1, -1):
            c = v[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            coef = "" if (c == 1 and i > 0) else str(c)
            terms.append(coef + mono)
        return "+".join(terms) or "0"

    return RingTable(add, mul, 1, labels=label, name=f"F_{q}")


def product_ring(factors: list[RingTable]) -> RingTable:
    """Direct product; the first factor is the least significant mixed-radix digit."""
    sizes = [R.size for R in factors]
    n = math.prod(sizes)
    idx = np.arange(n)
    digits, rest = [], idx.copy()
    for s in sizes:
        digits.append(rest % s)
        rest //= s
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    radix, one = 1, 0
    for R, d in zip(factors, digits):
        add += R.add[d[:, None], d[None, :]].astype(np.int64) * radix
        mul += R.mul[d[:, None], d[None, :]].astype(np.int64) * radix
        one += R.one * radix
        radix *= R.size

    def label(x):
        return "(" + ", ".join(R.label(int(d[x])) for R, d in zip(factors, digits)) + ")"

    return RingTable(add, mul, one, labels=label, name=" x ".join(R.name for R in factors))


# ----------------------------------------------------------------- units


def units_mask(R: RingTable) -> np.ndarray:
    if "units" not in R._cache:
        hits = R.mul == R.one
        right = hits.any(axis=1)  # x has y with xy = 1
        left = hits.any(axis=0)   # x has y with yx = 1
        if not np.array_equal(left, right):
            raise InternalConsistencyError("one-sided unit found in a finite ring")
        inv = np.where(right, np.argmax(hits, axis=1), -1)
        for x in np.flatnonzero(right):
            y = inv[x]
            if R.mul[y, x] != R.one:
                raise InternalConsistencyError(f"right inverse of {x} is not a left inverse")
        R._cache["units"] = right
        R._cache["unit_inverse"] = inv
    return R._cache["units"]


def units(R: RingTable) -> list[int]:
    return [int(x) for x in np.flatnonzero(units_mask(R))]


def unit_inverse(R: RingTable, x: int) -> int:
    units_mask(R)
    y = int(R._cache["unit_inverse"][x])
    if y < 0:
        raise ValueError(f"{R.label(x)} is not a unit")
    return y


def is_unit(R: RingTable, x: int) -> bool:
    return bool(units_mask(R)[x])


def n_one(R: RingTable, n: int) -> int:
    return R.times(R.one, n)


def is_n_one_unit(R: RingTable, n: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    return is_unit(R, n_one(R, n))


def is_division_ring(R: RingTable) -> bool:
    return R.size > 1 and int(units_mask(R).sum()) == R.size - 1


# ------------------------------------------------ idempotents and center


def idempotents_mask(R: RingTable) -> np.ndarray:
    return np.diagonal(R.mul) == np.arange(R.size)


def idempotents(R: RingTable) -> list[int]:
    return [int(x) for x in np.flatnonzero(idempotents_mask(R))]


def center_mask(R: RingTable) -> np.ndarray:
    if "center" not in R._cache:
        out = np.ones(R.size, dtype=bool)
        for s in range(0, R.size, _CHUNK):
            block = R.mul[s:s + _CHUNK]
            out &= (block == R.mul[:, s:s + _CHUNK].T).all(axis=0)
        R._cache["center"] = out
    return R._cache["center"]


def center(R: RingTable) -> list[int]:
    return [int(x) for x in np.flatnonzero(center_mask(R))]


def non_central_idempotents(R: RingTable) -> list[int]:
    return [int(x) for x in np.flatnonzero(idempotents_mask(R) & ~center_mask(R))]


def is_abelian_ring(R: RingTable) -> bool:
    return not np.any(idempotents_mask(R) & ~center_mask(R))


# ------------------------------------------------------------------ ideals


@dataclass(eq=False)
class IdealRef:
    """A one- or two-sided ideal as a membership mask."""

    members: np.ndarray
    sidedness: str = TWO_SIDED
    generators: tuple = field(default=())

    @property
    def size(self) -> int:
        return int(self.members.sum())

    @property
    def elements(self) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.members)]

    @property
    def key(self) -> bytes:
        return np.packbits(self.members).tobytes()

    def __contains__(self, x: int) -> bool:
        return bool(self.members[x])

    def __eq__(self, other) -> bool:
        return isinstance(other, IdealRef) and np.array_equal(self.members, other.members)

    def __hash__(self) -> int:
        return hash(self.key)

    def is_zero(self) -> bool:
        return self.size == 1

    def is_whole(self) -> bool:
        return bool(self.members.all())

    def issubset(self, other: "IdealRef") -> bool:
        return not np.any(self.members & ~other.members)


def additive_span(R: RingTable, elements, start: np.ndarray | None = None) -> np.ndarray:
    """Mask of the additive subgroup generated by ``elements`` (and ``start``).

    ``start`` must already be an additive subgroup.  Each missing generator is
    adjoined coset by coset, so the cost is linear in the result size.
    """
    S = np.zeros(R.size, dtype=bool) if start is None else start.copy()
    S[0] = True
    gens = np.unique(np.asarray(elements, dtype=np.int64).ravel())
    members = np.flatnonzero(S)
    add = R.add
    while True:
        missing = gens[~S[gens]]
        if missing.size == 0:
            return S
        g = int(missing[0])
        blocks = [members]
        cur = g
        while not S[cur]:
            blocks.append(add[members, cur].astype(np.int64))
            cur = int(add[cur, g])
        members = np.concatenate(blocks)
        S[members] = True


def check_ideal(R: RingTable, mask: np.ndarray, side: str) -> bool:
    """Additive subgroup that absorbs multiplication on the declared side(s)."""
    el = np.flatnonzero(mask)
    if not mask[0] or not mask[R.add[np.ix_(el, el)]].all() or not mask[R.neg[el]].all():
        return False
    if side in (LEFT, TWO_SIDED) and not mask[R.mul[:, el]].all():
        return False
    if side in (RIGHT, TWO_SIDED) and not mask[R.mul[el, :]].all():
        return False
    return True


def zero_ideal(R: RingTable) -> IdealRef:
    m = np.zeros(R.size, dtype=bool)
    m[0] = True
    return IdealRef(m, TWO_SIDED, (0,))


def whole_ideal(R: RingTable) -> IdealRef:
    return IdealRef(np.ones(R.size, dtype=bool), TWO_SIDED, (R.one,))


def generated_ideal(R: RingTable, gens, side: str = TWO_SIDED) -> IdealRef:
    gens = [int(g) for g in gens]
    if not gens:
        return zero_ideal(R)
    g = np.asarray(gens, dtype=np.int64)
    if side == LEFT:
        products = R.mul[:, g]
    elif side == RIGHT:
        products = R.mul[g, :]
    else:
        left = R.mul[:, g].astype(np.int64)  # a*g
        products = np.unique(R.mul[np.unique(left)][:, :])  # (a*g)*b
    return IdealRef(additive_span(R, products), side, tuple(gens))


def ideal_sum(R: RingTable, I: IdealRef, J: IdealRef) -> IdealRef:
    side = I.sidedness if I.sidedness == J.sidedness else TWO_SIDED
    return IdealRef(additive_span(R, np.flatnonzero(J.members), I.members), side,
                    I.generators + J.generators)


def ideal_product(R: RingTable, I: IdealRef, J: IdealRef) -> IdealRef:
    """Additive span of all ``i*j``."""
    a = np.flatnonzero(I.members)
    b = np.flatnonzero(J.members)
    prods = np.unique(R.mul[np.ix_(a, b)])
    side = I.sidedness if I.sidedness == J.sidedness else TWO_SIDED
    return IdealRef(additive_span(R, prods), side)


def _principal_table(R: RingTable, side: str):
    """Distinct principal one-sided ideals, with their least generator, sorted by (size, generator)."""
    key = ("principal", side)
    if key in R._cache:
        return R._cache[key]
    n = R.size
    if side == TWO_SIDED:
        seen: dict[bytes, tuple[int, np.ndarray]] = {}
        for x in range(n):
            m = generated_ideal(R, [x], TWO_SIDED).members
            k = np.packbits(m).tobytes()
            if k not in seen:
                seen[k] = (x, m)
        gens = np.array([v[0] for v in seen.values()])
        masks = np.array([v[1] for v in seen.values()])
    else:
        B = np.zeros((n, n), dtype=bool)
        rows = np.arange(n)
        for s in range(0, n, _CHUNK):
            if side == LEFT:
                vals = R.mul[:, s:s + _CHUNK].T  # row x -> {a*x}
            else:
                vals = R.mul[s:s + _CHUNK, :]     # row x -> {x*a}
            r = rows[s:s + _CHUNK]
            B[np.repeat(r, n), vals.ravel().astype(np.int64)] = True
        packed = np.packbits(B, axis=1)
        _, first = np.unique(packed, axis=0, return_index=True)
        gens = np.sort(first)
        masks = B[gens]
    sizes = masks.sum(axis=1)
    order = np.lexsort((gens, sizes))
    gens, masks = gens[order], masks[order]
    lookup = {np.packbits(m).tobytes(): int(g) for g, m in zip(gens, masks)}
    R._cache[key] = (gens, masks, lookup)
    return R._cache[key]


def principal_ideals(R: RingTable, side: str = LEFT) -> list[IdealRef]:
    gens, masks, _ = _principal_table(R, side)
    return [IdealRef(m, side, (int(g),)) for g, m in zip(gens, masks)]


def is_principal(R: RingTable, I: IdealRef, side: str | None = None) -> int | None:
    """Least generator ``x`` with ``I = Rx`` (left), ``xR`` (right) or ``RxR``; else ``None``."""
    side = side or I.sidedness
    _, _, lookup = _principal_table(R, side)
    return lookup.get(I.key)


def all_one_sided_ideals(R: RingTable, side: str = LEFT,
                         cap: int = DEFAULT_LATTICE_CAP) -> list[IdealRef]:
    """Every left (right, two-sided) ideal, as the sum-closure of the principal ones.

    Every ideal is a finite sum of principal ideals, so closing the principal
    ideals under ``I + Rx`` reaches the whole lattice.  Sorted by (size, key).
    """
    key = ("lattice", side)
    if key in R._cache:
        return R._cache[key]
    principals = principal_ideals(R, side)
    found = {p.key: p for p in principals}
    if len(found) > cap:
        raise CapExceeded("ideal lattice size", len(found), cap)
    frontier = list(principals)
    while frontier:
        nxt = []
        for I in frontier:
            for P in principals:
                if P.issubset(I):
                    continue
                S = ideal_sum(R, I, P)
                S.sidedness = side
                k = S.key
                if k not in found:
                    found[k] = S
                    nxt.append(S)
                    if len(found) > cap:
                        raise CapExceeded("ideal lattice size", len(found), cap)
        frontier = nxt
    out = sorted(found.values(), key=lambda I: (I.size, I.key))
    for I in out:
        g = is_principal(R, I, side)
        I.generators = (g,) if g is not None else I.generators
    R._cache[key] = out
    return out


def all_two_sided_ideals(R: RingTable, cap: int = DEFAULT_LATTICE_CAP) -> list[IdealRef]:
    return all_one_sided_ideals(R, TWO_SIDED, cap)


class PIRResult(NamedTuple):
    is_pir: bool
    witness: IdealRef | None  # a non-principal ideal, when is_pir is False
    generators: tuple = ()    # two principal generators whose sum is the witness


def is_pir(R: RingTable, side: str = LEFT) -> PIRResult:
    """Is every ``side`` ideal principal?

    By induction on the number of summands, it suffices that ``Rx + Ry`` is
    principal for all pairs of distinct principal ideals; the first failing
    pair in (size, generator) order is the witness.
    """
    key = ("pir", side)
    if key in R._cache:
        return R._cache[key]
    gens, masks, lookup = _principal_table(R, side)
    result = PIRResult(True, None)
    count = len(gens)
    for j in range(count):
        mj = masks[j]
        for i in range(j):
            mi = masks[i]
            if not np.any(mi & ~mj) or not np.any(mj & ~mi):
                continue
            s = additive_span(R, np.flatnonzero(mj), mi)
            if np.packbits(s).tobytes() not in lookup:
                result = PIRResult(False, IdealRef(s, side, (int(gens[i]), int(gens[j]))),
                                   (int(gens[i]), int(gens[j])))
                break
        if not result.is_pir:
            break
    R._cache[key] = result
    return result


# ---------------------------------------------------------------- radical


def jacobson_radical(R: RingTable) -> IdealRef:
    """``J(R) = {x : 1 - a x is a unit for every a}`` as a two-sided ideal."""
    if "radical" not in R._cache:
        U = units_mask(R)
        one_minus = R.add[R.one, R.neg].astype(np.int64)  # y -> 1 - y
        acc = np.ones(R.size, dtype=bool)
        for s in range(0, R.size, _CHUNK):
            acc &= U[one_minus[R.mul[s:s + _CHUNK]]].all(axis=0)
        if not check_ideal(R, acc, TWO_SIDED):
            raise InternalConsistencyError("computed radical is not a two-sided ideal")
        R._cache["radical"] = IdealRef(acc, TWO_SIDED)
    return R._cache["radical"]


def ideal_powers(R: RingTable, I: IdealRef, limit: int | None = None) -> list[IdealRef]:
    """``[I, I^2, ...]`` until the sequence stabilizes (or ``limit`` terms)."""
    out = [I]
    while limit is None or len(out) < limit:
        nxt = ideal_product(R, out[-1], I)
        nxt.sidedness = I.sidedness
        if nxt == out[-1]:
            break
        out.append(nxt)
    return out


def nilpotency_index(R: RingTable, I: IdealRef) -> int | None:
    """Least ``k`` with ``I^k = 0`` (``1`` for the zero ideal); ``None`` if not nilpotent."""
    if I.is_zero():
        return 1
    powers = ideal_powers(R, I)
    if powers[-1].is_zero():
        return len(powers)
    return None


def radical_nilpotency_index(R: RingTable) -> int:
    k = nilpotency_index(R, jacobson_radical(R))
    if k is None:
        raise InternalConsistencyError("Jacobson radical of a finite ring must be nilpotent")
    return k


def is_semiprimitive(R: RingTable) -> bool:
    return jacobson_radical(R).is_zero()


def is_local(R: RingTable) -> IdealRef | None:
    """``J(R)`` when ``R/J(R)`` is a division ring, else ``None``."""
    if R.size == 1:
        return None
    J = jacobson_radical(R)
    # units lift modulo J, so R/J is a division ring iff every x outside J is a unit
    if np.all(units_mask(R) | J.members):
        return J
    return None


# ---------------------------------------------------------------- quotient


def quotient_ring(R: RingTable, I: IdealRef) -> tuple[RingTable, np.ndarray]:
    """``R/I`` with cosets ordered by least representative, plus the projection array."""
    if not check_ideal(R, I.members, TWO_SIDED):
        raise ValueError("quotient_ring needs a two-sided ideal")
    if I.is_whole() and R.size > 1:
        raise ValueError("quotient_ring needs a proper ideal")
    members = np.flatnonzero(I.members)
    rep_of = np.full(R.size, R.size, dtype=np.int64)
    for s in range(0, len(members), _CHUNK):
        rep_of = np.minimum(rep_of, R.add[:, members[s:s + _CHUNK]].min(axis=1))
    reps = np.unique(rep_of)
    proj = np.searchsorted(reps, rep_of)
    add = proj[R.add[np.ix_(reps, reps)]]
    mul = proj[R.mul[np.ix_(reps, reps)]]
    one = int(proj[R.one])
    labels = [f"[{R.label(int(r))}]" for r in reps]
    modulus = None
    if R.modulus is not None and len(reps) > 0 and R.modulus % len(reps) == 0:
        modulus = len(reps)  # Z_n / (d) = Z_d with identical indexing
    Q = RingTable(add, mul, one, labels=labels, name=f"{R.name}/I", modulus=modulus)
    return Q, proj


def project_ideal(I: IdealRef, proj: np.ndarray, quotient_size: int) -> IdealRef:
    m = np.zeros(quotient_size, dtype=bool)
    m[np.unique(proj[I.members])] = True
    return IdealRef(m, I.sidedness)


# ---------------------------------------------------- central idempotents


def central_idempotents(R: RingTable) -> list[int]:
    return [int(x) for x in np.flatnonzero(idempotents_mask(R) & center_mask(R))]


def central_idempotent_atoms(R: RingTable) -> list[int]:
    """Atoms of the boolean algebra of central idempotents (centrally primitive idempotents)."""
    if R.size == 1:
        return []
    cents = central_idempotents(R)
    atoms = []
    for e in cents:
        if e == 0:
            continue
        if all(int(R.mul[e, f]) in (0, e) for f in cents):
            atoms.append(e)
    total = 0
    for i, e in enumerate(atoms):
        total = int(R.add[total, e])
        for f in atoms[i + 1:]:
            if R.mul[e, f] != 0:
                raise InternalConsistencyError("central idempotent atoms are not orthogonal")
    if total != R.one:
        raise InternalConsistencyError("central idempotent atoms do not sum to one")
    return atoms


# ----------------------------------------------------- local decomposition


def corner_ring(R: RingTable, e: int) -> tuple[RingTable, np.ndarray]:
    """``eR`` for a central idempotent ``e``, with identity ``e``; returns (ring, elements)."""
    elems = np.unique(R.mul[e]).astype(np.int64)
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    add = pos[R.add[np.ix_(elems, elems)]]
    mul = pos[R.mul[np.ix_(elems, elems)]]
    labels = [R.label(int(x)) for x in elems]
    return RingTable(add, mul, int(pos[e]), labels=labels, name=f"{R.name}*{R.label(e)}"), elems


@dataclass
class LocalFactor:
    factor: RingTable
    max_ideal: IdealRef
    residue_char: int
    semiprimitive: bool
    idempotent: int          # the atom e with factor = eR
    elements: np.ndarray     # indices in the parent ring


def decompose_into_local(R: RingTable) -> list[LocalFactor]:
    """Split an abelian ring as ``prod e_i R`` over its centrally primitive idempotents."""
    bad = non_central_idempotents(R)
    if bad:
        raise NotAbelianError(bad[0], R.label(bad[0]))
    out = []
    for e in central_idempotent_atoms(R):
        F, elems = corner_ring(R, e)
        M = is_local(F)
        if M is None:
            raise InternalConsistencyError(f"Peirce factor {R.label(e)}R is not local")
        Q, _ = quotient_ring(F, M)
        p = Q.characteristic
        if not is_prime(p):
            raise InternalConsistencyError("residue division ring has non-prime characteristic")
        out.append(LocalFactor(F, M, p, M.is_zero(), e, elems))
    return out


def verify_decomposition(R: RingTable, factors: list[LocalFactor]) -> bool:
    """``x -> (e_i x)_i`` is a ring isomorphism onto the product of the factors."""
    n = R.size
    idx = np.arange(n)
    if math.prod(f.factor.size for f in factors) != n:
        return False
    total = np.zeros(n, dtype=np.int64)
    for f in factors:
        total = R.add[total, R.mul[f.idempotent, idx]].astype(np.int64)
    if not np.array_equal(total, idx):
        return False
    # e_i is central idempotent, so x -> e_i x is multiplicative and additive
    for f in factors:
        ex = R.mul[f.idempotent].astype(np.int64)
        if not np.array_equal(ex[R.mul[f.idempotent]], ex):
            return False
    return True


def is_kothe_abelian_oracle(R: RingTable) -> bool:
    """For abelian rings: Köthe iff artinian principal ideal ring (finite rings are artinian)."""
    bad = non_central_idempotents(R)
    if bad:
        raise NotAbelianError(bad[0], R.label(bad[0]))
    left = is_pir(R, LEFT).is_pir
    right = is_pir(R, RIGHT).is_pir
    if left != right:
        raise InternalConsistencyError("left and right PIR disagree on an abelian ring")
    return left


# -------------------------------------------------------- idempotent lift


class IdempotentLift(NamedTuple):
    element: int
    iterations: int


def lift_idempotent(R: RingTable, I: IdealRef, ebar: int,
                    quotient: tuple[RingTable, np.ndarray] | None = None) -> IdempotentLift:
    """Lift the idempotent ``ebar`` of ``R/I`` to ``R`` via ``x -> 3x^2 - 2x^3``.

    ``ebar`` indexes ``quotient_ring(R, I)`` (or the supplied ``quotient``).
    The start is the least preimage.  Each step squares the power of ``I``
    containing ``x^2 - x``, so at most ``ceil(log2(index))`` steps are needed.
    """
    index = nilpotency_index(R, I)
    if index is None:
        raise ValueError("lift_idempotent needs a nilpotent ideal")
    Q, proj = quotient if quotient is not None else quotient_ring(R, I)
    if Q.mul[ebar, ebar] != ebar:
        raise ValueError("ebar is not idempotent in R/I")
    x = int(np.flatnonzero(proj == ebar)[0])
    steps = 0
    bound = math.ceil(math.log2(index)) if index > 1 else 0
    while R.mul[x, x] != x:
        x2 = int(R.mul[x, x])
        x3 = int(R.mul[x2, x])
        x = R.sub(R.times(x2, 3), R.times(x3, 2))
        steps += 1
        if steps > bound:
            raise InternalConsistencyError("idempotent lifting did not converge within its bound")
    if proj[x] != ebar:
        raise InternalConsistencyError("lifted idempotent projects to the wrong class")
    return IdempotentLift(x, steps)
