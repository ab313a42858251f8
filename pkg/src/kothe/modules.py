"""Finite modules as tables, the Maschke averaging operator, bounded purity checks.

A module over a materialized ring ``S`` is an additive table on
``{0, .., n-1}`` (zero at index 0) plus an action table ``act[s, m] = s*m``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from kothe.descriptors import DEFAULT_CAP, CapExceeded
from kothe.group_ring import augmentation_map, group_element
from kothe.rings import RingTable, is_n_one_unit, n_one, unit_inverse

COEFFICIENT = "coefficient"
GROUP_RING = "group_ring"


class InvalidModule(ValueError):
    pass


class FiniteModule:
    def __init__(self, ring: RingTable, add, action, *, labels=None, name: str = "",
                 validate: bool = True, budget: int = 1 << 22):
        self.ring = ring
        self.add = np.asarray(add)
        self.action = np.asarray(action)
        self.size = self.add.shape[0]
        self.labels = labels
        self.name = name or f"module of size {self.size} over {ring.name}"
        if self.add.shape != (self.size, self.size) or self.action.shape != (ring.size, self.size):
            raise InvalidModule("table shapes do not match")
        self.neg = np.argmin(self.add, axis=1)  # 0 is the least index; verified by the axiom check
        if validate:
            check_module_axioms(self, budget)

    def __repr__(self) -> str:
        return f"<FiniteModule {self.name}>"

    def label(self, m: int) -> str:
        return self.labels[m] if self.labels is not None else str(m)

    def act(self, s: int, m: int) -> int:
        return int(self.action[s, m])


def check_module_axioms(M: FiniteModule, budget: int = 1 << 22) -> None:
    """Exhaustive when ``|S| * |M|**2`` fits the budget, seeded sampling otherwise."""
    n, S = M.size, M.ring
    a, act = M.add, M.action
    idx = np.arange(n)
    if a.min() < 0 or a.max() >= n or act.min() < 0 or act.max() >= n:
        raise InvalidModule("table entry out of range")
    if not (np.array_equal(a[0], idx) and np.array_equal(a, a.T)):
        raise InvalidModule("addition is not commutative with identity 0")
    if not np.array_equal(a[idx, M.neg], np.zeros(n, dtype=a.dtype)):
        raise InvalidModule("an element has no additive inverse")
    if not np.array_equal(act[S.one], idx):
        raise InvalidModule("the identity does not act trivially")
    if n ** 3 <= budget:
        # (x + y) + z == x + (y + z)
        if not np.array_equal(a[a[:, :, None], idx[None, None, :]], a[idx[:, None, None], a[None, :, :]]):
            raise InvalidModule("addition is not associative")
    rng = np.random.default_rng(0)
    exhaustive = S.size * n * n <= budget
    if exhaustive:
        r, x, y = (g.ravel() for g in np.meshgrid(np.arange(S.size), idx, idx, indexing="ij"))
        s = r
    else:
        k = budget // 4
        r, s = rng.integers(0, S.size, k), rng.integers(0, S.size, k)
        x, y = rng.integers(0, n, k), rng.integers(0, n, k)
    if not np.array_equal(act[r, a[x, y]], a[act[r, x], act[r, y]]):
        raise InvalidModule("action does not distribute over module addition")
    if exhaustive:
        r, s, x = (g.ravel() for g in np.meshgrid(np.arange(S.size), np.arange(S.size), idx, indexing="ij"))
    if not np.array_equal(act[S.add[r, s], x], a[act[r, x], act[s, x]]):
        raise InvalidModule("action does not distribute over ring addition")
    if not np.array_equal(act[S.mul[r, s], x], act[r, act[s, x]]):
        raise InvalidModule("action is not associative")


# ------------------------------------------------------------ constructors


def regular_module(S: RingTable) -> FiniteModule:
    return FiniteModule(S, S.add, S.mul, labels=[S.label(x) for x in range(S.size)],
                        name=f"{S.name} (regular)", validate=False)


def zero_module(S: RingTable) -> FiniteModule:
    return FiniteModule(S, np.zeros((1, 1), dtype=np.int64), np.zeros((S.size, 1), dtype=np.int64),
                        labels=["0"], name="0", validate=False)


def trivial_module(RG: RingTable) -> FiniteModule:
    """The coefficient ring ``R`` with every group element acting as the identity."""
    R = RG.basis.ring if RG.basis is not None else None
    if R is None:
        raise InvalidModule(f"{RG.name} carries no group-ring basis metadata")
    aug = augmentation_map(RG)
    return FiniteModule(RG, R.add, R.mul[aug], labels=[R.label(x) for x in range(R.size)],
                        name=f"{R.name} (trivial {RG.basis.group.name}-action)")


def is_submodule(M: FiniteModule, mask: np.ndarray, scalars: np.ndarray | None = None) -> bool:
    mask = np.asarray(mask, dtype=bool)
    if not mask[0]:
        return False
    P = np.flatnonzero(mask)
    scalars = np.arange(M.ring.size) if scalars is None else scalars
    return bool(mask[M.add[np.ix_(P, P)]].all() and mask[M.action[np.ix_(scalars, P)]].all())


def generated_submodule(M: FiniteModule, gens, scalars: np.ndarray | None = None) -> np.ndarray:
    """Mask of the submodule generated by ``gens`` (over ``scalars``, default the whole ring)."""
    scalars = np.arange(M.ring.size) if scalars is None else np.asarray(scalars)
    mask = np.zeros(M.size, dtype=bool)
    mask[0] = True
    for g in gens:
        cyclic = np.unique(M.action[scalars, int(g)])
        members = np.flatnonzero(mask)
        mask[np.unique(M.add[np.ix_(members, cyclic)])] = True
    return mask


def quotient_module(M: FiniteModule, mask: np.ndarray) -> tuple[FiniteModule, np.ndarray]:
    """``M/P`` with cosets ordered by least representative, plus the projection."""
    mask = np.asarray(mask, dtype=bool)
    if not is_submodule(M, mask):
        raise InvalidModule("not a submodule")
    P = np.flatnonzero(mask)
    rep_of = M.add[:, P].min(axis=1)
    reps = np.unique(rep_of)
    proj = np.searchsorted(reps, rep_of)
    add = proj[M.add[np.ix_(reps, reps)]]
    action = proj[M.action[:, reps]]
    labels = [M.label(int(r)) + " + P" for r in reps]
    Q = FiniteModule(M.ring, add, action, labels=labels, name=f"{M.name}/P", validate=False)
    return Q, proj


def coefficient_scalars(S: RingTable) -> np.ndarray:
    """Indices of ``r*e`` for a group ring, or the whole ring otherwise."""
    if S.basis is None:
        return np.arange(S.size)
    return np.arange(S.basis.ring.size)


def restrict_scalars(M: FiniteModule) -> FiniteModule:
    """View an ``R[G]``-module as an ``R``-module along ``r -> r*e``."""
    S = M.ring
    if S.basis is None:
        raise InvalidModule(f"{S.name} carries no group-ring basis metadata")
    R = S.basis.ring
    return FiniteModule(R, M.add, M.action[coefficient_scalars(S)], labels=M.labels,
                        name=f"{M.name} restricted to {R.name}", validate=False)


# ---------------------------------------------------------------- homs


@dataclass
class ModuleHom:
    source: FiniteModule
    target: FiniteModule
    table: np.ndarray
    linearity: str = GROUP_RING

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64)
        if self.linearity not in (COEFFICIENT, GROUP_RING):
            raise ValueError(f"unknown linearity {self.linearity!r}")
        if self.table.shape != (self.source.size,):
            raise ValueError("map table must have one entry per source element")

    def __call__(self, m: int) -> int:
        return int(self.table[m])

    def scalars(self) -> np.ndarray:
        S = self.source.ring
        return coefficient_scalars(S) if self.linearity == COEFFICIENT else np.arange(S.size)

    def compose(self, other: "ModuleHom") -> np.ndarray:
        """Table of ``self o other``."""
        return self.table[other.table]


def is_linear(f: ModuleHom, scalars: np.ndarray | None = None) -> bool:
    A, B, t = f.source, f.target, f.table
    if t[0] != 0 or not np.array_equal(t[A.add], B.add[np.ix_(t, t)]):
        return False
    scalars = f.scalars() if scalars is None else scalars
    return bool(np.array_equal(t[A.action[scalars]], B.action[scalars][:, t]))


def is_surjective(f: ModuleHom) -> bool:
    return len(np.unique(f.table)) == f.target.size


def is_section(psi: ModuleHom, phi: ModuleHom) -> bool:
    return bool(np.array_equal(psi.compose(phi), np.arange(psi.target.size)))


def identity_hom(M: FiniteModule, linearity: str = GROUP_RING) -> ModuleHom:
    return ModuleHom(M, M, np.arange(M.size), linearity)


# ------------------------------------------------------------- averaging


class AveragingError(ValueError):
    pass


def _average(psi: ModuleHom, phit: ModuleHom, order) -> np.ndarray:
    L, M = psi.source, psi.target
    S = L.ring
    G = S.basis.group
    total = np.zeros(M.size, dtype=np.int64)
    ms = np.arange(M.size)
    for g in order:
        gi = group_element(S, int(g))
        ginv = group_element(S, int(G.inverse[g]))
        term = L.action[ginv, phit.table[M.action[gi, ms]]]
        total = L.add[total, term].astype(np.int64)
    return total


def average_section(psi: ModuleHom, phit: ModuleHom) -> ModuleHom:
    """Turn a coefficient-linear section of ``psi`` into a group-ring-linear one.

    ``phi(m) = u * sum_g g^-1 * phit(g*m)`` with ``u`` the inverse of ``|G|*1``.
    The sum is evaluated in two orders and both postconditions are verified.
    """
    L, M = psi.source, psi.target
    S = L.ring
    if S.basis is None:
        raise AveragingError(f"{S.name} carries no group-ring basis metadata")
    R, G = S.basis.ring, S.basis.group
    if not is_n_one_unit(R, G.order):
        raise AveragingError(f"|G|*1 = {R.label(n_one(R, G.order))} is not a unit of {R.name}")
    if phit.source is not M or phit.target is not L:
        raise AveragingError("phit must map the target of psi back to its source")
    if not is_section(psi, phit):
        raise AveragingError("phit is not a section of psi")
    if not is_linear(phit, coefficient_scalars(S)):
        raise AveragingError("phit is not coefficient-linear")
    forward = _average(psi, phit, range(G.order))
    backward = _average(psi, phit, reversed(range(G.order)))
    if not np.array_equal(forward, backward):
        raise AveragingError("sum depends on the order over G")
    u = unit_inverse(R, n_one(R, G.order))  # r*e has index r
    phi = ModuleHom(M, L, L.action[u, forward], GROUP_RING)
    if not is_linear(phi):
        raise AveragingError("averaged map is not group-ring linear")
    if not is_section(psi, phi):
        raise AveragingError("averaged map is not a section")
    return phi


# -------------------------------------------------------- section search


def _spanning_set(M: FiniteModule, scalars: np.ndarray) -> list[int]:
    gens: list[int] = []
    span = generated_submodule(M, [], scalars)
    for m in range(M.size):
        if not span[m]:
            gens.append(m)
            span = generated_submodule(M, gens, scalars)
    return gens


def _extend(M: FiniteModule, L: FiniteModule, scalars, domain: np.ndarray, image: np.ndarray,
            m: int, l: int):
    """Extend a linear map on the submodule ``domain`` by ``m -> l``; None if inconsistent."""
    D = np.flatnonzero(domain)
    mv = M.add[D[:, None], M.action[scalars, m][None, :]].ravel()
    lv = L.add[image[D][:, None], L.action[scalars, l][None, :]].ravel()
    order = np.argsort(mv, kind="stable")
    mv, lv = mv[order], lv[order]
    first = np.r_[True, mv[1:] != mv[:-1]]
    starts = np.flatnonzero(first)
    if not np.array_equal(lv, np.repeat(lv[starts], np.diff(np.r_[starts, len(mv)]))):
        return None
    new_domain = np.zeros(M.size, dtype=bool)
    new_domain[mv[starts]] = True
    new_image = image.copy()
    new_image[mv[starts]] = lv[starts]
    return new_domain, new_image


def find_coefficient_section(psi: ModuleHom, cap: int = DEFAULT_CAP,
                             linearity: str = COEFFICIENT) -> ModuleHom | None:
    """Search the linear maps ``s: M -> L`` with ``psi o s = id``.

    Images are chosen generator by generator from the fibres of ``psi``, with
    consistency checked as the domain grows, so each candidate costs one
    submodule extension.  Raises :class:`CapExceeded` once ``cap`` candidate
    images have been tried without a conclusion.
    """
    L, M = psi.source, psi.target
    if not is_surjective(psi):
        raise ValueError("psi is not surjective")
    S = L.ring
    scalars = coefficient_scalars(S) if linearity == COEFFICIENT else np.arange(S.size)
    gens = _spanning_set(M, scalars)
    fibres = [np.flatnonzero(psi.table == m) for m in gens]
    tried = 0

    def search(i, domain, image):
        nonlocal tried
        if i == len(gens):
            return image
        for l in fibres[i]:
            tried += 1
            if tried > cap:
                raise CapExceeded("section candidates", tried, cap)
            ext = _extend(M, L, scalars, domain, image, gens[i], int(l))
            if ext is not None:
                found = search(i + 1, *ext)
                if found is not None:
                    return found
        return None

    domain = np.zeros(M.size, dtype=bool)
    domain[0] = True
    table = search(0, domain, np.zeros(M.size, dtype=np.int64))
    if table is None:
        return None
    s = ModuleHom(M, L, table, linearity)
    assert is_linear(s, scalars) and is_section(psi, s)
    return s


# ---------------------------------------------------------------- purity


@dataclass(frozen=True)
class PurityViolation:
    matrix: tuple[tuple[int, ...], ...]  # ring-element indices, row-major
    rhs: tuple[int, ...]                 # lies in P
    solution: tuple[int, ...]            # lies in M, no solution in P exists


@dataclass(frozen=True)
class PurityResult:
    violation: PurityViolation | None
    max_rows: int
    max_cols: int

    @property
    def no_violation_found(self) -> bool:
        return self.violation is None

    @property
    def note(self) -> str:
        if self.violation is None:
            return (f"no violation among systems of at most {self.max_rows} equations in "
                    f"{self.max_cols} unknowns; this bounds the search and does not certify purity")
        return "P is not pure in M"


def bounded_purity_check(M: FiniteModule, mask: np.ndarray, max_rows: int = 1, max_cols: int = 1,
                         cap: int = 1 << 24) -> PurityResult:
    """Look for a system ``A x = b`` (b in P) solvable in ``M`` but not in ``P``."""
    mask = np.asarray(mask, dtype=bool)
    if not is_submodule(M, mask):
        raise InvalidModule("not a submodule")
    S = M.ring
    for n in range(1, max_cols + 1):
        X = np.array(list(itertools.product(range(M.size), repeat=n)), dtype=np.int64).reshape(-1, n)
        inP = mask[X].all(axis=1)
        rows = list(itertools.product(range(S.size), repeat=n))
        for m in range(1, max_rows + 1):
            work = len(rows) ** m * len(X)
            if work > cap:
                raise CapExceeded("purity check work", work, cap)
        # value of each row vector a on each x: sum_j a_j x_j
        values = np.zeros((len(rows), len(X)), dtype=np.int64)
        for k, a in enumerate(rows):
            acc = np.zeros(len(X), dtype=np.int64)
            for j, s in enumerate(a):
                acc = M.add[acc, M.action[s, X[:, j]]]
            values[k] = acc
        for m in range(1, max_rows + 1):
            for choice in itertools.product(range(len(rows)), repeat=m):
                V = values[list(choice)]  # m x |X|
                in_rhs = mask[V].all(axis=0)
                inside = {tuple(col) for col in V[:, inP].T}
                for xi in np.flatnonzero(in_rhs & ~inP):
                    b = tuple(int(v) for v in V[:, xi])
                    if b not in inside:
                        A = tuple(rows[c] for c in choice)
                        return PurityResult(PurityViolation(A, b, tuple(int(v) for v in X[xi])),
                                            max_rows, max_cols)
    return PurityResult(None, max_rows, max_cols)
