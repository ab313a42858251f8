"""Rule engine deciding whether R[G] is a Köthe ring / pure semisimple.

Each rule checks its hypotheses with the exhaustive oracles (or, for facts
too large to compute, an explicit user assumption) and either concludes or
passes.  The first decisive rule fixes the answer; every rule that was
evaluated stays in the trace.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from kothe.descriptors import (
    DEFAULT_CAP,
    DEFAULT_GROUP_CAP,
    DEFAULT_LATTICE_CAP,
    SCHEMA_VERSION,
    CapExceeded,
    GroupDescriptor,
    GroupRingOf,
    RingDescriptor,
    describe_group,
    describe_ring,
    is_non_artinian,
)
from kothe.group_ring import build_group_ring, is_r_admissible
from kothe.groups import (
    GroupTable,
    SubgroupRef,
    describe_subgroup,
    is_dedekind,
    is_lagrangian,
    is_p_group,
    materialize_group,
    normal_subgroups,
    p_prime_by_cyclic_p_witness,
    quotient_group,
    subgroup_table,
    subgroups,
)
from kothe.materialize import materialize_ring
from kothe.rings import (
    LEFT,
    RIGHT,
    IdealRef,
    RingTable,
    all_two_sided_ideals,
    decompose_into_local,
    is_abelian_ring,
    is_division_ring,
    is_kothe_abelian_oracle,
    is_local,
    is_n_one_unit,
    is_pir,
    is_semiprimitive,
    n_one,
    non_central_idempotents,
    quotient_ring,
)


class Answer(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Citation:
    label: str
    statement: str


CITATIONS = {c.label: c for c in [
    Citation("Thm-Kothe", "An artinian principal ideal ring is a Köthe ring."),
    Citation("Thm-KCP", "A commutative ring is Köthe iff it is an artinian principal ideal ring."),
    Citation("Thm-Behboodi", "A ring whose idempotents are all central is Köthe iff it is an "
                             "artinian principal ideal ring."),
    Citation("Thm-Connell", "R[G] is left (right) artinian iff R is left (right) artinian and "
                            "G is finite."),
    Citation("Prop-FaithWalker", "A left (right) pure semisimple ring is left (right) artinian."),
    Citation("Prop-KoetheNec", "If R[G] is Köthe (pure semisimple), so is (R/I)[G/N] for every "
                               "proper ideal I of R and normal subgroup N of G; R is then "
                               "artinian and G finite."),
    Citation("Maschke", "If R is semisimple and |G|*1 is a unit of R, R[G] is semisimple; "
                        "semisimple rings are artinian principal ideal rings."),
    Citation("Thm-Passman", "For a division ring K of characteristic p > 0 and finite G, K[G] is a "
                            "left (equivalently right) principal ideal ring iff G is "
                            "p'-by-cyclic-p."),
    Citation("Thm-DorseyFinite", "For a local artinian principal ideal ring (R, M) with "
                                 "char(R/M) = p > 0 and finite G, R[G] is a principal ideal ring "
                                 "iff G is p'-by-cyclic-p and, when R is not a division ring, "
                                 "G is R-admissible."),
    Citation("Lem-pgroup", "If (R, M) is a local artinian principal ideal ring, not a division "
                           "ring, with char(R/M) = p, and R[G] is a principal ideal ring, then G "
                           "is not a nontrivial p-group."),
    Citation("Thm-MainThmA", "If R[G] is abelian, it is Köthe iff R is a finite product of local "
                             "rings R_i and is Köthe, G is finite and p'-by-cyclic-p for every "
                             "residue characteristic p of the R_i, and |G|*1 is a unit of every "
                             "R_i that is not semiprimitive."),
    Citation("Cor-MainThmComm", "For commutative R and abelian G: R[G] is Köthe iff R is Köthe, "
                                "G is finite and p'-by-cyclic-p for every p = char(R/M), M "
                                "maximal, and |G|*1 is a unit of every non-semiprimitive local "
                                "factor of R."),
    Citation("Thm-localcase", "For local R with R[G] abelian: R[G] is Köthe iff R is Köthe, G is "
                              "finite p'-by-cyclic-p (p = char(R/M) > 0), and |G|*1 is a unit "
                              "when R is not a division ring."),
    Citation("Thm-divPrime", "For a division ring of characteristic p > 0 and a finite lagrangian "
                             "Dedekind group G, R[G] is Köthe iff G is p'-by-cyclic-p or R[G] is "
                             "semisimple."),
    Citation("Thm-divNC", "For a division ring of characteristic 0, R[G] is Köthe iff G is "
                          "finite (not reachable for finite coefficient rings)."),
    Citation("Thm-Nicholson", "If R is local, G is a finite p-group and p lies in J(R), then R[G] "
                              "is local."),
    Citation("Lem-AbelianDecomp", "An artinian ring is a finite product of local rings iff all its "
                                  "idempotents are central."),
    Citation("Lem-AbelInj", "A subring of an abelian ring is abelian."),
    Citation("Def-KothePSS", "Every Köthe ring is pure semisimple."),
    Citation("Thm-RGPureSemisimple", "If |G|*1 is a unit of R, R is left (right) pure semisimple "
                                     "iff R[G] is."),
    Citation("Thm-Girvan", "A commutative ring is Köthe iff every module is pure projective, "
                           "i.e. iff it is pure semisimple."),
    Citation("Gap-Nakayama", "Non-commutative Köthe rings need not be principal ideal rings, so "
                             "a failed PIR test refutes nothing for non-abelian rings."),
]}


@dataclass
class Hypothesis:
    name: str
    value: Any
    status: str = "computed"  # or "assumed"

    def to_dict(self) -> dict:
        v = self.value
        if isinstance(v, (np.bool_, np.integer)):
            v = v.item()
        return {"name": self.name, "value": v, "status": self.status}


@dataclass
class RuleApplication:
    rule_id: str
    citations: list[str]
    hypotheses: list[Hypothesis]
    conclusion: str
    outcome: str  # yes | no | pass

    @property
    def decisive(self) -> bool:
        return self.outcome in ("yes", "no")

    def to_dict(self) -> dict:
        return {
            "rule": self.rule_id,
            "citations": [{"label": c, "statement": CITATIONS[c].statement} for c in self.citations],
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "conclusion": self.conclusion,
            "outcome": self.outcome,
        }


@dataclass(frozen=True)
class Assumptions:
    """User-supplied facts and the caps that bound every computation."""

    abelian_group_ring: bool | None = None
    cap: int = DEFAULT_CAP
    lattice_cap: int = DEFAULT_LATTICE_CAP
    group_cap: int = DEFAULT_GROUP_CAP

    def echo(self) -> list[str]:
        out = []
        if self.abelian_group_ring is not None:
            out.append(f"abelian_group_ring={str(self.abelian_group_ring).lower()}")
        return out

    def caps(self) -> dict:
        return {"materialize": self.cap, "lattice": self.lattice_cap, "group": self.group_cap}


@dataclass
class Verdict:
    question: str
    ring: str
    group: str
    answer: Answer
    trace: list[RuleApplication]
    assumptions: Assumptions
    notes: list[str] = field(default_factory=list)
    blocking_reason: str | None = None

    @property
    def decisive_rule(self) -> RuleApplication | None:
        for r in self.trace:
            if r.decisive:
                return r
        return None

    @property
    def rule_id(self) -> str | None:
        r = self.decisive_rule
        return r.rule_id if r else None

    def to_dict(self) -> dict:
        return {
            "v": SCHEMA_VERSION,
            "question": self.question,
            "ring": self.ring,
            "group": self.group,
            "answer": self.answer.value,
            "decided_by": self.rule_id,
            "trace": [r.to_dict() for r in self.trace],
            "notes": list(self.notes),
            "blocking_reason": self.blocking_reason,
            "assumptions": self.assumptions.echo(),
            "caps": self.assumptions.caps(),
        }

    def render(self) -> str:
        lines = [f"{self.question} {self.ring} [{self.group}]: {self.answer.value}"]
        for i, r in enumerate(self.trace, 1):
            hyps = "; ".join(f"{h.name} = {h.value}" + (" (assumed)" if h.status == "assumed" else "")
                             for h in r.hypotheses)
            lines.append(f"  {i}. {r.rule_id} -> {', '.join(r.citations)} -> {hyps or '-'}")
            lines.append(f"     => {r.conclusion}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        if self.blocking_reason:
            lines.append(f"  blocked: {self.blocking_reason}")
        return "\n".join(lines)


# ------------------------------------------------------------------ scan


@dataclass
class Refutation:
    ideal: IdealRef
    subgroup: SubgroupRef
    quotient: str
    size: int
    witness: IdealRef | None


@dataclass
class ScanResult:
    refutations: list[Refutation]
    skipped: list[str]
    checked: int


def _quotient_pairs(R: RingTable, G: GroupTable, a: Assumptions, include_whole: bool):
    ideals = [I for I in all_two_sided_ideals(R, a.lattice_cap) if not I.is_whole()]
    normals = normal_subgroups(G, a.group_cap)
    pairs = []
    for I in ideals:
        for N in normals:
            if not include_whole and I.is_zero() and N.order == 1:
                continue
            size = (R.size // I.size) ** (G.order // N.order)
            pairs.append((size, I.size, I.key, N.mask, I, N))
    pairs.sort(key=lambda t: t[:4])
    return pairs


def necessary_condition_scan(R: RingTable, G: GroupTable, a: Assumptions | None = None, *,
                             include_whole: bool = True, commutative_only: bool = False,
                             stop_at_first: bool = False, whole: RingTable | None = None) -> ScanResult:
    """Quotients ``(R/I)[G/N]`` that are abelian (or commutative) and not principal ideal rings.

    Each such quotient refutes Köthe-ness of ``R[G]``; an empty result proves nothing.
    Pairs whose quotient exceeds the cap are skipped and reported.
    """
    a = a or Assumptions()
    refutations, skipped, checked = [], [], 0
    for size, _, _, _, I, N in _quotient_pairs(R, G, a, include_whole):
        name = f"({R.name}/I)[{G.name}/N] with |I|={I.size}, |N|={N.order}"
        if size > a.cap:
            skipped.append(f"{name}: {size} elements exceeds cap {a.cap}")
            continue
        if whole is not None and I.is_zero() and N.order == 1:
            Q = whole
        else:
            RI = R if I.is_zero() else quotient_ring(R, I)[0]
            GN = G if N.order == 1 else quotient_group(G, N)[0]
            Q = build_group_ring(RI, GN, a.cap)
        checked += 1
        if commutative_only and not Q.is_commutative:
            continue
        if not is_abelian_ring(Q):
            continue
        left = is_pir(Q, LEFT)
        if left.is_pir and is_pir(Q, RIGHT).is_pir:
            continue
        witness = left.witness if not left.is_pir else is_pir(Q, RIGHT).witness
        refutations.append(Refutation(I, N, name, Q.size, witness))
        if stop_at_first:
            break
    return ScanResult(refutations, skipped, checked)


# --------------------------------------------------------------- problem


class _Problem:
    """Memoized facts about one (R, G) instance."""

    def __init__(self, rd: RingDescriptor, gd: GroupDescriptor, a: Assumptions):
        self.rd, self.gd, self.a = rd, gd, a
        self.notes: list[str] = []
        self.G: GroupTable | None = None
        self.R: RingTable | None = None
        self.block: str | None = None
        self._rg: RingTable | None | bool = False
        self._abelian: tuple | None = None
        self.non_artinian = is_non_artinian(rd)
        try:
            self.G = materialize_group(gd)
        except CapExceeded as exc:
            self.block = str(exc)
            return
        if self.non_artinian:
            return
        try:
            self.R = materialize_ring(rd, a.cap)
        except CapExceeded as exc:
            self.block = f"coefficient ring not materializable: {exc}"

    @property
    def size(self) -> int:
        return self.R.size ** self.G.order

    def rg(self) -> RingTable | None:
        if self._rg is False:
            if self.size > self.a.cap:
                self._rg = None
            else:
                self._rg = materialize_ring(GroupRingOf(self.rd, self.gd), self.a.cap)
        return self._rg

    def abelian(self) -> tuple[bool | None, Hypothesis]:
        """Is R[G] abelian?  Derived, computed, or assumed, in that preference order."""
        if self._abelian is None:
            self._abelian = self._decide_abelian()
            value, hyp = self._abelian
            assumed = self.a.abelian_group_ring
            if assumed is not None and hyp.status == "computed" and value is not None and value != assumed:
                self.notes.append(f"assumption abelian_group_ring={str(assumed).lower()} contradicts "
                                  f"the computed value {str(value).lower()}; the computed value is used")
        return self._abelian

    def _decide_abelian(self):
        R, G = self.R, self.G
        name = "R[G] abelian"
        if G.order == 1:
            v = is_abelian_ring(R)
            return v, Hypothesis(name, f"{v} (G trivial, R[G] = R)")
        if R.is_commutative and G.is_abelian:
            return True, Hypothesis(name, "True (R commutative and G abelian, so R[G] is commutative)")
        if not is_abelian_ring(R):
            return False, Hypothesis(name, "False (R is a non-abelian subring) [Lem-AbelInj]")
        M = is_local(R)
        if M is not None:
            p = quotient_ring(R, M)[0].characteristic if not M.is_zero() else R.characteristic
            if is_p_group(G, p):
                return True, Hypothesis(name, f"True (R local with residue characteristic {p} and G "
                                              f"a {p}-group, so R[G] is local) [Thm-Nicholson]")
        if self.size <= self.a.cap:
            v = is_abelian_ring(self.rg())
            return v, Hypothesis(name, f"{v} (exhaustive idempotent scan of {self.size} elements)")
        sub = self._non_abelian_subgroup_ring()
        if sub is not None:
            return False, Hypothesis(name, f"False (the subring {sub} is not abelian) [Lem-AbelInj]")
        if self.a.abelian_group_ring is not None:
            v = self.a.abelian_group_ring
            return v, Hypothesis(name, f"abelian_group_ring={str(v).lower()}", "assumed")
        return None, Hypothesis(name, f"undetermined ({self.size} elements exceeds cap {self.a.cap}, "
                                      "no assumption given)")

    def _non_abelian_subgroup_ring(self) -> str | None:
        """Name of some ``R[H]``, ``H < G`` within the cap, that has a non-central idempotent."""
        R, G = self.R, self.G
        try:
            subs = subgroups(G, self.a.group_cap)
        except CapExceeded:
            return None
        for H in subs:
            if H.order == G.order or R.size ** H.order > self.a.cap:
                continue
            T = subgroup_table(G, H)
            if R.is_commutative and T.is_abelian:
                continue
            if not is_abelian_ring(build_group_ring(R, T, self.a.cap)):
                return f"{R.name}[{describe_subgroup(G, H)}]"
        return None

    def residue_char(self, M: IdealRef) -> int:
        return quotient_ring(self.R, M)[0].characteristic if not M.is_zero() else self.R.characteristic


def _witness_text(G: GroupTable, N: SubgroupRef) -> str:
    Q, _ = quotient_group(G, N)
    return f"N = {describe_subgroup(G, N)} (|N| = {N.order}, G/N cyclic of order {Q.order})"


# ------------------------------------------------------------ Köthe rules


def _r0(P: _Problem) -> RuleApplication:
    hyp = [Hypothesis("coefficient ring artinian", not P.non_artinian)]
    if P.non_artinian:
        return RuleApplication("R0", ["Thm-Connell", "Prop-FaithWalker", "Prop-KoetheNec"], hyp,
                               "R is not artinian, so R[G] is not artinian and not Köthe", "no")
    return RuleApplication("R0", ["Thm-Connell"], hyp, "R is finite, hence artinian", "pass")


def _r1(P: _Problem) -> RuleApplication:
    R, G = P.R, P.G
    unit = is_n_one_unit(R, G.order)
    semi = is_semiprimitive(R)
    hyp = [Hypothesis("|G|*1 unit in R", f"{unit} (|G|*1 = {R.label(n_one(R, G.order))})"),
           Hypothesis("J(R) = 0", semi)]
    if unit and semi:
        if is_division_ring(R) and G.order > 1:
            p = R.characteristic
            P.notes.append(
                f"{p} does not divide |G| = {G.order}: G is a {p}'-group, hence {p}'-by-cyclic-{p} "
                f"with N = G (a trivial quotient counts as cyclic), so the field-coefficient rule "
                f"agrees with this semisimple verdict")
        return RuleApplication("R1", ["Maschke", "Thm-Kothe"], hyp,
                               "R[G] is semisimple, hence an artinian PIR, hence Köthe", "yes")
    return RuleApplication("R1", ["Maschke"], hyp, "not semisimple by this test", "pass")


def _r2(P: _Problem) -> RuleApplication:
    R, G = P.R, P.G
    if not is_division_ring(R):
        return RuleApplication("R2", ["Thm-Passman"], [Hypothesis("R division ring", False)],
                               "not applicable", "pass")
    p = R.characteristic
    hyps = [Hypothesis("R division ring", f"True (finite, so a field of characteristic {p})")]
    N = p_prime_by_cyclic_p_witness(G, p)
    if N is not None:
        hyps.append(Hypothesis(f"G {p}'-by-cyclic-{p}", _witness_text(G, N)))
        return RuleApplication("R2", ["Thm-Passman", "Thm-Kothe"], hyps,
                               "K[G] is an artinian PIR, hence Köthe", "yes")
    hyps.append(Hypothesis(f"G {p}'-by-cyclic-{p}", False))
    try:
        dedekind, lagrangian = is_dedekind(G, P.a.group_cap), is_lagrangian(G, P.a.group_cap)
    except CapExceeded as exc:
        hyps.append(Hypothesis("G lagrangian Dedekind", f"undetermined ({exc})"))
        return RuleApplication("R2", ["Thm-Passman"], hyps, "K[G] is not a PIR; Köthe-ness open", "pass")
    hyps.append(Hypothesis("G Dedekind", dedekind))
    hyps.append(Hypothesis("G lagrangian", lagrangian))
    semisimple = G.order % p != 0
    hyps.append(Hypothesis("K[G] semisimple", semisimple))
    if dedekind and lagrangian and not semisimple:
        return RuleApplication("R2", ["Thm-divPrime"], hyps,
                               "neither p'-by-cyclic-p nor semisimple, so K[G] is not Köthe", "no")
    return RuleApplication("R2", ["Thm-Passman"], hyps, "K[G] is not a PIR; Köthe-ness open here",
                           "pass")


def _r3(P: _Problem) -> RuleApplication:
    R, G = P.R, P.G
    value, hyp = P.abelian()
    hyps = [hyp]
    comm = R.is_commutative and G.is_abelian
    label = "Cor-MainThmComm" if comm else "Thm-MainThmA"
    if not value:
        return RuleApplication("R3", [label], hyps, "R[G] not known to be abelian; not applicable",
                               "pass")
    factors = decompose_into_local(R)
    hyps.append(Hypothesis("local factors of R",
                           ", ".join(f"{f.factor.size}-element (residue char {f.residue_char}, "
                                     f"{'semiprimitive' if f.semiprimitive else 'J != 0'})"
                                     for f in factors) + " [Lem-AbelianDecomp]"))
    ok = True
    r_kothe = is_kothe_abelian_oracle(R)
    hyps.append(Hypothesis("R Köthe (artinian PIR) [Thm-Behboodi]", r_kothe))
    ok &= r_kothe
    for p in sorted({f.residue_char for f in factors}):
        N = p_prime_by_cyclic_p_witness(G, p)
        hyps.append(Hypothesis(f"G {p}'-by-cyclic-{p}", _witness_text(G, N) if N else False))
        ok &= N is not None
    for i, f in enumerate(factors):
        if not f.semiprimitive:
            u = is_n_one_unit(f.factor, G.order)
            hyps.append(Hypothesis(f"|G|*1 unit in factor {i + 1} (not semiprimitive)", u))
            ok &= u
    if ok:
        return RuleApplication("R3", [label, "Thm-Behboodi"], hyps, "every condition holds; R[G] is Köthe",
                               "yes")
    return RuleApplication("R3", [label], hyps, "a required condition fails; R[G] is not Köthe", "no")


def _r4(P: _Problem) -> RuleApplication:
    R, G = P.R, P.G
    M = is_local(R)
    if M is None:
        return RuleApplication("R4", ["Thm-DorseyFinite"], [Hypothesis("R local", False)],
                               "not applicable", "pass")
    p = P.residue_char(M)
    division = M.is_zero()
    hyps = [Hypothesis("R local", f"True (residue characteristic {p})"),
            Hypothesis("R division ring", division)]
    pir = is_pir(R, LEFT).is_pir and is_pir(R, RIGHT).is_pir
    hyps.append(Hypothesis("R artinian PIR", pir))
    if not pir:
        return RuleApplication("R4", ["Thm-DorseyFinite"], hyps, "R is not a PIR; not applicable", "pass")
    if not division and G.order > 1 and is_p_group(G, p):
        hyps.append(Hypothesis(f"G nontrivial {p}-group", True))
        value, ab = P.abelian()
        hyps.append(ab)
        if value:
            return RuleApplication("R4", ["Lem-pgroup", "Thm-Behboodi"], hyps,
                                   "R[G] is abelian and not a PIR, hence not Köthe", "no")
        return RuleApplication("R4", ["Lem-pgroup", "Gap-Nakayama"], hyps,
                               "R[G] is not a PIR; Köthe-ness open without abelianness", "pass")
    N = p_prime_by_cyclic_p_witness(G, p)
    hyps.append(Hypothesis(f"G {p}'-by-cyclic-{p}", _witness_text(G, N) if N else False))
    if N is None:
        return RuleApplication("R4", ["Thm-DorseyFinite", "Gap-Nakayama"], hyps,
                               "R[G] is not a PIR; Köthe-ness open here", "pass")
    if division:
        return RuleApplication("R4", ["Thm-DorseyFinite", "Thm-Kothe"], hyps,
                               "R[G] is an artinian PIR, hence Köthe", "yes")
    try:
        adm = is_r_admissible(R, G, P.a.cap)
    except CapExceeded as exc:
        hyps.append(Hypothesis("G R-admissible", f"undetermined ({exc})"))
        return RuleApplication("R4", ["Thm-DorseyFinite"], hyps, "admissibility not computable", "pass")
    hyps.append(Hypothesis("G R-admissible", adm))
    if adm:
        return RuleApplication("R4", ["Thm-DorseyFinite", "Thm-Kothe"], hyps,
                               "R[G] is an artinian PIR, hence Köthe", "yes")
    return RuleApplication("R4", ["Thm-DorseyFinite", "Gap-Nakayama"], hyps,
                           "R[G] is not a PIR; Köthe-ness open here", "pass")


def _r5(P: _Problem) -> RuleApplication:
    try:
        scan = necessary_condition_scan(P.R, P.G, P.a, include_whole=False, stop_at_first=True)
    except CapExceeded as exc:
        return RuleApplication("R5", ["Prop-KoetheNec"], [Hypothesis("scan", f"blocked ({exc})")],
                               "scan not possible", "pass")
    hyps = [Hypothesis("proper quotients checked", scan.checked),
            Hypothesis("quotients skipped (cap)", len(scan.skipped))]
    if scan.refutations:
        r = scan.refutations[0]
        hyps.append(Hypothesis("refuting quotient", f"{r.quotient}: abelian, {r.size} elements, not a PIR"))
        if r.witness is not None:
            hyps.append(Hypothesis("non-principal ideal generated by", list(r.witness.generators)))
        return RuleApplication("R5", ["Prop-KoetheNec", "Thm-Behboodi"], hyps,
                               "an abelian quotient is not Köthe, so R[G] is not Köthe", "no")
    return RuleApplication("R5", ["Prop-KoetheNec"], hyps, "no refuting proper quotient found", "pass")


def _r6(P: _Problem) -> RuleApplication:
    RG = P.rg()
    if RG is None:
        return RuleApplication("R6", ["Thm-Behboodi"],
                               [Hypothesis("R[G] materializable", f"False ({P.size} > cap {P.a.cap})")],
                               "brute force not possible", "pass")
    hyps = [Hypothesis("R[G] materializable", f"True ({RG.size} elements)")]
    abelian = is_abelian_ring(RG)
    hyps.append(Hypothesis("R[G] abelian (exhaustive)", abelian))
    left, right = is_pir(RG, LEFT), is_pir(RG, RIGHT)
    hyps.append(Hypothesis("R[G] left PIR", left.is_pir))
    hyps.append(Hypothesis("R[G] right PIR", right.is_pir))
    if not left.is_pir or not right.is_pir:
        w = left.witness if not left.is_pir else right.witness
        hyps.append(Hypothesis("non-principal ideal generated by", list(w.generators)))
    if left.is_pir and right.is_pir:
        return RuleApplication("R6", ["Thm-Kothe"], hyps, "R[G] is an artinian PIR, hence Köthe", "yes")
    if abelian:
        return RuleApplication("R6", ["Thm-Behboodi"], hyps,
                               "R[G] is abelian and not a PIR, hence not Köthe", "no")
    nc = non_central_idempotents(RG)
    hyps.append(Hypothesis("non-central idempotent", RG.label(nc[0])))
    return RuleApplication("R6", ["Gap-Nakayama"], hyps,
                           "non-abelian, non-PIR: Nakayama gap", "pass")


KOTHE_RULES = [("R0", _r0), ("R1", _r1), ("R2", _r2), ("R3", _r3), ("R4", _r4), ("R5", _r5), ("R6", _r6)]


def classify_kothe(rd: RingDescriptor, gd: GroupDescriptor, a: Assumptions | None = None, *,
                   rules: tuple[str, ...] | None = None) -> Verdict:
    """Decide whether ``R[G]`` is a Köthe ring; ``rules`` restricts which rules may run."""
    a = a or Assumptions()
    P = _Problem(rd, gd, a)
    return _run(P, "kothe", KOTHE_RULES, rules)


def _run(P: _Problem, question: str, catalog, rules) -> Verdict:
    trace: list[RuleApplication] = []
    verdict = Verdict(question, describe_ring(P.rd), describe_group(P.gd), Answer.UNKNOWN, trace, P.a,
                      P.notes)
    for rule_id, fn in catalog:
        if rules is not None and rule_id not in rules:
            continue
        if rule_id not in ("R0", "P2a") and P.R is None:
            if P.non_artinian:
                continue
            verdict.blocking_reason = P.block
            break
        try:
            app = fn(P)
        except CapExceeded as exc:
            app = RuleApplication(rule_id, [], [Hypothesis("computation", f"blocked ({exc})")],
                                  "cap exceeded", "pass")
        trace.append(app)
        if app.decisive:
            verdict.answer = Answer(app.outcome)
            return verdict
    if verdict.blocking_reason is None:
        verdict.blocking_reason = "no rule was decisive: " + "; ".join(
            f"{t.rule_id}: {t.conclusion}" for t in trace)
    return verdict


# ------------------------------------------------------- pure semisimple


def _p2a(P: _Problem) -> RuleApplication:
    hyp = [Hypothesis("coefficient ring artinian", not P.non_artinian)]
    if P.non_artinian:
        return RuleApplication("P2", ["Prop-KoetheNec", "Prop-FaithWalker"], hyp,
                               "R is not artinian, so R is not pure semisimple, nor is R[G]", "no")
    return RuleApplication("P2", ["Prop-FaithWalker"], hyp, "R is finite, hence artinian", "pass")


def _p1(P: _Problem) -> RuleApplication:
    R, G = P.R, P.G
    unit = is_n_one_unit(R, G.order)
    hyps = [Hypothesis("|G|*1 unit in R", f"{unit} (|G|*1 = {R.label(n_one(R, G.order))})")]
    if not unit:
        return RuleApplication("P1", ["Thm-RGPureSemisimple"], hyps, "not applicable", "pass")
    pir = is_pir(R, LEFT).is_pir and is_pir(R, RIGHT).is_pir
    hyps.append(Hypothesis("R artinian PIR", pir))
    if pir:
        return RuleApplication("P1", ["Thm-RGPureSemisimple", "Thm-Kothe", "Def-KothePSS"], hyps,
                               "R is Köthe, hence pure semisimple, hence so is R[G]", "yes")
    hyps.append(Hypothesis("R commutative", R.is_commutative))
    if R.is_commutative:
        return RuleApplication("P1", ["Thm-RGPureSemisimple", "Thm-KCP", "Thm-Girvan"], hyps,
                               "R is not Köthe, hence not pure semisimple, nor is R[G]", "no")
    return RuleApplication("P1", ["Thm-RGPureSemisimple"], hyps,
                           "pure semisimplicity of a non-commutative non-PIR R is open", "pass")


def _p0(P: _Problem) -> RuleApplication:
    sub = _run(_Problem(P.rd, P.gd, P.a), "kothe", KOTHE_RULES, None)
    hyps = [Hypothesis("Köthe verdict", f"{sub.answer.value} (via {sub.rule_id or 'no decisive rule'})")]
    P.notes.extend(n for n in sub.notes if n not in P.notes)
    if sub.answer is Answer.YES:
        if not is_n_one_unit(P.R, P.G.order):
            P.notes.append(f"|G|*1 = {P.R.label(n_one(P.R, P.G.order))} is not a unit here, yet R[G] "
                           "is pure semisimple: invertibility of |G|*1 is sufficient, not necessary")
        return RuleApplication("P0", ["Def-KothePSS"], hyps, "R[G] is Köthe, hence pure semisimple", "yes")
    return RuleApplication("P0", ["Def-KothePSS"], hyps, "not decisive", "pass")


def _p2b(P: _Problem) -> RuleApplication:
    try:
        scan = necessary_condition_scan(P.R, P.G, P.a, include_whole=True, commutative_only=True,
                                        stop_at_first=True, whole=P.rg())
    except CapExceeded as exc:
        return RuleApplication("P2", ["Prop-KoetheNec"], [Hypothesis("scan", f"blocked ({exc})")],
                               "scan not possible", "pass")
    hyps = [Hypothesis("quotients checked", scan.checked),
            Hypothesis("quotients skipped (cap)", len(scan.skipped))]
    if scan.refutations:
        r = scan.refutations[0]
        hyps.append(Hypothesis("refuting quotient", f"{r.quotient}: commutative, not a PIR"))
        return RuleApplication("P2", ["Prop-KoetheNec", "Thm-KCP", "Thm-Girvan"], hyps,
                               "a commutative quotient is not pure semisimple, so neither is R[G]", "no")
    return RuleApplication("P2", ["Prop-KoetheNec"], hyps, "no refuting quotient found", "pass")


PSS_RULES = [("P2a", _p2a), ("P1", _p1), ("P0", _p0), ("P2b", _p2b)]


def classify_pure_semisimple(rd: RingDescriptor, gd: GroupDescriptor,
                             a: Assumptions | None = None) -> Verdict:
    """Decide whether ``R[G]`` is pure semisimple.

    The Maschke-type transfer (P1) runs before the Köthe shortcut (P0) so the
    trace names the transfer whenever it applies.
    """
    a = a or Assumptions()
    P = _Problem(rd, gd, a)
    v = _run(P, "pss", PSS_RULES, None)
    if v.answer is Answer.UNKNOWN:
        v.trace.append(RuleApplication("P3", [], [], "no rule was decisive", "pass"))
    return v


def brute_force_kothe(rd: RingDescriptor, gd: GroupDescriptor, a: Assumptions | None = None) -> Verdict:
    """Only the exhaustive route (R6)."""
    return classify_kothe(rd, gd, a, rules=("R0", "R6"))


def symbolic_kothe(rd: RingDescriptor, gd: GroupDescriptor, a: Assumptions | None = None) -> Verdict:
    """Every rule except the exhaustive one on the full group ring."""
    return classify_kothe(rd, gd, a, rules=("R0", "R1", "R2", "R3", "R4", "R5"))
