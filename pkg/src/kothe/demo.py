"""Worked example fixtures with their reference verdicts and side checks."""
from __future__ import annotations

from dataclasses import dataclass, field

from kothe.classifier import (
    Answer,
    Assumptions,
    Verdict,
    classify_kothe,
    classify_pure_semisimple,
)
from kothe.descriptors import (
    Cyclic,
    Dihedral,
    DirectProduct,
    GaloisField,
    GroupDescriptor,
    GroupRingOf,
    IntegersMarker,
    Quaternion8,
    RingDescriptor,
    Symmetric,
    ZMod,
)
from kothe.group_ring import check_idempotent_witness, element
from kothe.groups import materialize_group
from kothe.materialize import materialize_ring
from kothe.rings import center_mask, idempotents, non_central_idempotents

LITERATURE = "literature"
DERIVED = "derived"


@dataclass(frozen=True)
class Fixture:
    name: str
    ring: RingDescriptor
    group: GroupDescriptor
    question: str = "kothe"
    expected: Answer = Answer.YES
    expected_rule: str | None = None
    assume_abelian: bool | None = None
    source: str = DERIVED
    reference: Answer | None = None  # the verdict stated in the source, when it differs


def _c3xd8() -> DirectProduct:
    return DirectProduct((Cyclic(3), Dihedral(8)))


FIXTURES: tuple[Fixture, ...] = (
    Fixture("Z[Q_8]", IntegersMarker(), Quaternion8(), expected=Answer.NO, expected_rule="R0",
            source=LITERATURE),
    Fixture("F_2[S_3]", GaloisField(2), Symmetric(3), expected_rule="R2", source=LITERATURE),
    Fixture("F_3[C_3 x D_8]", GaloisField(3), _c3xd8(), expected_rule="R2", assume_abelian=True,
            source=LITERATURE),
    Fixture("F_13[C_3 x D_8]", GaloisField(13), _c3xd8(), expected_rule="R1", source=LITERATURE,
            reference=Answer.NO),
    Fixture("Z_4[C_2]", ZMod(4), Cyclic(2), expected=Answer.NO, expected_rule="R3"),
    Fixture("Z_4[C_3]", ZMod(4), Cyclic(3), expected_rule="R3"),
    Fixture("F_2[C_2 x C_2]", GaloisField(2), DirectProduct((Cyclic(2), Cyclic(2))),
            expected=Answer.NO, expected_rule="R2"),
    Fixture("F_2[C_4]", GaloisField(2), Cyclic(4), expected_rule="R2"),
    Fixture("F_2[Q_8]", GaloisField(2), Quaternion8(), expected=Answer.NO, expected_rule="R2"),
    Fixture("Z_4[C_6]", ZMod(4), Cyclic(6), expected=Answer.NO, expected_rule="R3"),
    Fixture("Z_9[C_2] (pss)", ZMod(9), Cyclic(2), question="pss", expected_rule="P1"),
    Fixture("F_2[S_3] (pss)", GaloisField(2), Symmetric(3), question="pss", expected_rule="P0"),
    Fixture("Z[C_2] (pss)", IntegersMarker(), Cyclic(2), question="pss", expected=Answer.NO,
            expected_rule="P2"),
)


@dataclass
class DemoResult:
    fixture: Fixture
    verdict: Verdict
    checks: list[str] = field(default_factory=list)

    @property
    def matches(self) -> bool:
        f, v = self.fixture, self.verdict
        return v.answer is f.expected and (f.expected_rule is None or v.rule_id == f.expected_rule)

    def to_dict(self) -> dict:
        d = self.verdict.to_dict()
        d.update({"fixture": self.fixture.name, "source": self.fixture.source,
                  "expected": self.fixture.expected.value,
                  "reference": self.fixture.reference.value if self.fixture.reference else None,
                  "matches": self.matches, "checks": list(self.checks)})
        return d


def idempotent_report_f2s3() -> list[str]:
    """Exhaustive idempotent scan of ``F_2[S_3]`` (64 elements), including ``u = e + g + g^2``."""
    R, G = GaloisField(2), Symmetric(3)
    RG = materialize_ring(GroupRingOf(R, G))
    Gt = materialize_group(G)
    g = Gt.labels.index("(1 2 3)")
    coeffs = [0] * Gt.order
    for k in (0, g, Gt.power(g, 2)):
        coeffs[k] = 1
    u = element(RG, coeffs)
    nc = non_central_idempotents(RG)
    central = bool(center_mask(RG)[u])
    idem = int(RG.mul[u, u]) == u
    return [
        f"exhaustive scan of {RG.size} elements: {len(idempotents(RG))} idempotents, "
        f"{len(nc)} non-central (first: {RG.label(nc[0])})",
        f"u = {RG.label(u)}: idempotent = {idem}, central = {central} "
        "(u is 1 plus the class sum of the 3-cycles)",
    ]


def abelian_assumption_check_f3_c3xd8() -> list[str]:
    """Sparse check of an explicit idempotent of ``F_3[{e} x D_8]`` against the abelian assumption."""
    R = materialize_ring(GaloisField(3))
    G = materialize_group(_c3xd8())
    x = [0] * G.order
    # x = (1 - z)(1 + s) with z = r^2 central in D_8; 2 = -1 in F_3
    for lab, c in (("(e,e)", 1), ("(e,s)", 1), ("(e,r^2)", 2), ("(e,r^2s)", 2)):
        x[G.labels.index(lab)] = c
    w = check_idempotent_witness(R, G, x)
    text = (f"x = 1 + (e,s) + 2(e,r^2) + 2(e,r^2s): idempotent = {w.idempotent}, "
            f"central = {w.central}")
    if w.non_commuting_with is not None:
        text += f" (fails to commute with {G.label(w.non_commuting_with)})"
    if w.idempotent and not w.central:
        text += "; the abelian assumption is false, the verdict does not depend on it"
    return [text]


SIDE_CHECKS = {
    "F_2[S_3]": idempotent_report_f2s3,
    "F_3[C_3 x D_8]": abelian_assumption_check_f3_c3xd8,
}


def run_fixture(f: Fixture) -> DemoResult:
    a = Assumptions(abelian_group_ring=f.assume_abelian)
    classify = classify_kothe if f.question == "kothe" else classify_pure_semisimple
    v = classify(f.ring, f.group, a)
    res = DemoResult(f, v)
    if f.reference is not None and f.reference is not v.answer:
        res.checks.append(f"discrepancy: the reference verdict for this example is "
                          f"'{f.reference.value}', the computed verdict is '{v.answer.value}' "
                          f"via {v.rule_id}")
    if f.name in SIDE_CHECKS:
        res.checks.extend(SIDE_CHECKS[f.name]())
    return res


def run_demo() -> list[DemoResult]:
    return [run_fixture(f) for f in FIXTURES]
