import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kothe.classifier import (
    Answer,
    Assumptions,
    brute_force_kothe,
    classify_kothe,
    classify_pure_semisimple,
    necessary_condition_scan,
    symbolic_kothe,
)
from kothe.descriptors import (
    Cyclic,
    Dihedral,
    DirectProduct,
    GaloisField,
    IntegersMarker,
    Quaternion8,
    Symmetric,
    ZMod,
)
from kothe.groups import materialize_group
from kothe.materialize import materialize_ring

C2xC2 = DirectProduct((Cyclic(2), Cyclic(2)))
C3xD8 = DirectProduct((Cyclic(3), Dihedral(8)))


@pytest.mark.parametrize("rd,gd,abelian,answer,rule", [
    (GaloisField(2), Symmetric(3), None, Answer.YES, "R2"),
    (IntegersMarker(), Quaternion8(), None, Answer.NO, "R0"),
    (GaloisField(3), C3xD8, True, Answer.YES, "R2"),
    (ZMod(4), Cyclic(2), None, Answer.NO, "R3"),
    (GaloisField(2), C2xC2, None, Answer.NO, "R2"),
    (GaloisField(13), C3xD8, None, Answer.YES, "R1"),
    (ZMod(4), Cyclic(3), None, Answer.YES, "R3"),
    (GaloisField(2), Cyclic(4), None, Answer.YES, "R2"),
    (ZMod(4), Cyclic(6), None, Answer.NO, "R3"),
])
def test_kothe_examples(rd, gd, abelian, answer, rule):
    v = classify_kothe(rd, gd, Assumptions(abelian_group_ring=abelian))
    assert v.answer is answer
    assert v.rule_id == rule


def test_c3xd8_witness_in_trace():
    v = classify_kothe(GaloisField(3), C3xD8, Assumptions(abelian_group_ring=True))
    hyps = {h.name: h.value for h in v.decisive_rule.hypotheses}
    assert any("(e,r^3s)" in str(val) for val in hyps.values())


def test_f13_carries_note():
    v = classify_kothe(GaloisField(13), C3xD8)
    assert any("13 does not divide |G| = 24" in n for n in v.notes)


@pytest.mark.parametrize("rd,gd,answer,rule", [
    (GaloisField(2), Symmetric(3), Answer.YES, "P0"),
    (ZMod(9), Cyclic(2), Answer.YES, "P1"),
    (IntegersMarker(), Cyclic(2), Answer.NO, "P2"),
    (ZMod(4), Cyclic(2), Answer.NO, "P2"),
])
def test_pss_examples(rd, gd, answer, rule):
    v = classify_pure_semisimple(rd, gd)
    assert v.answer is answer and v.rule_id == rule


def test_pss_remark_on_non_unit():
    v = classify_pure_semisimple(GaloisField(2), Symmetric(3))
    assert any("not necessary" in n for n in v.notes)


def test_unknown_has_blocking_reason():
    v = classify_kothe(GaloisField(3), Symmetric(3))
    assert v.answer is Answer.UNKNOWN and v.rule_id is None
    assert "Nakayama gap" in v.blocking_reason
    assert [r.rule_id for r in v.trace] == ["R0", "R1", "R2", "R3", "R4", "R5", "R6"]


def test_cap_blocked_is_unknown_not_error():
    v = classify_kothe(GaloisField(2), Symmetric(4))
    assert v.answer is Answer.UNKNOWN
    assert "brute force not possible" in v.blocking_reason
    p = classify_pure_semisimple(GaloisField(3), Symmetric(3))
    assert p.answer is Answer.UNKNOWN and p.trace[-1].rule_id == "P3"


def test_assumption_echo_and_status():
    a = Assumptions(abelian_group_ring=True)
    v = classify_kothe(GaloisField(3), C3xD8, a)
    assert v.to_dict()["assumptions"] == ["abelian_group_ring=true"]
    for r in v.trace:
        for h in r.hypotheses:
            assert h.status in ("computed", "assumed")


def test_contradicted_assumption_is_noted():
    v = classify_kothe(ZMod(4), Symmetric(3), Assumptions(abelian_group_ring=True))
    assert any("contradicts the computed value false" in n for n in v.notes)
    assert v.answer is Answer.NO and v.rule_id == "R5"


def test_no_assumed_hypotheses_without_flag():
    for rd, gd in [(ZMod(4), Cyclic(2)), (GaloisField(2), Symmetric(3)), (ZMod(9), Cyclic(2))]:
        v = classify_kothe(rd, gd)
        assert all(h.status == "computed" for r in v.trace for h in r.hypotheses)
        assert v.to_dict()["assumptions"] == []


def test_json_is_stable():
    a = [json.dumps(classify_kothe(ZMod(4), Cyclic(6)).to_dict(), sort_keys=True) for _ in range(2)]
    assert a[0] == a[1]
    d = json.loads(a[0])
    assert d["v"] == 1 and d["answer"] == "no" and d["decided_by"] == "R3"
    assert set(d) >= {"answer", "trace", "assumptions", "caps"}


def test_render_has_numbered_lines():
    text = classify_kothe(GaloisField(2), Symmetric(3)).render()
    assert text.splitlines()[0].endswith(": yes")
    assert "  1. R0 -> " in text


# ------------------------------------------------------------------- scan


def test_scan_semisimple_field_is_empty():
    res = necessary_condition_scan(materialize_ring(GaloisField(3)), materialize_group(Cyclic(2)))
    assert res.refutations == [] and res.checked > 0


def test_scan_z4_c2_contains_whole_ring():
    res = necessary_condition_scan(materialize_ring(ZMod(4)), materialize_group(Cyclic(2)))
    assert any(r.ideal.is_zero() and r.subgroup.order == 1 for r in res.refutations)


def test_scan_z4_c6_refutes_through_c3():
    res = necessary_condition_scan(materialize_ring(ZMod(4)), materialize_group(Cyclic(6)),
                                   include_whole=False)
    hits = [r for r in res.refutations if r.ideal.is_zero() and r.subgroup.order == 3]
    assert hits and hits[0].size == 16
    assert hits[0].witness is not None


def test_scan_reports_skipped_pairs():
    res = necessary_condition_scan(materialize_ring(ZMod(4)), materialize_group(Cyclic(6)),
                                   Assumptions(cap=64))
    assert any("exceeds cap 64" in s for s in res.skipped)


# -------------------------------------------------------------- properties

CASES = [(rd, gd) for rd in (GaloisField(2), GaloisField(3), ZMod(4), ZMod(6), ZMod(9))
         for gd in (Cyclic(1), Cyclic(2), Cyclic(3), Cyclic(4), C2xC2, Symmetric(3))]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(CASES))
def test_symbolic_agrees_with_brute_force(case):
    sym, ora = symbolic_kothe(*case), brute_force_kothe(*case)
    if Answer.UNKNOWN not in (sym.answer, ora.answer):
        assert sym.answer is ora.answer


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(CASES))
def test_stripping_assumptions_never_flips(case):
    with_a = classify_kothe(*case, Assumptions(abelian_group_ring=True))
    without = classify_kothe(*case)
    if Answer.UNKNOWN not in (with_a.answer, without.answer):
        assert with_a.answer is without.answer


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(CASES), st.sampled_from([16, 64, 256]))
def test_raising_caps_is_monotone(case, small):
    lo = classify_kothe(*case, Assumptions(cap=small))
    hi = classify_kothe(*case, Assumptions(cap=4096))
    if lo.answer is not Answer.UNKNOWN:
        assert hi.answer is lo.answer


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(CASES))
def test_pss_follows_kothe_yes(case):
    if classify_kothe(*case).answer is Answer.YES:
        assert classify_pure_semisimple(*case).answer is Answer.YES
