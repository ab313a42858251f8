"""Acceptance criteria 1-8; every sub-check is recorded for the summary table."""
import math
import time

import numpy as np
import pytest

import naive
from kothe import groups, materialize, rings
from kothe.classifier import Answer, Assumptions, classify_kothe, necessary_condition_scan
from kothe.corpus import (
    ACCEPTANCE_GROUPS,
    ACCEPTANCE_RINGS,
    disagreements,
    group_ring_size,
    run_corpus,
)
from kothe.demo import run_demo
from kothe.descriptors import (
    Cyclic,
    DirectProduct,
    GaloisField,
    GroupRingOf,
    Quaternion8,
    Symmetric,
    ZMod,
)
from kothe.group_ring import (
    augmentation_ideal,
    augmentation_map,
    element,
    extend_coefficient_ideal,
    is_r_admissible,
)
from kothe.groups import materialize_group
from kothe.materialize import materialize_ring
from kothe.modules import (
    COEFFICIENT,
    GROUP_RING,
    ModuleHom,
    average_section,
    find_coefficient_section,
    generated_submodule,
    is_linear,
    is_section,
    quotient_module,
    regular_module,
    trivial_module,
)
from kothe.rings import (
    LEFT,
    RIGHT,
    all_two_sided_ideals,
    center_mask,
    ideal_powers,
    idempotents,
    is_abelian_ring,
    is_local,
    is_n_one_unit,
    is_pir,
    jacobson_radical,
    lift_idempotent,
    non_central_idempotents,
    quotient_ring,
)

CAP = 4096


def corpus_pairs():
    return [(rd, gd) for rd in ACCEPTANCE_RINGS for gd in ACCEPTANCE_GROUPS
            if group_ring_size(rd, gd) <= CAP]


def group_ring(rd, gd):
    return materialize_ring(GroupRingOf(rd, gd), CAP)


def clear_caches():
    materialize._materialize.cache_clear()
    groups.materialize_group.cache_clear()


# ----------------------------------------------------------------- 1


def test_criterion_1_worked_examples(acceptance):
    clear_caches()
    t0 = time.perf_counter()
    results = {r.fixture.name: r for r in run_demo()}
    elapsed = time.perf_counter() - t0
    ok = acceptance(1, "runtime < 5 s", elapsed < 5.0)
    ok &= acceptance(1, "Z[Q_8] no", results["Z[Q_8]"].verdict.answer is Answer.NO)
    ok &= acceptance(1, "F_2[S_3] yes", results["F_2[S_3]"].verdict.answer is Answer.YES)
    c3 = results["F_3[C_3 x D_8]"].verdict
    witness = {h.name: str(h.value) for h in c3.decisive_rule.hypotheses}
    ok &= acceptance(1, "F_3[C_3 x D_8] yes via p'-by-cyclic-p",
                     c3.answer is Answer.YES and c3.rule_id == "R2"
                     and any("(e,r^3s)" in v and "(e,e)" in v for v in witness.values()))
    ok &= acceptance(1, "F_3[C_3 x D_8] assumption echoed",
                     c3.to_dict()["assumptions"] == ["abelian_group_ring=true"])
    f13 = results["F_13[C_3 x D_8]"]
    ok &= acceptance(1, "F_13[C_3 x D_8] yes via Maschke",
                     f13.verdict.answer is Answer.YES and f13.verdict.rule_id == "R1")
    ok &= acceptance(1, "F_13[C_3 x D_8] discrepancy note",
                     any(c.startswith("discrepancy:") for c in f13.checks))
    ok &= acceptance(1, "all fixtures match", all(r.matches for r in results.values()))

    # exhaustive scan of F_2[S_3] for the named idempotent u = e + g + g^2
    RG = group_ring(GaloisField(2), Symmetric(3))
    G = materialize_group(Symmetric(3))
    g = G.labels.index("(1 2 3)")
    coeffs = [0] * 6
    for k in (0, g, G.power(g, 2)):
        coeffs[k] = 1
    u = element(RG, coeffs)
    scan = naive.idempotents(RG)
    nc = [e for e in scan if not naive.is_central(RG, e)]
    ok &= acceptance(1, "F_2[S_3] has non-central idempotents (64-element scan)",
                     RG.size == 64 and nc == non_central_idempotents(RG) and len(nc) > 0)
    ok &= acceptance(1, "u = e+g+g^2 is idempotent", u in scan)
    ok &= acceptance(1, "u = e+g+g^2 is non-central", u in nc)
    assert ok


# ----------------------------------------------------------------- 2


def test_criterion_2_corpus_agreement(acceptance):
    clear_caches()
    t0 = time.perf_counter()
    rows = run_corpus(ACCEPTANCE_RINGS, ACCEPTANCE_GROUPS, CAP)
    elapsed = time.perf_counter() - t0
    bad = disagreements(rows)
    ok = acceptance(2, "corpus non-empty", len(rows) == len(corpus_pairs()) > 0)
    ok &= acceptance(2, f"zero disagreements ({len(rows)} instances)", not bad)
    ok &= acceptance(2, "runtime < 10 min", elapsed < 600)
    assert ok, [r for r in bad]


# ----------------------------------------------------------------- 3


def non_principal_left(R, I):
    """``I`` is a left ideal that no single element generates (exhaustive closure)."""
    elems = frozenset(I.elements)
    return (all(int(R.mul[r, x]) in elems for r in range(R.size) for x in elems)
            and all(naive.left_principal(R, x) != elems for x in range(R.size)))


def test_criterion_3_specific_verdicts(acceptance):
    C2xC2 = DirectProduct((Cyclic(2), Cyclic(2)))
    ok = True

    v = classify_kothe(ZMod(4), Cyclic(2))
    R = group_ring(ZMod(4), Cyclic(2))
    w = is_pir(R, LEFT).witness
    ok &= acceptance(3, "Z_4[C_2] no with non-principal witness",
                     v.answer is Answer.NO and w is not None and non_principal_left(R, w))

    v = classify_kothe(ZMod(4), Cyclic(3))
    R = group_ring(ZMod(4), Cyclic(3))
    ok &= acceptance(3, "Z_4[C_3] yes, PIR on 64 elements",
                     v.answer is Answer.YES and R.size == 64 and naive.is_left_pir(R)
                     and is_pir(R, LEFT).is_pir and is_pir(R, RIGHT).is_pir)

    v = classify_kothe(GaloisField(2), C2xC2)
    R = group_ring(GaloisField(2), C2xC2)
    w = is_pir(R, LEFT).witness
    ok &= acceptance(3, "F_2[C_2 x C_2] no", v.answer is Answer.NO and non_principal_left(R, w))

    v = classify_kothe(GaloisField(2), Cyclic(4))
    R = group_ring(GaloisField(2), Cyclic(4))
    lattice = sorted((frozenset(I.elements) for I in all_two_sided_ideals(R)), key=len)
    chain = all(a < b for a, b in zip(lattice, lattice[1:]))
    ok &= acceptance(3, "F_2[C_4] yes with a 5-chain of ideals",
                     v.answer is Answer.YES and len(lattice) == 5 and chain
                     and len(naive.left_ideals(R)[0]) == 5)

    v = classify_kothe(GaloisField(2), Quaternion8())
    R = group_ring(GaloisField(2), Quaternion8())
    w = is_pir(R, LEFT).witness
    ok &= acceptance(3, "F_2[Q_8] no, non-PIR on 256 elements",
                     v.answer is Answer.NO and R.size == 256 and w is not None
                     and non_principal_left(R, w))

    first = [tuple(is_pir(group_ring(rd, gd), LEFT).witness.elements)
             for rd, gd in [(ZMod(4), Cyclic(2)), (GaloisField(2), C2xC2), (GaloisField(2), Quaternion8())]]
    clear_caches()
    second = [tuple(is_pir(group_ring(rd, gd), LEFT).witness.elements)
              for rd, gd in [(ZMod(4), Cyclic(2)), (GaloisField(2), C2xC2), (GaloisField(2), Quaternion8())]]
    ok &= acceptance(3, "witness ideals deterministic", first == second)
    assert ok


# ----------------------------------------------------------------- 4


def test_criterion_4_radical_identities(acceptance):
    ok = True
    for p, k in [(2, 1), (2, 2), (3, 1)]:
        R = group_ring(GaloisField(p), Cyclic(p ** k))
        J = frozenset(jacobson_radical(R).elements)
        ok &= acceptance(4, f"J(F_{p}[C_{p ** k}]) = augmentation ideal",
                         J == frozenset(augmentation_ideal(R).elements) == naive.jacobson_radical(R))
    for rd, gd in [(ZMod(4), Cyclic(3)), (ZMod(9), Cyclic(2))]:
        R = group_ring(rd, gd)
        ext = extend_coefficient_ideal(R, jacobson_radical(materialize_ring(rd)))
        ok &= acceptance(4, f"J({rd}[{gd}]) = J(R)G",
                         frozenset(ext.elements) == frozenset(jacobson_radical(R).elements)
                         == naive.jacobson_radical(R))
    semisimple = 0
    for rd, gd in corpus_pairs():
        if not isinstance(rd, GaloisField) or materialize_group(gd).order % rd.p == 0:
            continue
        semisimple += 1
        ok &= acceptance(4, f"J({rd}[{gd}]) = 0", jacobson_radical(group_ring(rd, gd)).is_zero())
    ok &= acceptance(4, "Maschke instances present", semisimple > 0)
    assert ok


# ----------------------------------------------------------------- 5


def nilpotency(R, J):
    powers = ideal_powers(R, J)
    return len(powers)


def test_criterion_5_idempotent_lifting(acceptance):
    ok = True
    rings_checked = 0
    targets = [(rd, None) for rd in ACCEPTANCE_RINGS] + corpus_pairs()
    for rd, gd in targets:
        R = materialize_ring(rd) if gd is None else group_ring(rd, gd)
        J = jacobson_radical(R)
        if J.is_zero():
            continue
        rings_checked += 1
        nu = nilpotency(R, J)
        bound = math.ceil(math.log2(nu)) if nu > 1 else 0
        Q, proj = quotient_ring(R, J)
        good = True
        for e in idempotents(Q):
            lift = lift_idempotent(R, J, e, (Q, proj))
            x = lift.element
            good &= int(R.mul[x, x]) == x and int(proj[x]) == e and lift.iterations <= bound
        ok &= acceptance(5, f"lifts in {R.name} (nu={nu})", good)
    ok &= acceptance(5, "rings with J != 0 present", rings_checked > 0)
    assert ok


# ----------------------------------------------------------------- 6


def surjections(RG):
    """Augmentation onto R, projection mod J, projection mod a principal left ideal."""
    L = regular_module(RG)
    out = [("augmentation", ModuleHom(L, trivial_module(RG), augmentation_map(RG), GROUP_RING))]
    J = jacobson_radical(RG)
    if not J.is_zero():
        Q, proj = quotient_module(L, J.members)
        out.append(("mod J", ModuleHom(L, Q, proj, GROUP_RING)))
    g = RG.basis.group.order
    x = element(RG, [1] + [0] * (g - 2) + [1]) if g > 1 else 1  # e + last basis element
    Q, proj = quotient_module(L, generated_submodule(L, [x]))
    out.append(("mod R[G](e+h)", ModuleHom(L, Q, proj, GROUP_RING)))
    return out


def test_criterion_6_averaging(acceptance):
    ok = True
    averaged = 0
    for rd, gd in corpus_pairs():
        R, G = materialize_ring(rd), materialize_group(gd)
        if not is_n_one_unit(R, G.order):
            continue
        RG = group_ring(rd, gd)
        for name, psi in surjections(RG):
            phit = find_coefficient_section(psi, cap=1 << 16)
            if phit is None:
                continue
            phi = average_section(psi, phit)
            averaged += 1
            ok &= acceptance(6, f"{RG.name} {name}",
                             phi.linearity == GROUP_RING and is_linear(phi) and is_section(psi, phi))
    ok &= acceptance(6, f"averaged sections ({averaged})", averaged > 0)

    RG = group_ring(GaloisField(2), Cyclic(2))
    psi = ModuleHom(regular_module(RG), trivial_module(RG), augmentation_map(RG), GROUP_RING)
    coeff = find_coefficient_section(psi)
    ok &= acceptance(6, "F_2[C_2] -> F_2 coefficient section exists",
                     coeff is not None and coeff.linearity == COEFFICIENT)
    # exhaustive: every map F_2 -> F_2[C_2] sending 1 into the fibre over 1
    sections = [ModuleHom(psi.target, psi.source, np.array([0, l]), GROUP_RING)
                for l in np.flatnonzero(psi.table == 1)]
    ok &= acceptance(6, "F_2[C_2] -> F_2 has no group-ring section",
                     not any(is_linear(s) for s in sections)
                     and find_coefficient_section(psi, linearity=GROUP_RING) is None)
    assert ok


# ----------------------------------------------------------------- 7


def test_criterion_7_admissibility(acceptance):
    ok = True
    checked = 0
    for rd, gd in corpus_pairs():
        R, G = materialize_ring(rd), materialize_group(gd)
        if is_local(R) is None or not is_pir(R, LEFT).is_pir or not is_n_one_unit(R, G.order):
            continue
        if not is_abelian_ring(group_ring(rd, gd)):
            continue
        checked += 1
        ok &= acceptance(7, f"{rd}[{gd}] admissible", is_r_admissible(R, G))
    ok &= acceptance(7, f"instances checked ({checked})", checked > 0)
    Z4 = materialize_ring(ZMod(4))
    ok &= acceptance(7, "(Z_4, C_3) true", is_r_admissible(Z4, materialize_group(Cyclic(3))) is True)
    ok &= acceptance(7, "(Z_4, C_2) false", is_r_admissible(Z4, materialize_group(Cyclic(2))) is False)
    assert ok


# ----------------------------------------------------------------- 8


def test_criterion_8_scan_without_large_rings(acceptance, monkeypatch):
    clear_caches()
    sizes = []
    original = rings.RingTable.__init__

    def recording(self, add, *args, **kwargs):
        sizes.append(len(add))
        original(self, add, *args, **kwargs)

    monkeypatch.setattr(rings.RingTable, "__init__", recording)
    R, G = materialize_ring(ZMod(4)), materialize_group(Cyclic(6))
    res = necessary_condition_scan(R, G, Assumptions(cap=CAP), include_whole=False)
    hit = [r for r in res.refutations if r.subgroup.order == 3 and r.size == 16]
    ok = acceptance(8, "scan surfaces refuting quotient Z_4[C_2]", bool(hit))
    v = classify_kothe(ZMod(4), Cyclic(6), Assumptions(cap=CAP))
    ok &= acceptance(8, "classify_kothe returns no", v.answer is Answer.NO)
    ok &= acceptance(8, f"largest ring materialized {max(sizes)} <= 4096", max(sizes) <= CAP)
    monkeypatch.undo()
    clear_caches()
    assert ok


@pytest.fixture(autouse=True, scope="module")
def _fresh_caches():
    clear_caches()
    yield
    clear_caches()


def test_u_in_f2s3_is_central():
    # e + g + g^2 is 1 plus the class sum of the 3-cycles
    RG = group_ring(GaloisField(2), Symmetric(3))
    G = materialize_group(Symmetric(3))
    g = G.labels.index("(1 2 3)")
    coeffs = [0] * 6
    for k in (0, g, G.power(g, 2)):
        coeffs[k] = 1
    assert center_mask(RG)[element(RG, coeffs)]
