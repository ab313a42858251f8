import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from kothe.descriptors import (
    CapExceeded,
    Cyclic,
    DescriptorError,
    DirectProduct,
    GaloisField,
    GroupRingOf,
    IntegersMarker,
    Product,
    Quaternion8,
    Quotient,
    Symmetric,
    ZMod,
    ring_from_json,
    ring_to_json,
)
from kothe.materialize import NonArtinianRing, materialize_ring
from kothe.rings import (
    LEFT,
    RIGHT,
    TWO_SIDED,
    InvalidRing,
    NotAbelianError,
    RingTable,
    additive_span,
    all_one_sided_ideals,
    all_two_sided_ideals,
    center_mask,
    check_ideal,
    check_ring_axioms,
    decompose_into_local,
    galois_field,
    generated_ideal,
    ideal_powers,
    ideal_sum,
    idempotents,
    is_abelian_ring,
    is_division_ring,
    is_kothe_abelian_oracle,
    is_local,
    is_pir,
    jacobson_radical,
    least_irreducible,
    lift_idempotent,
    nilpotency_index,
    non_central_idempotents,
    principal_ideals,
    quotient_ring,
    radical_nilpotency_index,
    units,
    verify_decomposition,
    zmod,
)

SMALL_RINGS = [
    ZMod(4), ZMod(6), ZMod(8), ZMod(12), GaloisField(2, 2), GaloisField(3, 2),
    Product((ZMod(2), ZMod(4))),
    GroupRingOf(GaloisField(2), Cyclic(2)),
    GroupRingOf(GaloisField(2), Cyclic(4)),
    GroupRingOf(GaloisField(2), DirectProduct((Cyclic(2), Cyclic(2)))),
    GroupRingOf(GaloisField(2), Symmetric(3)),
    GroupRingOf(ZMod(4), Cyclic(2)),
    GroupRingOf(GaloisField(3), Cyclic(3)),
]
IDS = [str(d) for d in SMALL_RINGS]


def R_(d):
    return materialize_ring(d)


@pytest.mark.parametrize("d", SMALL_RINGS, ids=IDS)
def test_ring_axioms(d):
    check_ring_axioms(R_(d))


def test_axiom_check_catches_corruption():
    R = zmod(6)
    mul = R.mul.copy()
    mul[2, 3], mul[3, 2] = 1, 1
    with pytest.raises(InvalidRing):
        RingTable(R.add, mul, 1, name="bad", validate=True)


@pytest.mark.parametrize("p,k,poly", [(2, 2, (1, 1, 1)), (3, 2, (1, 0, 1)), (2, 3, (1, 0, 1, 1)),
                                      (5, 2, (1, 1, 1))])
def test_least_irreducible(p, k, poly):
    assert least_irreducible(p, k) == poly


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (5, 1)])
def test_galois_field_is_a_field(p, k):
    F = galois_field(p, k)
    assert F.size == p ** k and F.characteristic == p
    assert is_division_ring(F) and F.is_commutative
    assert len(units(F)) == F.size - 1


@pytest.mark.parametrize("d", SMALL_RINGS, ids=IDS)
def test_units_match_naive(d):
    R = R_(d)
    assert set(units(R)) == naive.units(R)


@pytest.mark.parametrize("d", SMALL_RINGS, ids=IDS)
def test_left_ideals_and_pir_match_naive(d):
    R = R_(d)
    ideals, principal = naive.left_ideals(R)
    ours = {frozenset(I.elements) for I in all_one_sided_ideals(R, LEFT)}
    assert ours == ideals
    assert {frozenset(I.elements) for I in principal_ideals(R, LEFT)} == principal
    assert is_pir(R, LEFT).is_pir == (ideals == principal)


@pytest.mark.parametrize("d", SMALL_RINGS, ids=IDS)
def test_radical_matches_naive(d):
    R = R_(d)
    assert frozenset(jacobson_radical(R).elements) == naive.jacobson_radical(R)


@pytest.mark.parametrize("d", SMALL_RINGS, ids=IDS)
def test_idempotents_and_center_match_naive(d):
    R = R_(d)
    assert idempotents(R) == naive.idempotents(R)
    nc = [e for e in naive.idempotents(R) if not naive.is_central(R, e)]
    assert non_central_idempotents(R) == nc
    assert is_abelian_ring(R) == (not nc)
    C = center_mask(R)
    assert [x for x in range(R.size) if C[x]] == [x for x in range(R.size) if naive.is_central(R, x)]


def test_pir_witness_is_not_principal(f2klein):
    res = is_pir(f2klein, LEFT)
    assert not res.is_pir
    w = frozenset(res.witness.elements)
    _, principal = naive.left_ideals(f2klein)
    assert w not in principal and w in naive.left_ideals(f2klein)[0]
    assert res.witness.size == 8  # the augmentation ideal


def test_f2s3_is_pir_both_sides(f2s3):
    assert is_pir(f2s3, LEFT).is_pir and is_pir(f2s3, RIGHT).is_pir


def test_two_sided_ideals_of_f2s3(f2s3):
    left, _ = naive.left_ideals(f2s3)
    two = {I for I in left if all(f2s3.mul[x, r] in I for x in I for r in range(64))}
    assert {frozenset(I.elements) for I in all_two_sided_ideals(f2s3)} == two
    assert len(two) == 6  # F_2[S_3] ~ F_2[C_2] x M_2(F_2): 3 * 2 ideals


def test_radical_of_z8():
    R = zmod(8)
    J = jacobson_radical(R)
    assert J.elements == [0, 2, 4, 6]
    assert radical_nilpotency_index(R) == 3
    assert [I.size for I in ideal_powers(R, J)] == [4, 2, 1]


def test_local_rings():
    assert is_local(zmod(4)) is not None
    assert is_local(zmod(6)) is None
    assert is_local(R_(GroupRingOf(GaloisField(2), Cyclic(4)))) is not None


def test_decompose_z12():
    R = zmod(12)
    factors = decompose_into_local(R)
    assert sorted((f.factor.size, f.residue_char, f.semiprimitive) for f in factors) == [
        (3, 3, True), (4, 2, False)]
    assert sorted(f.idempotent for f in factors) == [4, 9]
    assert verify_decomposition(R, factors)


def test_decompose_rejects_non_abelian(f2s3):
    with pytest.raises(NotAbelianError) as exc:
        decompose_into_local(f2s3)
    assert exc.value.witness == non_central_idempotents(f2s3)[0]
    with pytest.raises(NotAbelianError):
        is_kothe_abelian_oracle(f2s3)


def test_quotient_z8_by_4():
    R = zmod(8)
    Q, proj = quotient_ring(R, generated_ideal(R, [4]))
    assert Q.size == 4 and Q.modulus == 4
    assert list(proj) == [0, 1, 2, 3, 0, 1, 2, 3]


def test_lift_idempotents_of_z12_mod_radical():
    R = zmod(12)
    J = jacobson_radical(R)
    assert J.elements == [0, 6]
    Q, proj = quotient_ring(R, J)
    lifts = sorted(lift_idempotent(R, J, e, (Q, proj)).element for e in idempotents(Q))
    assert lifts == [0, 1, 4, 9]


def test_lift_rejects_non_nilpotent():
    R = zmod(6)
    with pytest.raises(ValueError):
        lift_idempotent(R, generated_ideal(R, [2]), 1)


def test_materialize_descriptors():
    assert materialize_ring(Quotient(ZMod(8), (4,))).size == 4
    assert materialize_ring(Product((ZMod(2), GaloisField(3)))).size == 6
    with pytest.raises(NonArtinianRing):
        materialize_ring(IntegersMarker())
    with pytest.raises(CapExceeded):
        materialize_ring(GroupRingOf(GaloisField(2), DirectProduct((Quaternion8(), Cyclic(2)))))
    with pytest.raises(DescriptorError):
        materialize_ring(Quotient(ZMod(8), (1,)))


def test_ring_json_round_trip():
    for d in SMALL_RINGS + [IntegersMarker(), Quotient(ZMod(8), (4,))]:
        assert ring_from_json(ring_to_json(d)) == d
    for bad in [{"kind": "zmod", "n": 1}, {"kind": "galois_field", "p": 4}, {"kind": "zmod", "n": "3"},
                {"kind": "group_ring", "ring": {"kind": "zmod", "n": 2}}]:
        with pytest.raises(DescriptorError):
            ring_from_json(bad)


# ---------------------------------------------------------------- properties

RINGS = st.sampled_from(SMALL_RINGS)


@settings(max_examples=50, deadline=None)
@given(RINGS, st.data())
def test_generated_ideals_are_ideals(d, data):
    R = R_(d)
    gens = data.draw(st.lists(st.integers(0, R.size - 1), max_size=3))
    for side in (LEFT, RIGHT, TWO_SIDED):
        I = generated_ideal(R, gens, side)
        assert check_ideal(R, I.members, side)
        assert all(I.members[g] for g in gens)


@settings(max_examples=50, deadline=None)
@given(RINGS, st.data())
def test_ideal_sum_is_least_upper_bound(d, data):
    R = R_(d)
    a, b = data.draw(st.integers(0, R.size - 1)), data.draw(st.integers(0, R.size - 1))
    I, J = generated_ideal(R, [a], LEFT), generated_ideal(R, [b], LEFT)
    S = ideal_sum(R, I, J)
    assert I.issubset(S) and J.issubset(S)
    assert S == generated_ideal(R, [a, b], LEFT)


@settings(max_examples=30, deadline=None)
@given(RINGS)
def test_radical_is_nilpotent_two_sided(d):
    R = R_(d)
    J = jacobson_radical(R)
    assert check_ideal(R, J.members, TWO_SIDED)
    assert nilpotency_index(R, J) is not None


@settings(max_examples=30, deadline=None)
@given(RINGS, st.data())
def test_additive_span_is_subgroup(d, data):
    R = R_(d)
    elems = data.draw(st.lists(st.integers(0, R.size - 1), max_size=3))
    S = np.flatnonzero(additive_span(R, elems))
    assert 0 in S
    assert np.isin(R.add[np.ix_(S, S)], S).all()
