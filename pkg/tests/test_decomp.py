import pytest
from hypothesis import given
from hypothesis import strategies as st

from bderange import decomp, typeb
from bderange.decomp import SignedCycle
from bderange.polyseries import IntPolynomial
from bderange.sigperm import SignedPermutation, enumerate_derangements_b, enumerate_group, exc_b

PI = (3, -5, 4, 2, 9, -6, 8, 7, -1)


def cyc(*entries):
    return SignedCycle(entries)


def test_cycle_decomposition_of_worked_example():
    cd = decomp.cycle_decompose(PI)
    assert {str(c) for c in cd.cycles} == {"(7 8)", "(-6)", "(-5 9 -1 3 4 2)"}
    assert cd.to_permutation() == PI


def test_u_and_v_on_worked_cycles():
    assert decomp.u_algorithm(cyc(-5, 9, -1, 3, 4, 2)) == [cyc(-5, 9), cyc(-1, 3, 4, 2)]
    assert decomp.v_algorithm(cyc(-1, 3, 4, 2)) == [cyc(-1, 2), cyc(3, 4)]


def test_worked_sequence_in_listed_order():
    u, p = decomp.decompose_sequence([cyc(7, 8), cyc(-6), cyc(-5, 9, -1, 3, 4, 2)])
    assert "".join(map(str, u)) == "(7 8)(-6)(-5 9)(-1 3 4 2)"
    assert "".join(map(str, p)) == "(7 8)(-6)(-5 9)(-1 2)(3 4)"
    assert sum(decomp.cycle_exc_b(c) for c in p) == exc_b(PI) == 5


def test_canonical_p_decomposition():
    p = decomp.p_decompose(PI)
    assert str(p) == "(7 8)(-5 9)(-1 2)(3 4)(-6)"
    assert p.weight_exponent == 5
    assert p.singletons == frozenset({-6})


def test_reduction_worked_example():
    r = decomp.reduce_fixed_points((4, 6, 3, -7, 5, 1, -2))
    assert r.non_fixed == (1, 2, 4, 6, 7)
    assert r.fixed == (3, 5)
    assert r.reduced == (3, 4, -5, 1, -2)
    assert decomp.expand(r) == (4, 6, 3, -7, 5, 1, -2)


@pytest.mark.parametrize("n", range(0, 6))
def test_reduction_roundtrip_on_whole_group(n):
    for s in enumerate_group(n):
        r = decomp.reduce_fixed_points(s)
        assert decomp.expand(r) == s
        assert exc_b(r.reduced) == exc_b(s)


def test_expand_validates():
    good = decomp.reduce_fixed_points((2, 1, 3))
    with pytest.raises(ValueError):
        decomp.expand(decomp.Reduction((1, 2), (2,), good.reduced))
    with pytest.raises(ValueError):
        decomp.expand(decomp.Reduction((1, 2), (3,), SignedPermutation((1, 2))))


@pytest.mark.parametrize(
    "entries,unimodal,prime",
    [
        ((-1,), True, True),
        ((1,), False, False),
        ((1, 2), True, True),
        ((-1, 3, 4, 2), True, False),
        ((-1, 2), True, True),
        ((-5, 9, -1, 3, 4, 2), False, False),
        ((1, 3, 2), True, True),
        ((1, 3, 4, 2), True, False),
        ((1, 2, 3), True, True),
    ],
)
def test_unimodal_and_prime(entries, unimodal, prime):
    c = SignedCycle(entries)
    assert decomp.is_unimodal(c) is unimodal
    assert decomp.is_prime(c) is prime


def test_cycle_validation():
    with pytest.raises(ValueError):
        SignedCycle((2, 1))
    with pytest.raises(ValueError):
        SignedCycle((1, -1))
    assert SignedCycle.from_rotation((3, -2, 1)) == cyc(-2, 1, 3)


def test_cycle_text_roundtrip():
    cd = decomp.cycle_decompose(PI)
    assert decomp.CycleDecomposition.parse(str(cd)) == cd


@pytest.mark.parametrize("n", range(1, 6))
def test_stages_produce_unimodal_then_prime(n):
    for s in enumerate_derangements_b(n):
        for c in decomp.cycle_decompose(s).cycles:
            for u in decomp.u_algorithm(c):
                assert decomp.is_unimodal(u)
                assert all(decomp.is_prime(p) for p in decomp.v_algorithm(u))


@pytest.mark.parametrize("n", range(1, 6))
def test_conservation_and_injectivity(n):
    images = {}
    for s in enumerate_derangements_b(n):
        p = decomp.p_decompose(s)
        assert p.weight_exponent == exc_b(s)
        images[p.canonical_key()] = s
    assert len(images) == typeb.derangement_b(n)(1)


@pytest.mark.parametrize("n", range(0, 9))
def test_composition_weights(n):
    assert decomp.compositions_weight_sum(n) == typeb.derangement_b(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_image_weight_histogram(n):
    h = decomp.image_weight_histogram(n)
    assert IntPolynomial([h.get(k, 0) for k in range(n + 1)]) == typeb.derangement_b(n)


def test_type_weight_gf():
    # one 2-cycle on 2 labelled points: 2^2 * q
    assert decomp.type_weight_gf(0, [2]) == IntPolynomial([0, 4])
    assert decomp.type_weight_gf(1, []) == IntPolynomial.q()
    with pytest.raises(ValueError):
        decomp.type_weight_gf(0, [1])
    with pytest.raises(ValueError):
        decomp.type_weight_gf(0, [2], n=3)


def test_p_decompose_rejects_fixed_points():
    with pytest.raises(ValueError):
        decomp.p_decompose((1, -2))


def test_p_decomposition_rejects_non_prime():
    with pytest.raises(ValueError):
        decomp.PDecomposition((cyc(1, 3, 4, 2),))


def test_u_stage_keeps_fixed_points():
    assert decomp.u_stage((1, 2)) == [cyc(2), cyc(1)]


@given(st.permutations(range(1, 8)))
def test_all_positive_derangements_decompose(perm):
    # type A derangements are type B derangements with no bars
    if any(v == i for i, v in enumerate(perm, 1)):
        return
    p = decomp.p_decompose(perm)
    assert p.weight_exponent == exc_b(perm)
    assert all(len(c) > 1 for c in p.cycles)
