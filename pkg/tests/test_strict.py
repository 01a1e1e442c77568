import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import idx, naive, ring
from starbaer.errors import CheckFailure, PreconditionError
from starbaer.ideals import enumerate_ideals, from_elements, ideal_generated
from starbaer.projections import central_projection_indices
from starbaer.strict import (as_gcs, fixture_set, gc_inequality_failures, gc_set_closure,
                             gcs_arithmetic_check, gcs_closure, gcs_ideals, is_gc_set, is_gcs,
                             is_prime_gcs, is_restricted, prime_witness, separate)


def _I(R, els):
    return from_elements(R, els)


@pytest.mark.parametrize("name", ["z4", "z6", "z12", "m2z2", "swapz3", "rng02"])
def test_gcs_ideals_match_oracle(name):
    R, N = ring(name), naive(name)
    got = {I.elements for I in gcs_ideals(R)}
    want = {tuple(sorted(idx(R, N, a) for a in I)) for I in oracles.gcs_ideals(N)}
    assert got == want


@pytest.mark.parametrize("name", ["z4", "z6", "z12", "m2z2"])
def test_prime_gcs_matches_oracle(name):
    R, N = ring(name), naive(name)
    for I in oracles.all_ideals(N):
        J = _I(R, [idx(R, N, a) for a in I])
        assert is_prime_gcs(R, J) == oracles.prime_gcs(N, I)


def test_gcs_examples():
    z4, z6 = ring("z4"), ring("z6")
    assert is_gcs(z4, _I(z4, [0]))[0]
    assert is_gcs(z6, _I(z6, [0, 3]))[0]
    M = ring("m2z4")
    twoM = fixture_set(M, M.spec.fixtures[0])
    assert len(twoM) == 16
    assert is_gcs(M, twoM)[0]
    assert not is_restricted(M, twoM)
    assert is_restricted(z6, _I(z6, [0, 3]))
    assert is_restricted(z4, _I(z4, [0]))
    with pytest.raises(PreconditionError):
        as_gcs(ring("m2z2"), ideal_generated(ring("m2z2"), []).__class__(
            ring("m2z2"), _nonstrict_mask()))


def _nonstrict_mask():
    # {0, E11} in M2(Z2) is not an ideal
    import numpy as np
    R = ring("m2z2")
    m = np.zeros(R.size, dtype=bool)
    m[[R.zero, R.index([[1, 0], [0, 0]])]] = True
    return m


def test_gcs_closure():
    z4 = ring("z4")
    assert gcs_closure(z4, []).ideal.elements == (0,)
    assert gcs_closure(z4, [2]).ideal.elements == (0, 2)
    assert gcs_closure(z4, [1]).ideal.is_whole()
    M = ring("m2z2")
    x = M.index([[1, 0], [0, 0]])
    assert gcs_closure(M, [x]).ideal.is_whole()


def test_prime_gcs_examples():
    z4, z6 = ring("z4"), ring("z6")
    assert is_prime_gcs(z4, _I(z4, [0, 2]))
    assert not is_prime_gcs(z4, _I(z4, [0]))
    I, J = prime_witness(z4, _I(z4, [0]))
    assert I.elements == J.elements == (0, 2)
    assert is_prime_gcs(z6, _I(z6, [0, 2, 4]))


def test_gc_sets():
    z4, z6 = ring("z4"), ring("z6")
    assert is_gc_set(z4, [1])[0]
    for e in central_projection_indices(z6):
        if e:
            assert is_gc_set(z6, [e])[0]
    assert not is_gc_set(z6, [0, 1])[0]
    assert not is_gc_set(z6, [])[0]
    assert not is_gc_set(z6, [2])[0]
    assert gc_set_closure(z6, [2]) == frozenset([2, 4])


def test_separation_examples():
    z4, z6 = ring("z4"), ring("z6")
    assert separate(z4, _I(z4, [0]), [1]).ideal.elements == (0, 2)
    assert separate(z6, _I(z6, [0, 3]), [4]).ideal.elements == (0, 3)
    with pytest.raises(PreconditionError):
        separate(z4, _I(z4, [0, 2]), [2])


def test_separation_gap_reported():
    # whenever separation succeeds the result contains I and misses M
    R = ring("z12")
    for I in gcs_ideals(R):
        for M in ([1], [4], [9], [3, 9]):
            if I.isdisjoint(M) and is_gc_set(R, M)[0]:
                try:
                    Q = separate(R, I, M).ideal
                except CheckFailure:
                    continue
                assert I <= Q and Q.isdisjoint(M)


def test_sum_product_examples():
    z4, z6 = ring("z4"), ring("z6")
    assert gcs_arithmetic_check(z4, _I(z4, [0]), _I(z4, [0])) == (1, 1)
    assert gcs_arithmetic_check(z6, _I(z6, [0, 2, 4]), _I(z6, [0, 3])) == (1, 1)
    M = ring("m2z4")
    twoM = fixture_set(M, M.spec.fixtures[0])
    n, m = gcs_arithmetic_check(M, twoM, twoM)
    assert is_gcs(M, twoM)[0] and (n, m) == (1, 1)


def test_gc_inequalities_hold_everywhere():
    for name in ["z4", "z6", "z12", "m2z2", "m2z4"]:
        R = ring(name)
        el = list(range(R.size))
        assert gc_inequality_failures(R, el, el) == []


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["z12", "m2z4", "m2z2xm2z3"]).flatmap(
    lambda n: st.tuples(st.just(ring(n)), st.lists(st.integers(0, ring(n).size - 1), max_size=3))))
def test_gcs_closure_is_least(case):
    R, S = case
    G = gcs_closure(R, S).ideal
    assert is_gcs(R, G)[0]
    for I in gcs_ideals(R):
        if all(I.mask[s] for s in S):
            assert G <= I


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["z12", "m2z2", "z6"]).flatmap(
    lambda n: st.tuples(st.just(ring(n)), st.lists(st.integers(0, ring(n).size - 1),
                                                   min_size=1, max_size=3))))
def test_gc_set_closure_properties(case):
    R, S = case
    C = gc_set_closure(R, S)
    assert set(S) <= C
    if R.zero not in C:
        assert is_gc_set(R, C)[0]


def test_prime_gcs_incomparable():
    for name in ["z6", "z12", "m2z2xm2z3"]:
        R = ring(name)
        primes = [Q for Q in gcs_ideals(R) if is_prime_gcs(R, Q)]
        for P in primes:
            for Q in primes:
                assert P == Q or not P <= Q


def test_enumeration_contains_gcs():
    R = ring("z12")
    assert set(gcs_ideals(R)) <= set(enumerate_ideals(R))
