import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import idx, naive, ring
from starbaer.errors import CheckFailure, PreconditionError
from starbaer.ideals import enumerate_ideals, from_elements, ideal_generated
from starbaer.spectrum import (ann_record, boolean_algebra, gc_orthogonality_check,
                               gc_orthogonality_scan, go_ideal, go_quantifier_form, hull, kernel,
                               kernel_hull_check, maximal_boolean_ideals, nil_radical,
                               prime_ideals, radical, saturation, spectrum, spectrum_comparison,
                               topology_report, non_star_closed_points)
from starbaer.strict import gcs_ideals, is_prime


def _els(points):
    return [p.ideal.elements for p in points]


def test_spectrum_examples():
    assert _els(spectrum(ring("z4"))) == [(0, 2)]
    assert _els(spectrum(ring("z6"))) == [(0, 3), (0, 2, 4)]
    assert _els(spectrum(ring("z5"))) == [(0,)]


@pytest.mark.parametrize("name", ["z4", "z5", "z6", "z12", "m2z2", "swapz3"])
def test_spectrum_matches_oracle(name):
    R, N = ring(name), naive(name)
    got = sorted(_els(spectrum(R)))
    want = sorted(tuple(sorted(idx(R, N, a) for a in Q)) for Q in oracles.spectrum(N))
    assert got == want


@pytest.mark.parametrize("name", ["z4", "z5", "z6", "z12", "m2z2", "m2z4", "m2z2xm2z3",
                                  "m2z3xm2z3"])
def test_boolean_mode_agrees(name):
    R = ring(name)
    assert _els(spectrum(R, "boolean")) == _els(spectrum(R, "brute"))
    assert spectrum_comparison(R)["agree"]


def test_boolean_mode_without_unity():
    with pytest.raises(PreconditionError):
        spectrum(ring("rng02"), "boolean")


def test_unknown_mode():
    with pytest.raises(ValueError):
        spectrum(ring("z4"), "fast")


def test_boolean_algebra():
    B = boolean_algebra(ring("z6"))
    assert B.carrier == (0, 1, 3, 4)
    assert sorted(B.atoms) == [3, 4]
    assert sorted(maximal_boolean_ideals(B)) == sorted(tuple(sorted(M)) for M in B.maximal_ideals)
    assert B.join(3, 4) == 1 and B.meet(3, 4) == 0 and B.complement(3) == 4
    with pytest.raises(PreconditionError):
        boolean_algebra(ring("rng02"))


@pytest.mark.parametrize("name", ["z12", "m2z2xm2z3", "m2z4", "m2z3xm2z3"])
def test_maximal_ideals_brute_force(name):
    B = boolean_algebra(ring(name))
    assert maximal_boolean_ideals(B) == sorted(tuple(sorted(M)) for M in B.maximal_ideals)


def test_nil_radical():
    assert nil_radical(ring("z4")).elements == (0, 2)
    assert nil_radical(ring("z12")).elements == (0, 6)
    assert nil_radical(ring("z6")).elements == (0,)


def test_hull_kernel_examples():
    R = ring("z6")
    pts = spectrum(R)
    I = from_elements(R, [0, 3])
    assert hull(R, I, pts) == (0,)
    assert kernel(R, (), pts).is_whole()
    assert kernel(R, (0, 1), pts).elements == (0,)
    assert radical(R, pts).elements == (0,)
    for J in gcs_ideals(R):
        assert kernel_hull_check(R, J, pts)[0]


def test_kernel_hull_gap_z4():
    # {0} is gcs but the only point is {0,2}
    R = ring("z4")
    ok, diff = kernel_hull_check(R, from_elements(R, [0]), spectrum(R))
    assert not ok and diff["extra"] == ["2"]


def test_ann_gap_z4():
    R = ring("z4")
    rec = ann_record(R, from_elements(R, [0, 2]), spectrum(R))
    # Ann = {0,2} while the kernel of the empty complement is all of Z4
    assert rec["isIdeal"] and rec["gcs"]
    assert rec["ann"] == ["0", "2"] and rec["kernel"] == ["0", "1", "2", "3"]
    assert not rec["kernelIdentity"]


def test_ann_identity_z6():
    R = ring("z6")
    pts = spectrum(R)
    for I in gcs_ideals(R):
        rec = ann_record(R, I, pts)
        assert rec["kernelIdentity"] and rec["gcs"] and rec["leftEqualsRight"]


@pytest.mark.parametrize("name", ["z4", "z6", "z12", "m2z2"])
def test_primes_match_oracle(name):
    R, N = ring(name), naive(name)
    got = sorted(P.elements for P in prime_ideals(R))
    want = sorted(tuple(sorted(idx(R, N, a) for a in P))
                  for P in oracles.all_ideals(N) if oracles.is_prime(N, P))
    assert got == want


@pytest.mark.parametrize("name", ["z4", "z6", "z12", "m2z2"])
def test_go_quantifier_matches_oracle(name):
    R, N = ring(name), naive(name)
    for P in prime_ideals(R):
        NP = frozenset(a for a in N.el if idx(R, N, a) in P.elements)
        want = sorted(idx(R, N, a) for a in oracles.go(N, NP))
        assert list(go_quantifier_form(R, P).elements) == want


def test_go_examples():
    R = ring("z6")
    for P in prime_ideals(R):
        assert go_ideal(R, P).ideal == P
    Z = ring("z4")
    assert go_ideal(Z, from_elements(Z, [0, 2])).ideal.elements == (0, 2)
    with pytest.raises(PreconditionError):
        go_ideal(Z, from_elements(Z, [0]))


def test_go_closed_form_gap():
    # in M2(Z3) x M2(Z3) the closed form {a : GC(a) in P} is not the quantifier form
    R = ring("m2z3xm2z3")
    fails = 0
    for P in prime_ideals(R):
        if saturation(R, P) != go_quantifier_form(R, P):
            fails += 1
            with pytest.raises(CheckFailure):
                go_ideal(R, P)
    assert fails > 0


def test_topology_z6():
    snap, rec = topology_report(ring("z6"))
    assert rec["hausdorff"]["holds"] and rec["discrete"] and rec["compact"]["holds"]
    assert rec["clopen"]["holds"] and rec["basis"]["covers"]
    assert rec["phi"]["bijective"] and rec["phi"]["continuous"]
    assert all(r["inverse"] for r in rec["psi"])
    assert rec["complementIdentity"]["holds"]
    assert snap.radical.elements == (0,)


def test_topology_z4_radical():
    snap, rec = topology_report(ring("z4"))
    assert rec["radical"] == ["0", "2"]
    assert len(snap.points) == 1


@pytest.mark.parametrize("name", ["z12", "m2z2xm2z3", "m2z4", "m2z2", "swapz3"])
def test_topology_properties(name):
    _, rec = topology_report(ring(name))
    assert rec["hausdorff"]["holds"] and rec["compact"]["holds"] and rec["discrete"]
    assert rec["phi"]["injective"] and rec["phi"]["intoMaximal"]


def test_gc_orthogonality_z6():
    R = ring("z6")
    pts = spectrum(R)
    for x in range(6):
        for y in range(6):
            lhs, rhs = gc_orthogonality_check(R, x, y, pts)
            assert lhs == rhs
    assert gc_orthogonality_scan(R, pts) == []


def test_gc_orthogonality_gap_m2z2():
    R = ring("m2z2")
    scan = gc_orthogonality_scan(R, spectrum(R))
    assert len(scan) == 3
    # nilpotent y has GC(y) = 0 but lies outside the single point {0}
    assert all(rhs and not lhs for _, _, lhs, rhs in scan)
    assert {R.encode(y) for _, y, _, _ in scan} == {"[[0,0],[1,0]]", "[[0,0],[0,1]]"}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["z12", "m2z4", "m2z2xm2z3"]).flatmap(
    lambda n: st.tuples(st.just(ring(n)), st.sampled_from(gcs_ideals(ring(n))))))
def test_hull_antitone_and_kernel_contains(case):
    R, I = case
    pts = spectrum(R)
    H = hull(R, I, pts)
    K = kernel(R, H, pts)
    assert I <= K
    for J in gcs_ideals(R):
        if I <= J:
            assert set(hull(R, J, pts)) <= set(H)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["z12", "m2z4", "m2z2xm2z3", "z6"]).flatmap(
    lambda n: st.tuples(st.just(ring(n)), st.integers(0, ring(n).size - 1))))
def test_points_prime_among_gcs(case):
    R, x = case
    for p in spectrum(R):
        assert not p.ideal.is_whole()
        G = ideal_generated(R, [x])
        if not G <= p.ideal:
            assert not x in p.ideal.elements


def test_points_are_prime_in_z12():
    R = ring("z12")
    for p in spectrum(R):
        assert is_prime(R, p.ideal)
    assert len(enumerate_ideals(R)) == 6


@pytest.mark.parametrize("name", ["z4", "z6", "z12", "m2z2", "m2z4", "m2z2xm2z3", "m2z3xm2z3",
                                  "swapz3", "rng02", "z5"])
def test_points_star_closed(name):
    R = ring(name)
    assert non_star_closed_points(R, spectrum(R)) == []
