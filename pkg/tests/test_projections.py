import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import SMALL, idx, naive, ring, spec_ring
from starbaer.errors import LatticeError, NoUnityError, PreconditionError
from starbaer.projections import (brute_inf, brute_sup, central_cover, central_cover_table,
                                  central_projection_indices, equivalent, gc_cover, gc_table,
                                  is_equivalent, is_lattice, lattice_formula,
                                  lattice_formula_agreement, leq, parallelogram_law, pc_check,
                                  position_p_gc_check, position_p_prime, proj_inf, proj_sup,
                                  projection_indices, very_orthogonal, orthogonal_decomposition,
                                  gc_remark_conflicts)

ORACLE_RINGS = SMALL + ["m2z4"]


@pytest.mark.parametrize("name", ORACLE_RINGS)
def test_projections_match_oracle(name):
    R, N = ring(name), naive(name)
    assert sorted(projection_indices(R)) == sorted(idx(R, N, e) for e in oracles.projections(N))
    assert sorted(central_projection_indices(R)) == sorted(
        idx(R, N, e) for e in oracles.central_projections(N))


def test_projection_examples():
    assert list(projection_indices(ring("z4"))) == [0, 1]
    assert list(central_projection_indices(ring("z6"))) == [0, 1, 3, 4]


@pytest.mark.parametrize("name", ORACLE_RINGS)
def test_covers_match_oracle(name):
    R, N = ring(name), naive(name)
    cover = central_cover_table(R)[0]
    gcv = gc_table(R)[0]
    for a in N.el:
        x = idx(R, N, a)
        c, g = oracles.central_cover(N, a), oracles.gc(N, a)
        assert int(cover[x]) == (-1 if c is None else idx(R, N, c))
        assert int(gcv[x]) == (-1 if g is None else idx(R, N, g))


def test_cover_examples():
    R = ring("z4")
    r = gc_cover(R, 2)
    assert (r.cover.value, r.exponent) == (0, 2)
    assert central_cover(R, 0).cover.value == 0
    for h in central_projection_indices(ring("z6")):
        assert central_cover(ring("z6"), h).cover.value == h
    M = ring("m2z2")
    assert gc_cover(M, M.index([[1, 0], [0, 0]])).cover.value == M.one


def test_doubled_matrix_covers():
    R = ring("m2z3xm2z3")
    A = R.index([[[1, 0], [0, 1]], [[0, 1], [0, 0]]])
    assert R.encode(central_cover(R, A).cover.value) == "([[1,0],[0,1]],[[1,0],[0,1]])"
    g = gc_cover(R, A)
    assert R.encode(g.cover.value) == "([[1,0],[0,1]],[[0,0],[0,0]])"
    assert g.exponent == 2


def test_no_cover_without_unity():
    R = ring("rng02")
    assert central_cover(R, 1).cover is None


@pytest.mark.parametrize("name", SMALL + ["m2z4"])
def test_brute_lattice_matches_oracle(name):
    R, N = ring(name), naive(name)
    P = oracles.projections(N)
    for e in P:
        for f in P:
            s, i = oracles.sup(N, e, f), oracles.inf(N, e, f)
            ie, jf = idx(R, N, e), idx(R, N, f)
            if s is None:
                with pytest.raises(LatticeError):
                    brute_sup(R, ie, jf)
            else:
                assert brute_sup(R, ie, jf) == idx(R, N, s)
            if i is not None:
                assert brute_inf(R, ie, jf) == idx(R, N, i)


def test_lattice_examples():
    R = ring("z6")
    assert proj_sup(R, 3, 4).value == 1
    assert proj_sup(R, 3, 4, "GC").value == 1
    assert proj_inf(R, 3, 4, "C").value == 0
    assert proj_sup(R, 3, 3).value == proj_inf(R, 3, 3).value == 3


def test_formula_needs_classification():
    with pytest.raises(PreconditionError):
        proj_sup(ring("m2z4"), 0, 0, "C")


@pytest.mark.parametrize("name", ["z5", "z6"])
def test_formula_agrees_on_commutative_baer(name):
    R = ring(name)
    assert lattice_formula_agreement(R, "C") == []
    assert lattice_formula_agreement(R, "GC") == []


def test_formula_gap_in_m2z2():
    # the C/GC formula for e = E22, f = 0 returns f + C(E22) = I, not E22
    R = ring("m2z2")
    e = R.index([[0, 0], [0, 1]])
    join, meet = lattice_formula(R, e, R.zero, "C")
    assert join == R.one and brute_sup(R, e, R.zero) == e
    assert any(d["e"] == e and d["f"] == R.zero for d in lattice_formula_agreement(R, "GC"))


def test_equivalence():
    M = ring("m2z2")
    e11, e22 = M.index([[1, 0], [0, 0]]), M.index([[0, 0], [0, 1]])
    w = equivalent(M, e11, e22)
    assert w is not None
    assert M.mul(M.star(w.w), w.w) == e11 and M.mul(w.w, M.star(w.w)) == e22
    assert is_equivalent(M, e11, e11)
    S = ring("swapz3")
    assert equivalent(S, S.index([1, 0]), S.index([0, 1])) is None


@pytest.mark.parametrize("name", ["m2z2", "m2z4", "z6", "swapz3"])
def test_equivalence_matches_oracle(name):
    R, N = ring(name), naive(name)
    P = oracles.projections(N)
    for e in P:
        for f in P:
            assert is_equivalent(R, idx(R, N, e), idx(R, N, f)) == oracles.equivalent(N, e, f)


def test_position_and_very_orthogonal():
    R = ring("z6")
    assert position_p_prime(R, 1, 1)
    assert not position_p_prime(R, 1, 0)
    for e in projection_indices(R):
        for f in projection_indices(R):
            lhs, rhs = position_p_gc_check(R, e, f)
            assert lhs == rhs
    P = ring("m2z2xm2z3")
    I2, O2 = [[1, 0], [0, 1]], [[0, 0], [0, 0]]
    h = very_orthogonal(P, P.index([I2, O2]), P.index([O2, I2]))
    assert h == P.index([I2, O2])
    with pytest.raises(NoUnityError):
        position_p_prime(ring("rng02"), 0, 0)


def test_position_gc_gap_m2z2():
    R = ring("m2z2")
    e = R.index([[0, 0], [0, 1]])
    assert position_p_gc_check(R, e, e) == (True, False)


def test_parallelogram_and_pc():
    assert parallelogram_law(ring("z6")) == (True, None)
    ok, pairs = pc_check(ring("m2z2"))
    M = ring("m2z2")
    e11, e22 = M.index([[1, 0], [0, 0]]), M.index([[0, 0], [0, 1]])
    assert ok
    assert (e11, e22, e11, e22) in pairs
    ok, pair = parallelogram_law(ring("m2z3xm2z3"))
    assert not ok
    assert pc_check(ring("m2z3xm2z3"))[0] is False


def test_orthogonal_decomposition():
    R = ring("z6")
    for e in projection_indices(R):
        for f in projection_indices(R):
            e1, e2, f1, f2 = orthogonal_decomposition(R, e, f)
            assert R.add(e1, e2) == e and R.add(f1, f2) == f
    assert orthogonal_decomposition(R, 1, 0) == (0, 1, 0, 0)
    assert orthogonal_decomposition(R, 3, 3) == (3, 0, 3, 0)


def test_lattice_flag_on_bundled():
    for name in SMALL + ["m2z4", "m2z2xm2z3"]:
        assert is_lattice(ring(name))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["m2z4", "m2z2xm2z3", "z12"]).flatmap(
    lambda n: st.tuples(st.just(ring(n)), st.sampled_from(projection_indices(ring(n))),
                        st.sampled_from(projection_indices(ring(n))))))
def test_sup_inf_bounds(case):
    R, e, f = case
    s, i = brute_sup(R, e, f), brute_inf(R, e, f)
    assert leq(R, e, s) and leq(R, f, s)
    assert leq(R, i, e) and leq(R, i, f)
    assert brute_sup(R, f, e) == s and brute_inf(R, f, e) == i


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["m2z4", "m2z2xm2z3", "z12", "m2z2"]).flatmap(
    lambda n: st.tuples(st.just(ring(n)), st.integers(0, ring(n).size - 1))))
def test_gc_below_central_cover(case):
    # hx = x gives x^n h = x^n, so GC(x) <= C(x)
    R, x = case
    c, g = int(central_cover_table(R)[0][x]), int(gc_table(R)[0][x])
    assert leq(R, g, c)
    assert R.mul(g, g) == g and R.star(g) == g


def test_gc_shortcut_conflicts():
    # (I, N) is not nilpotent and not central, yet GC((I, N)) = (I, 0)
    R = ring("m2z3xm2z3")
    x = R.index([[[1, 0], [0, 1]], [[0, 1], [0, 0]]])
    assert x in gc_remark_conflicts(R)
    for name in ["m2z2", "m2z4", "z6", "swapz3"]:
        assert gc_remark_conflicts(ring(name)) == []


@pytest.mark.parametrize("name", ["m2z2", "m2z4", "z12"])
def test_gc_shortcut_conflicts_match_oracle(name):
    R, N = ring(name), naive(name)
    want = sorted(idx(R, N, a) for a in N.el
                  if not oracles.is_central(N, a)
                  and oracles.gc(N, a) != (N.zero if oracles.is_nilpotent(N, a) else N.one))
    assert sorted(gc_remark_conflicts(R)) == want


def test_gc_shortcut_conflicts_small_product():
    # M2(Z2) x Z3: (E11, 0) is neither nilpotent nor covered by 1
    N = oracles.direct(oracles.m2(2), oracles.zn(3))
    R = spec_ring('{"kind":"product","involution":"componentwise","factors":['
                  '{"kind":"matrix","size":2,"involution":"transpose","base":{"kind":"zn","n":2}},'
                  '{"kind":"zn","n":3,"involution":"identity"}]}')
    want = sorted(idx(R, N, a) for a in N.el
                  if not oracles.is_central(N, a)
                  and oracles.gc(N, a) != (N.zero if oracles.is_nilpotent(N, a) else N.one))
    assert want and sorted(gc_remark_conflicts(R)) == want
