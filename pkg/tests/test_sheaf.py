import pytest
from hypothesis import given, settings, strategies as st

from conftest import ring
from starbaer.errors import CheckFailure
from starbaer.ideals import from_elements
from starbaer.sheaf import (gamma, gamma_size, gelfand, gelfand_iso_check, gelfand_table,
                            section_op, section_power_root, section_power_scan, stalk, stalks,
                            trajectory_bound)
from starbaer.spectrum import spectrum


def test_stalk_sizes():
    assert [s.size for s in stalks(ring("z6"))] == [3, 2]
    assert [s.size for s in stalks(ring("z4"))] == [2]
    assert [s.size for s in stalks(ring("z5"))] == [5]


@pytest.mark.parametrize("name", ["z4", "z6", "z12", "m2z2", "m2z4", "m2z2xm2z3"])
def test_stalk_is_quotient(name):
    # brute force: cosets of Q partition R into |R|/|Q| classes respecting + and *
    R = ring(name)
    for s in stalks(R):
        Q = s.ideal
        assert s.size * len(Q) == R.size
        for a in range(0, R.size, max(1, R.size // 16)):
            for b in range(0, R.size, max(1, R.size // 16)):
                ca, cb = int(s.coset_of[a]), int(s.coset_of[b])
                assert int(s.coset_of[R.add(a, b)]) == int(s.add[ca, cb])
                assert int(s.coset_of[R.mul(a, b)]) == int(s.mul[ca, cb])
            assert Q.mask[R.sub(a, s.reps[int(s.coset_of[a])])]


def test_stalk_rejects_non_ideal():
    R = ring("z4")
    with pytest.raises(CheckFailure):
        stalk(R, from_elements(R, [0, 1]))


def test_gelfand_examples():
    R = ring("z6")
    assert gelfand(R, 5) == (2, 1)
    assert gelfand(R, 0) == (0, 0)
    assert gelfand_table(R).shape == (6, 2)


def test_gamma_sizes():
    assert gamma_size(ring("z6")) == 6
    assert gamma_size(ring("z4")) == 2
    assert gamma_size(ring("z5")) == 5
    assert len(gamma(ring("z6"))) == 6


def test_section_ops():
    R = ring("z6")
    f, g = gelfand(R, 2), gelfand(R, 5)
    assert section_op(R, "add", f, g) == gelfand(R, 1)
    assert section_op(R, "mul", f, g) == gelfand(R, 4)
    assert section_op(R, "star", f) == f
    with pytest.raises(ValueError):
        section_op(R, "div", f, g)


def test_section_powers():
    R = ring("z6")
    assert all(m == 1 for m, _ in section_power_scan(R))
    Z = ring("z4")
    assert section_power_root(Z, (1,)) == (1, 1)
    assert trajectory_bound(Z) >= 1


def test_gelfand_iso_z6():
    rec = gelfand_iso_check(ring("z6"))
    assert rec["bijective"] and rec["homomorphism"] and rec["starPreserving"]
    assert rec["kernel"] == ["0"]


def test_gelfand_kernel_is_radical():
    rec = gelfand_iso_check(ring("z4"))
    assert rec["kernel"] == ["0", "2"] == rec["radical"]
    assert not rec["injective"] and rec["surjective"]
    rec = gelfand_iso_check(ring("z12"))
    assert rec["kernel"] == ["0", "6"]


@pytest.mark.parametrize("name", ["m2z2", "m2z4", "m2z2xm2z3", "swapz3"])
def test_gelfand_is_star_hom(name):
    rec = gelfand_iso_check(ring(name))
    assert rec["homomorphism"] and rec["starPreserving"]
    assert rec["imageSize"] * len(rec["kernel"]) == ring(name).size


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["z12", "m2z4", "m2z2xm2z3", "z6"]).flatmap(
    lambda n: st.tuples(st.just(ring(n)), st.integers(0, ring(n).size - 1),
                        st.integers(0, ring(n).size - 1))))
def test_gelfand_respects_operations(case):
    R, a, b = case
    assert section_op(R, "add", gelfand(R, a), gelfand(R, b)) == gelfand(R, R.add(a, b))
    assert section_op(R, "mul", gelfand(R, a), gelfand(R, b)) == gelfand(R, R.mul(a, b))
    assert section_op(R, "star", gelfand(R, a)) == gelfand(R, R.star(a))


def test_points_match_stalks():
    R = ring("z12")
    assert [s.ideal for s in stalks(R)] == [p.ideal for p in spectrum(R)]
