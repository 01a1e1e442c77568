"""Generalized central strict ideals, GC-sets and separation."""

import random
from dataclasses import dataclass

import numpy as np

from .errors import CheckFailure, PreconditionError
from .ideals import (DEFAULT_IDEAL_LIMIT, Ideal, _closure, enumerate_ideals, from_elements,
                     ideal_generated, ideal_power, ideal_product, ideal_sum)
from .projections import central_projection_indices, gc_table, projection_indices

SAMPLE_PAIRS = 10_000
SAMPLE_SEED = 20240601


@dataclass(frozen=True)
class GcsIdeal:
    ideal: Ideal
    verified: bool


@dataclass(frozen=True)
class GcSet:
    elements: frozenset


def _gc_vec(R):
    return gc_table(R)[0]


def is_gcs(R, I):
    """(True, None) if GC(x) lies in I for every x in I, else (False, x)."""
    gc = _gc_vec(R)
    el = np.asarray(I.elements)
    g = gc[el]
    bad = el[(g < 0) | ~I.mask[np.where(g < 0, 0, g)]]
    if len(bad):
        return False, int(bad[0])
    return True, None


def as_gcs(R, I):
    ok, x = is_gcs(R, I)
    if not ok:
        raise PreconditionError(f"ideal is not gcs: GC({R.encode(x)}) is outside it")
    return GcsIdeal(I, True)


def gcs_closure(R, S):
    """Least gcs ideal containing S: alternate ideal closure and GC adjunction."""
    gc = _gc_vec(R)
    mask, basis = _closure(R, [int(s) for s in S], "two-sided")
    while True:
        el = np.nonzero(mask)[0]
        g = gc[el]
        missing = np.unique(g[(g >= 0) & ~mask[np.where(g < 0, 0, g)]])
        if not len(missing):
            break
        mask, basis = _closure(R, missing.tolist(), "two-sided", mask, basis)
    return GcsIdeal(Ideal(R, mask, "two-sided", generators=S, basis=basis), True)


def gcs_ideals(R, limit=DEFAULT_IDEAL_LIMIT):
    return R.memo(("gcs_ideals", limit),
                  lambda: tuple(I for I in enumerate_ideals(R, limit) if is_gcs(R, I)[0]))


def prime_witness(R, Q, limit=DEFAULT_IDEAL_LIMIT):
    """None if Q is prime gcs, else a pair (I, J) of gcs ideals with
    IJ inside Q but neither I nor J inside Q (or a reason string)."""
    if Q.is_whole():
        return "not proper"
    gcs = gcs_ideals(R, limit)
    outside = [I for I in gcs if not I <= Q]
    for I in outside:
        for J in outside:
            if ideal_product(I, J) <= Q:
                return (I, J)
    return None


def is_prime_gcs(R, Q, limit=DEFAULT_IDEAL_LIMIT):
    if not is_gcs(R, Q)[0]:
        return False
    return prime_witness(R, Q, limit) is None


def is_prime(R, P, limit=DEFAULT_IDEAL_LIMIT):
    """Prime in the usual sense, quantifying over all two-sided ideals."""
    if P.is_whole():
        return False
    outside = [I for I in enumerate_ideals(R, limit) if not I <= P]
    return all(not ideal_product(I, J) <= P for I in outside for J in outside)


def is_restricted(R, I):
    """I equals the ideal generated by the projections it contains."""
    inside = [e for e in projection_indices(R) if I.mask[e]]
    return ideal_generated(R, inside) == I


def is_gc_set(R, S):
    """(True, None) or (False, description) for the three GC-set clauses."""
    S = frozenset(int(s) for s in S)
    if not S:
        return False, "empty"
    if R.zero in S:
        return False, "contains 0"
    gc = _gc_vec(R)
    for x in sorted(S):
        if gc[x] < 0 or int(gc[x]) not in S:
            return False, f"GC({R.encode(x)}) is missing"
    mul = R.mul_table
    el = np.asarray(sorted(S))
    prods = mul[el[:, None], el[None, :]]
    inside = np.isin(prods, el)
    if not inside.all():
        i, j = np.argwhere(~inside)[0]
        return False, f"{R.encode(el[i])}*{R.encode(el[j])} is missing"
    return True, None


def gc_set_closure(R, S):
    """Least multiplicatively closed, GC-closed set containing S (may contain 0)."""
    gc = _gc_vec(R)
    mul = R.mul_table
    cur = np.unique(np.asarray(list(S), dtype=np.int64))
    while True:
        g = gc[cur]
        prods = mul[cur[:, None], cur[None, :]].ravel()
        nxt = np.unique(np.concatenate([cur, g[g >= 0], prods]))
        if len(nxt) == len(cur):
            return frozenset(int(v) for v in cur)
        cur = nxt


def separate(R, I, M, limit=DEFAULT_IDEAL_LIMIT):
    """A maximal gcs ideal Q containing I and missing M; Q is asserted prime."""
    I = I.ideal if isinstance(I, GcsIdeal) else I
    M = M.elements if isinstance(M, GcSet) else frozenset(M)
    if not I.isdisjoint(M):
        raise PreconditionError("the ideal meets the GC-set")
    cands = [Q for Q in gcs_ideals(R, limit) if I <= Q and Q.isdisjoint(M)]
    maximal = [Q for Q in cands if not any(Q < P for P in cands)]
    Q = maximal[0]
    w = prime_witness(R, Q, limit)
    if w is not None:
        raise CheckFailure("maximal disjoint gcs ideal is not prime gcs",
                           {"Q": Q.render(), "witness": _render_witness(w)})
    return GcsIdeal(Q, True)


def _render_witness(w):
    if isinstance(w, str):
        return w
    return [J.render() for J in w]


def _power_chain(I):
    chain = [I]
    while True:
        nxt = ideal_product(chain[-1], I)
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def gc_inequality_failures(R, bs, cs):
    """Pairs (b, c) breaking GC(b^n + c^m) <= GC(b) v GC(c) or
    GC(b^n c^m) <= GC(b) ^ GC(c), with n, m the GC exponents."""
    cover, exponent, _ = gc_table(R)
    bs = np.asarray(bs, dtype=np.int64)
    cs = np.asarray(cs, dtype=np.int64)
    mul, add = R.mul_table, R.add_table
    pw = _powers_at(R, exponent)
    # the inequalities only see (x^n, GC(x)), so keep one element per pair
    bs = bs[np.unique(pw[bs] * R.size + cover[bs], return_index=True)[1]]
    cs = cs[np.unique(pw[cs] * R.size + cover[cs], return_index=True)[1]]
    bs.sort()
    cs.sort()
    gb, gc_ = cover[bs], cover[cs]
    bn, cm = pw[bs], pw[cs]
    out = []
    step = max(1, 1_000_000 // max(len(cs), 1))
    for lo in range(0, len(bs), step):
        sl = slice(lo, lo + step)
        s = add[bn[sl, None], cm[None, :]]
        p = mul[bn[sl, None], cm[None, :]]
        gs, gp = cover[s], cover[p]
        g1, g2 = gb[sl, None], gc_[None, :]
        meet = mul[g1, g2]
        join = add[add[g1, g2], R.neg_table[meet]]
        bad_s = mul[gs, join] != gs
        bad_p = mul[gp, meet] != gp
        bad = np.argwhere(bad_s | bad_p)
        for i, j in bad[:5]:
            out.append((int(bs[lo + i]), int(cs[j])))
        if out:
            break
    return out


def _powers_at(R, exponent):
    """x^exponent[x] for every x."""
    def compute():
        mul = R.mul_table
        n = R.size
        out = np.arange(n)
        pw = np.arange(n)
        for k in range(2, int(exponent.max()) + 1 if n else 1):
            pw = mul[pw, np.arange(n)]
            out = np.where(exponent == k, pw, out)
        return out
    return R.memo("pow_at_gc_exponent", compute)


def gcs_arithmetic_check(R, I, J):
    """Exponents (n, m) making I^n + J^m and I^n J^m gcs, plus the GC
    inequalities on all pairs of I x J (or a fixed-seed sample)."""
    I = I.ideal if isinstance(I, GcsIdeal) else I
    J = J.ideal if isinstance(J, GcsIdeal) else J
    found = None
    for n, In in enumerate(_power_chain(I), start=1):
        for m, Jm in enumerate(_power_chain(J), start=1):
            if is_gcs(R, ideal_sum(In, Jm))[0] and is_gcs(R, ideal_product(In, Jm))[0]:
                found = (n, m)
                break
        if found:
            break
    if found is None:
        raise CheckFailure("no exponents make both I^n + J^m and I^n J^m gcs",
                           {"I": I.render(), "J": J.render()})
    bs, cs = list(I.elements), list(J.elements)
    if len(bs) * len(cs) <= SAMPLE_PAIRS:
        bad = gc_inequality_failures(R, bs, cs)
    else:
        rng = random.Random(SAMPLE_SEED)
        pairs = [(rng.choice(bs), rng.choice(cs)) for _ in range(SAMPLE_PAIRS)]
        bad = [p for p in pairs if gc_inequality_failures(R, [p[0]], [p[1]])]
    if bad:
        b, c = bad[0]
        raise CheckFailure("GC inequality fails", {"b": R.encode(b), "c": R.encode(c)})
    return found


def gcs_power(I, n):
    return ideal_power(I, n)


def boolean_trace(R, Q):
    """Q intersected with the central projections."""
    return tuple(e for e in central_projection_indices(R) if Q.mask[e])


def fixture_set(R, fixture):
    """Element set or generated ideal described by a spec fixture."""
    idx = [R.index(v) for v in fixture.values]
    if fixture.mode == "generators":
        return ideal_generated(R, idx)
    return frozenset(idx)


def set_as_ideal(R, S):
    return from_elements(R, S)
