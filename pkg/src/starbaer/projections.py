"""Projections, central covers and the projection lattice."""

from dataclasses import dataclass

import numpy as np

from .errors import CheckFailure, LatticeError, NoUnityError, PreconditionError
from .ring import center_mask, power_trajectory, trajectory_arrays


@dataclass(frozen=True, order=True)
class Projection:
    value: int
    central: bool


@dataclass(frozen=True)
class CoverResult:
    """C(x) or GC(x); ``cover`` is None when no central projection qualifies."""

    subject: int
    cover: Projection | None
    exponent: int | None
    candidates: int


@dataclass(frozen=True)
class EquivalenceWitness:
    e: int
    f: int
    w: int


# ---------------------------------------------------------------- projections


def projection_indices(R):
    def compute():
        mul, star = R.mul_table, R.star_table
        idx = np.arange(R.size)
        mask = (mul[idx, idx] == idx) & (star == idx)
        return tuple(int(i) for i in np.nonzero(mask)[0])
    return R.memo("projections", compute)


def central_projection_indices(R):
    def compute():
        cm = center_mask(R)
        return tuple(e for e in projection_indices(R) if cm[e])
    return R.memo("central_projections", compute)


def is_projection(R, x):
    return R.mul(x, x) == x and R.star(x) == x


def projections(R):
    cm = center_mask(R)
    return [Projection(e, bool(cm[e])) for e in projection_indices(R)]


def central_projections(R):
    return [Projection(e, True) for e in central_projection_indices(R)]


def as_projection(R, e):
    if not is_projection(R, e):
        raise PreconditionError(f"{R.encode(e)} is not a projection")
    return Projection(int(e), bool(center_mask(R)[e]))


def leq(R, e, f):
    """e <= f in the projection order, i.e. e = ef."""
    return R.mul(e, f) == e


# ---------------------------------------------------------------- covers


def _fold_covers(R, ok, cands):
    """Product of the qualifying central projections, per row of ``ok``."""
    mul = R.mul_table
    cover = np.full(ok.shape[0], -1, dtype=np.int64)
    for j, e in enumerate(cands):
        hit = ok[:, j]
        fresh = hit & (cover < 0)
        cover[fresh] = e
        more = hit & ~fresh
        cover[more] = mul[cover[more], e]
    return cover


def central_cover_table(R):
    """C(x) for every x as a vector (-1 where no central projection qualifies)."""
    def compute():
        cands = np.asarray(central_projection_indices(R), dtype=np.int64)
        idx = np.arange(R.size)
        ok = R.mul_table[cands[None, :], idx[:, None]] == idx[:, None]
        cover = _fold_covers(R, ok, cands)
        return cover, ok.sum(axis=1)
    return R.memo("cc_table", compute)


def gc_table(R):
    """(cover, exponent, candidates) vectors for GC over all elements.

    A central projection e qualifies for x exactly when x^t e = x^t with
    t the tail of the power trajectory, because x^n e = x^n persists for
    larger n and every power past the tail lies on the cycle.
    """
    def compute():
        mul = R.mul_table
        n = R.size
        tails, _ = trajectory_arrays(R)
        xt = np.array([power_trajectory(R, x).powers[tails[x] - 1] for x in range(n)], dtype=np.int64)
        cands = np.asarray(central_projection_indices(R), dtype=np.int64)
        ok = mul[xt[:, None], cands[None, :]] == xt[:, None]
        cover = _fold_covers(R, ok, cands)
        exponent = np.zeros(n, dtype=np.int64)
        has = cover >= 0
        todo = has.copy()
        pw = np.arange(n)
        k = 1
        while todo.any():
            hit = todo & (mul[pw, np.where(has, cover, 0)] == pw)
            exponent[hit] = k
            todo &= ~hit
            pw = mul[pw, np.arange(n)]
            k += 1
        for a in (cover, exponent):
            a.setflags(write=False)
        return cover, exponent, ok.sum(axis=1)
    return R.memo("gc_table", compute)


def central_cover(R, x):
    """C(x): the least central projection h with hx = x."""
    cover, cnt = central_cover_table(R)
    c = int(cover[x])
    res = CoverResult(int(x), Projection(c, True) if c >= 0 else None, None, int(cnt[x]))
    if c >= 0:
        _assert_minimal(R, x, c, lambda k: R.mul(k, x) == x, "C")
    return res


def gc_cover(R, x):
    """GC(x): the least central projection e with x^n e = x^n for some n."""
    cover, exponent, cnt = gc_table(R)
    c = int(cover[x])
    if c < 0:
        return CoverResult(int(x), None, None, int(cnt[x]))
    n = int(exponent[x])
    xn = R.power(x, n)
    if R.mul(xn, c) != xn:
        raise CheckFailure("GC cover fails its defining equation",
                           {"x": R.encode(x), "cover": R.encode(c), "n": n})
    t = power_trajectory(R, x).tail
    xt = R.power(x, t)
    _assert_minimal(R, x, c, lambda k: R.mul(xt, k) == xt, "GC")
    return CoverResult(int(x), Projection(c, True), n, int(cnt[x]))


def _assert_minimal(R, x, c, qualifies, name):
    for k in central_projection_indices(R):
        if qualifies(k) and not leq(R, c, k):
            raise CheckFailure(f"{name} cover is not below a qualifying projection",
                               {"x": R.encode(x), "cover": R.encode(c), "k": R.encode(k)})


def gc_of(R, x):
    """GC(x) as an element index, or None."""
    c = int(gc_table(R)[0][x])
    return c if c >= 0 else None


def gc_remark_conflicts(R):
    """Non-central x with GC(x) other than 1 (x not nilpotent) or 0 (x nilpotent).

    GC is always taken from its definition; this only lists the elements
    where the shortcut "1 unless nilpotent" would give a different answer.
    """
    if not R.has_unity:
        return []
    cover = gc_table(R)[0]
    central = center_mask(R)
    tails, _ = trajectory_arrays(R)
    out = []
    for x in range(R.size):
        if central[x]:
            continue
        nil = power_trajectory(R, x).powers[tails[x] - 1] == R.zero
        want = R.zero if nil else R.one
        if int(cover[x]) != want:
            out.append(x)
    return out


# ---------------------------------------------------------------- lattice


@dataclass(frozen=True)
class _Lattice:
    elems: tuple
    pos: dict
    leq: np.ndarray
    sup: np.ndarray
    inf: np.ndarray


def _lattice(R):
    def compute():
        P = np.asarray(projection_indices(R), dtype=np.int64)
        k = len(P)
        L = R.mul_table[P[:, None], P[None, :]] == P[:, None]
        sup = np.full((k, k), -1, dtype=np.int64)
        inf = np.full((k, k), -1, dtype=np.int64)
        for i in range(k):
            for j in range(i, k):
                up = np.nonzero(L[i] & L[j])[0]
                least = [u for u in up if L[u, up].all()]
                down = np.nonzero(L[:, i] & L[:, j])[0]
                great = [d for d in down if L[down, d].all()]
                if least:
                    sup[i, j] = sup[j, i] = P[least[0]]
                if great:
                    inf[i, j] = inf[j, i] = P[great[0]]
        return _Lattice(tuple(int(p) for p in P), {int(p): i for i, p in enumerate(P)}, L, sup, inf)
    return R.memo("lattice", compute)


def is_lattice(R):
    lat = _lattice(R)
    return bool((lat.sup >= 0).all() and (lat.inf >= 0).all())


def brute_sup(R, e, f):
    lat = _lattice(R)
    v = int(lat.sup[lat.pos[e], lat.pos[f]])
    if v < 0:
        raise LatticeError(f"{R.encode(e)} and {R.encode(f)} have no least upper bound")
    return v


def brute_inf(R, e, f):
    lat = _lattice(R)
    v = int(lat.inf[lat.pos[e], lat.pos[f]])
    if v < 0:
        raise LatticeError(f"{R.encode(e)} and {R.encode(f)} have no greatest lower bound")
    return v


def lattice_formula(R, e, f, cover="GC"):
    """(f + c, e - c) with c the chosen cover of e(1 - f)."""
    x = R.mul(e, R.sub(R.one, f))
    if cover == "C":
        c = int(central_cover_table(R)[0][x])
    elif cover == "GC":
        c = int(gc_table(R)[0][x])
    else:
        raise ValueError(f"unknown cover {cover!r}")
    if c < 0:
        raise CheckFailure("cover of e(1-f) does not exist", {"x": R.encode(x)})
    return R.add(f, c), R.sub(e, c)


def _formula_precondition(R, cover):
    from .ideals import classify
    flags = classify(R)
    need = flags.pq_baer_star if cover == "C" else flags.gen_pq_baer_star
    if not need:
        kind = "p.q.-Baer*" if cover == "C" else "generalized p.q.-Baer*"
        raise PreconditionError(f"{R.spec.describe()} is not {kind}")


def _lattice_op(R, e, f, mode, which):
    for p in (e, f):
        as_projection(R, p)
    if mode == "brute":
        v = brute_sup(R, e, f) if which == 0 else brute_inf(R, e, f)
    elif mode in ("C", "GC"):
        _formula_precondition(R, mode)
        v = lattice_formula(R, e, f, mode)[which]
        if not is_projection(R, v):
            raise CheckFailure("lattice formula value is not a projection",
                               {"e": R.encode(e), "f": R.encode(f), "value": R.encode(v)})
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return as_projection(R, v)


def proj_sup(R, e, f, mode="brute"):
    return _lattice_op(R, e, f, mode, 0)


def proj_inf(R, e, f, mode="brute"):
    return _lattice_op(R, e, f, mode, 1)


def lattice_formula_agreement(R, cover="GC"):
    """Compare the cover formula with the poset sup/inf on every pair.

    Returns the list of disagreeing pairs as dicts (empty on agreement).
    """
    bad = []
    for e in projection_indices(R):
        for f in projection_indices(R):
            join, meet = lattice_formula(R, e, f, cover)
            lat = _lattice(R)
            s = int(lat.sup[lat.pos[e], lat.pos[f]])
            i = int(lat.inf[lat.pos[e], lat.pos[f]])
            if s >= 0 and join != s or i >= 0 and meet != i:
                bad.append({"e": e, "f": f, "formulaJoin": join, "formulaMeet": meet,
                            "sup": s, "inf": i})
    return bad


# ---------------------------------------------------------------- equivalence


def _equiv_witness(R, e, f):
    mul, star = R.mul_table, R.star_table
    W = np.unique(mul[mul[f, :], e])
    ok = (mul[star[W], W] == e) & (mul[W, star[W]] == f)
    hits = W[ok]
    return int(hits[0]) if len(hits) else None


def _equiv_matrix(R):
    def compute():
        P = projection_indices(R)
        k = len(P)
        W = np.full((k, k), -1, dtype=np.int64)
        for i in range(k):
            for j in range(k):
                w = _equiv_witness(R, P[i], P[j])
                if w is not None:
                    W[i, j] = w
        return W
    return R.memo("equiv", compute)


def equivalent(R, e, f):
    """A witness w with w*w = e and ww* = f, or None."""
    lat = _lattice(R)
    if e in lat.pos and f in lat.pos:
        w = int(_equiv_matrix(R)[lat.pos[e], lat.pos[f]])
    else:
        w = _equiv_witness(R, e, f)
        w = -1 if w is None else w
    return EquivalenceWitness(int(e), int(f), w) if w >= 0 else None


def is_equivalent(R, e, f):
    return equivalent(R, e, f) is not None


def dominated(R, e, f):
    """e ~ g <= f for some projection g."""
    return any(leq(R, g, f) and is_equivalent(R, e, g) for g in projection_indices(R))


def very_orthogonal(R, e, f):
    """A central projection h with he = e and hf = 0, or None."""
    for h in central_projection_indices(R):
        if R.mul(h, e) == e and R.mul(h, f) == R.zero:
            return h
    return None


def position_p_prime(R, e, f):
    if not R.has_unity:
        raise NoUnityError("position p' needs a unity")
    one = R.one
    a = brute_inf(R, e, R.sub(one, f))
    b = brute_inf(R, R.sub(one, e), f)
    return a == R.zero and b == R.zero


def _require_gen_pq(R):
    from .ideals import classify
    if not classify(R).gen_pq_baer_star:
        raise PreconditionError(f"{R.spec.describe()} is not generalized p.q.-Baer*")


def position_p_gc_check(R, e, f):
    """(p', GC(ef) = f and GC(fe) = e) evaluated independently."""
    _require_gen_pq(R)
    lhs = position_p_prime(R, e, f)
    rhs = gc_of(R, R.mul(e, f)) == f and gc_of(R, R.mul(f, e)) == e
    return lhs, rhs


def parallelogram_law(R):
    """(holds, first failing pair or None) for e - e^f ~ e v f - f."""
    if not is_lattice(R):
        raise LatticeError("projections do not form a lattice")
    for e in projection_indices(R):
        for f in projection_indices(R):
            a = R.sub(e, brute_inf(R, e, f))
            b = R.sub(brute_sup(R, e, f), f)
            if not is_equivalent(R, a, b):
                return False, (e, f)
    return True, None


def parallelogram_pair(R, e, f):
    a = R.sub(e, brute_inf(R, e, f))
    b = R.sub(brute_sup(R, e, f), f)
    return is_equivalent(R, a, b)


def meets_nonzero(R, e, f):
    """eRf != {0}."""
    return bool((R.mul_table[R.mul_table[e, :], f] != R.zero).any())


def pc_check(R):
    """Partial comparability.

    Returns (holds, data): on success ``data`` lists (e, f, e0, f0) for
    every pair with eRf != 0; on failure it is the first failing pair.
    """
    if not is_lattice(R):
        raise LatticeError("projections do not form a lattice")
    P = projection_indices(R)
    witnesses = []
    for e in P:
        for f in P:
            if not meets_nonzero(R, e, f):
                continue
            found = None
            for e0 in P:
                if e0 == R.zero or not leq(R, e0, e):
                    continue
                for f0 in P:
                    if f0 != R.zero and leq(R, f0, f) and is_equivalent(R, e0, f0):
                        found = (e, f, e0, f0)
                        break
                if found:
                    break
            if found is None:
                return False, (e, f)
            witnesses.append(found)
    return True, witnesses


def gc_comparable(R, e, f):
    """A central h with he <~ hf and (1-h)f <~ (1-h)e, or None."""
    one = R.one
    for h in central_projection_indices(R):
        k = R.sub(one, h)
        if dominated(R, R.mul(h, e), R.mul(h, f)) and dominated(R, R.mul(k, f), R.mul(k, e)):
            return h
    return None


def orthogonal_decomposition(R, e, f):
    """(e', e'', f', f'') with e' = GC(fe), f' = GC(ef).

    Raises CheckFailure naming the violated condition if e' ~ f',
    e f'' = 0, f e'' = 0 or centrality of e', f' fails.
    """
    _require_gen_pq(R)
    ok, _ = parallelogram_law(R)
    if not ok:
        raise PreconditionError("the parallelogram law fails in this ring")
    e1 = gc_of(R, R.mul(f, e))
    f1 = gc_of(R, R.mul(e, f))
    e2, f2 = R.sub(e, e1), R.sub(f, f1)
    cm = center_mask(R)
    problems = []
    if not is_equivalent(R, e1, f1):
        problems.append("e' is not equivalent to f'")
    if R.mul(e, f2) != R.zero:
        problems.append(f"e f'' = {R.encode(R.mul(e, f2))}")
    if R.mul(f, e2) != R.zero:
        problems.append(f"f e'' = {R.encode(R.mul(f, e2))}")
    if not (cm[e1] and cm[f1]):
        problems.append("e' or f' is not central")
    if problems:
        raise CheckFailure("orthogonal decomposition conditions fail",
                           {"e": R.encode(e), "f": R.encode(f), "e'": R.encode(e1),
                            "f'": R.encode(f1), "e''": R.encode(e2), "f''": R.encode(f2),
                            "violations": problems})
    return e1, e2, f1, f2
