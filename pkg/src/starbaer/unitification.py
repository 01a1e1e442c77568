"""Adjoining scalars from Z_p to a (possibly unity-free) *-ring."""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import CheckFailure, LimitError, PreconditionError, SpecError
from .ideals import classify, nilpotent_mask, weakly_witnesses, xrx_star_zero
from .projections import central_projection_indices, gc_table, leq, projection_indices
from .ring import DEFAULT_ELEMENT_LIMIT, RingSpec, make_ring


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class ScalarDomain:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise PreconditionError(f"scalars must be Z_p for a prime p, got {self.p!r}")

    @property
    def elements(self):
        return range(self.p)

    def star(self, lam):
        return lam


@dataclass(frozen=True)
class Unitification:
    base: object = field(repr=False)
    scalars: ScalarDomain
    action: np.ndarray = field(repr=False)
    ring: object = field(repr=False)
    embed: np.ndarray = field(repr=False)
    e_lambda: dict

    def pair(self, a, lam):
        return a * self.scalars.p + lam


def natural_action(R, p):
    """lam . a = a + ... + a (lam times); needs p a = 0 for every a."""
    K = ScalarDomain(p)
    act = np.zeros((p, R.size), dtype=np.int64)
    act[0, :] = R.zero
    for lam in range(1, p):
        act[lam] = R.add_table[act[lam - 1], np.arange(R.size)]
    if not (R.add_table[act[p - 1], np.arange(R.size)] == R.zero).all():
        raise PreconditionError(f"the additive group of {R.spec.describe()} is not killed by {K.p}")
    return act


def load_action(path, R):
    """Action file: {"p": p, "table": [[value of lam.a for a in R] for lam in Z_p]}."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, ValueError) as exc:
        raise SpecError(f"cannot read action file {path}: {exc}") from exc
    return parse_action(obj, R)


def parse_action(obj, R):
    if not isinstance(obj, dict) or set(obj) != {"p", "table"}:
        raise SpecError('action must be an object with exactly the keys "p" and "table"')
    p = obj["p"]
    ScalarDomain(p)
    table = obj["table"]
    if not isinstance(table, list) or len(table) != p or any(
            not isinstance(row, list) or len(row) != R.size for row in table):
        raise SpecError(f"action table must have {p} rows of {R.size} entries")
    act = np.array([[R.index(v) for v in row] for row in table], dtype=np.int64)
    return p, act


def validate_action(R, p, act):
    """Raise PreconditionError naming the first (lam, a) that breaks a law."""
    add, mul, star = R.add_table, R.mul_table, R.star_table
    idx = np.arange(R.size)

    def fail(law, lam, a):
        raise PreconditionError(f"action law {law} fails at lambda={lam}, a={R.encode(a)}")

    if not (act[1] == idx).all():
        fail("1a = a", 1, int(np.argmax(act[1] != idx)))
    for lam in range(p):
        row = act[lam]
        for mu in range(p):
            bad = act[(lam + mu) % p] != add[row, act[mu]]
            if bad.any():
                fail("(l+m)a = la + ma", lam, int(np.argmax(bad)))
            bad = act[(lam * mu) % p] != row[act[mu]]
            if bad.any():
                fail("(lm)a = l(ma)", lam, int(np.argmax(bad)))
        if not (row[add] == add[row[:, None], row[None, :]]).all():
            a = int(np.argwhere(row[add] != add[row[:, None], row[None, :]])[0][0])
            fail("l(a+b) = la + lb", lam, a)
        prod = row[mul]
        if not (prod == mul[row[:, None], idx[None, :]]).all():
            fail("l(ab) = (la)b", lam, int(np.argwhere(prod != mul[row[:, None], idx[None, :]])[0][0]))
        if not (prod == mul[idx[:, None], row[None, :]]).all():
            fail("l(ab) = a(lb)", lam, int(np.argwhere(prod != mul[idx[:, None], row[None, :]])[0][0]))
        bad = star[row] != row[star]
        if bad.any():
            fail("(la)* = l* a*", lam, int(np.argmax(bad)))
        if lam:
            bad = (row == R.zero) & (idx != R.zero)
            if bad.any():
                fail("torsion-free", lam, int(np.argmax(bad)))


def e_lambda_search(R, p, act):
    """{lam: (central e_lam, first projection that would do)} for lam != 0.

    e qualifies when lam x = 0 forces GC(x) <= e.  Raises if some lam has
    no central choice.
    """
    cover = gc_table(R)[0]
    out = {}
    for lam in range(1, p):
        killed = np.nonzero(act[lam] == R.zero)[0]
        covers = cover[killed]
        if (covers < 0).any():
            raise PreconditionError(f"an element killed by {lam} has no generalized central cover")

        def ok(e):
            return all(leq(R, int(g), e) for g in covers)
        central = next((e for e in central_projection_indices(R) if ok(e)), None)
        anyp = next((e for e in projection_indices(R) if ok(e)), None)
        if central is None:
            raise PreconditionError(f"no central projection e_lambda for lambda={lam}"
                                    + ("" if anyp is None else
                                       f"; the projection {R.encode(anyp)} would satisfy the bound"))
        out[lam] = (central, anyp)
    return out


def build_unitification(R, p, action=None, limit=DEFAULT_ELEMENT_LIMIT):
    """R1 = R + Z_p with (a,l)(b,m) = (ab + m a + l b, lm) and (a,l)* = (a*, l)."""
    K = ScalarDomain(p)
    act = natural_action(R, p) if action is None else np.asarray(action, dtype=np.int64)
    validate_action(R, p, act)
    e_lam = e_lambda_search(R, p, act)
    n = R.size * p
    if n > limit:
        raise LimitError(f"unitification would have {n} elements, above the limit {limit}", reached=n)
    a = np.repeat(np.arange(R.size), p)
    lam = np.tile(np.arange(p), R.size)
    A, B = a[:, None], a[None, :]
    L, M = lam[:, None], lam[None, :]
    add = R.add_table[A, B] * p + (L + M) % p
    ab = R.mul_table[A, B]
    mul = R.add_table[R.add_table[ab, act[M, A]], act[L, B]] * p + (L * M) % p
    star = R.star_table[a] * p + lam
    labels = [f"({R.encode(int(x))},{int(l)})" for x, l in zip(a, lam)]
    values = [(R.value(int(x)), int(l)) for x, l in zip(a, lam)]
    spec = RingSpec(kind="table", involution="table", size=n,
                    name=f"unitification of {R.spec.describe()} over Z{p}")
    R1 = make_ring(spec, add, mul, star, R.zero * p, R.zero * p + 1, labels, values, limit)
    embed = np.arange(R.size) * p
    U = Unitification(R, K, act, R1, embed, e_lam)
    _check_star_ideal(U)
    return U


def _check_star_ideal(U):
    R1 = U.ring
    inside = np.zeros(R1.size, dtype=bool)
    inside[U.embed] = True
    e = U.embed
    if not (inside[R1.star_table[e]].all() and inside[R1.mul_table[e, :]].all()
            and inside[R1.mul_table[:, e]].all() and inside[R1.add_table[e[:, None], e[None, :]]].all()):
        raise CheckFailure("R is not a *-ideal of its unitification", {})


def is_star_ideal(U):
    try:
        _check_star_ideal(U)
    except CheckFailure:
        return False
    return True


def is_weakly_gen_pq(R):
    """(holds, {x: (e, n)}) with the least n and first central e per element."""
    w = weakly_witnesses(R)
    return len(w) == R.size, {x: (e, n) for x, (n, e) in sorted(w.items())}


def quasi_proper_check(R):
    """x R x* = 0 forces x nilpotent."""
    bad = np.nonzero(xrx_star_zero(R) & ~nilpotent_mask(R))[0]
    return (True, None) if not len(bad) else (False, int(bad[0]))


def _largest_central_step(U):
    """For a in R, lam != 0: the central g with (ag + lam g)^m = 0 form a set
    with a maximum equal to e - h, where e = GC(a) v e_lam and h = GC(ae + lam e)."""
    R, act, p, R1 = U.base, U.action, U.scalars.p, U.ring
    cover = gc_table(R)[0]
    cover1 = gc_table(R1)[0]
    nil = nilpotent_mask(R)
    C = central_projection_indices(R)
    rows = []
    for a in range(R.size):
        for lam in range(1, p):
            G = [g for g in C if nil[R.add(R.mul(a, g), int(act[lam, g]))]]
            top = [g for g in G if all(leq(R, k, g) for k in G)]
            el = U.e_lambda[lam][0]
            ga = int(cover[a])
            e = R.sub(R.add(ga, el), R.mul(ga, el))
            h = int(cover[R.add(R.mul(a, e), int(act[lam, e]))])
            construct = R.sub(e, h) if h >= 0 else None
            gmax = top[0] if top else None
            lifted = None if gmax is None else U.pair(R.neg(gmax), 1)
            rows.append({
                "a": R.encode(a), "lambda": lam,
                "maximum": None if gmax is None else R.encode(gmax),
                "construction": None if construct is None else R.encode(construct),
                "agrees": gmax is not None and gmax == construct,
                "coverMatches": lifted is not None and int(cover1[U.pair(a, lam)]) == lifted,
            })
    return rows


def embedding_checks(U):
    R, R1, p = U.base, U.ring, U.scalars.p
    rec = {}
    weakly, _ = is_weakly_gen_pq(R)
    flags1 = classify(R1)
    rec["genPqBaerStar"] = flags1.gen_pq_baer_star
    rec["unity"] = R1.encode(R1.one)
    rec["size"] = R1.size
    rec["starIdeal"] = is_star_ideal(U)
    cover = gc_table(R)[0]
    cover1 = gc_table(R1)[0]
    lift_bad = []
    for x in range(R.size):
        e = int(cover[x])
        if e < 0:
            continue
        if int(cover1[U.embed[x]]) != int(U.embed[e]):
            lift_bad.append(R.encode(x))
    rec["gcLift"] = {"holds": not lift_bad, "failures": lift_bad}
    q0, _ = quasi_proper_check(R)
    q1, w1 = quasi_proper_check(R1)
    rec["quasiProper"] = {"base": q0, "unitification": q1,
                          "lifts": (not q0) or q1,
                          "witness": None if q1 else R1.encode(w1)}
    ub_bad = []
    P = projection_indices(R)
    C = central_projection_indices(R)
    bounds = {}
    for e in P:
        for f in P:
            g = next((g for g in C if leq(R, e, g) and leq(R, f, g)), None)
            if g is None:
                ub_bad.append([R.encode(e), R.encode(f)])
            else:
                bounds[f"{R.encode(e)},{R.encode(f)}"] = R.encode(g)
    rec["upperBound"] = {"holds": not ub_bad, "failures": ub_bad, "bounds": bounds}
    steps = _largest_central_step(U)
    rec["largestCentralStep"] = {"holds": all(r["agrees"] and r["coverMatches"] for r in steps),
                                 "rows": steps}
    rec["eLambda"] = {str(lam): {"central": R.encode(c),
                                 "firstProjection": None if q is None else R.encode(q),
                                 "nonCentralSuffices": q is not None and q != c}
                      for lam, (c, q) in sorted(U.e_lambda.items())}
    rec["weaklyGenPq"] = weakly
    return rec
