"""Ideals as additive subgroups, annihilators, ideal enumeration and the
annihilator classification of a ring with involution."""

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import CheckFailure, LimitError, NoUnityError, PreconditionError
from .projections import central_projection_indices, gc_of, projection_indices
from .ring import power_trajectory

DEFAULT_IDEAL_LIMIT = 4096
SIDES = ("two-sided", "right", "left", "additive")


# ---------------------------------------------------------------- subgroups


def _adjoin(R, mask, s):
    """Grow the subgroup ``mask`` by the element s; False if s was inside."""
    if mask[s]:
        return False
    cur = np.nonzero(mask)[0]
    add = R.add_table
    coset = cur
    while True:
        coset = add[coset, s]
        if mask[coset[0]]:
            return True
        mask[coset] = True


def span(R, seeds):
    """Additive subgroup generated by ``seeds`` as (mask, basis)."""
    mask = np.zeros(R.size, dtype=bool)
    mask[R.zero] = True
    basis = []
    for s in seeds:
        if _adjoin(R, mask, int(s)):
            basis.append(int(s))
    return mask, basis


def _closure(R, seeds, side, mask=None, basis=None):
    if mask is None:
        mask = np.zeros(R.size, dtype=bool)
        mask[R.zero] = True
        basis = []
    mul = R.mul_table
    gens = R.additive_basis
    queue = deque(int(s) for s in seeds)
    while queue:
        s = queue.popleft()
        if not _adjoin(R, mask, s):
            continue
        basis.append(s)
        if side in ("two-sided", "right"):
            queue.extend(int(v) for v in mul[s, list(gens)])
        if side in ("two-sided", "left"):
            queue.extend(int(v) for v in mul[list(gens), s])
    return mask, basis


class Ideal:
    """An additive subgroup of R with a sidedness tag.

    Equality and hashing use the element set only, so a right ideal and a
    two-sided ideal with the same elements compare equal.
    """

    __slots__ = ("ring", "mask", "side", "generators", "_basis", "_key")

    def __init__(self, ring, mask, side="two-sided", generators=(), basis=None):
        if side not in SIDES:
            raise ValueError(f"unknown side {side!r}")
        mask = np.asarray(mask, dtype=bool)
        mask.setflags(write=False)
        self.ring = ring
        self.mask = mask
        self.side = side
        self.generators = tuple(int(g) for g in generators)
        self._basis = None if basis is None else tuple(basis)
        self._key = None

    @property
    def key(self):
        if self._key is None:
            self._key = np.packbits(self.mask).tobytes()
        return self._key

    @property
    def basis(self):
        if self._basis is None:
            _, b = span(self.ring, np.nonzero(self.mask)[0])
            self._basis = tuple(b)
        return self._basis

    @property
    def elements(self):
        return tuple(int(i) for i in np.nonzero(self.mask)[0])

    def __len__(self):
        return int(self.mask.sum())

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return bool(self.mask[x])

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __le__(self, other):
        return bool((self.mask <= other.mask).all())

    def __lt__(self, other):
        return self <= other and self != other

    def sort_key(self):
        return (len(self), self.elements)

    def isdisjoint(self, elements):
        return not any(self.mask[x] for x in elements)

    def is_zero(self):
        return len(self) == 1

    def is_whole(self):
        return bool(self.mask.all())

    def render(self):
        return [self.ring.encode(x) for x in self.elements]

    def __repr__(self):
        els = self.render()
        if len(els) > 8:
            els = els[:8] + ["..."]
        return f"Ideal({self.side}, {len(self)} elements: {', '.join(els)})"


def from_elements(R, elements, side="two-sided"):
    mask = np.zeros(R.size, dtype=bool)
    mask[list(elements)] = True
    return Ideal(R, mask, side)


def whole(R):
    return Ideal(R, np.ones(R.size, dtype=bool), "two-sided", basis=R.additive_basis)


def zero_ideal(R):
    return ideal_generated(R, [])


def ideal_generated(R, S, side="two-sided"):
    """Least ideal of the given side containing S."""
    S = [int(s) for s in S]
    mask, basis = _closure(R, S, side)
    return Ideal(R, mask, side, generators=S, basis=basis)


def is_closed(I, side=None):
    """Check additive closure and the declared side multiplications."""
    R = I.ring
    side = side or I.side
    el = np.asarray(I.elements)
    if not I.mask[R.add_table[el[:, None], el[None, :]]].all():
        return False
    if side in ("two-sided", "right") and not I.mask[R.mul_table[el, :]].all():
        return False
    if side in ("two-sided", "left") and not I.mask[R.mul_table[:, el]].all():
        return False
    return True


def principal_right(R, x):
    """The right ideal xR = {xr : r in R}."""
    mask = np.zeros(R.size, dtype=bool)
    mask[R.mul_table[x, :]] = True
    return Ideal(R, mask, "right", generators=(x,))


def _product_side(I, J):
    left = I.side in ("two-sided", "left")
    right = J.side in ("two-sided", "right")
    if left and right:
        return "two-sided"
    return "left" if left else "right" if right else "additive"


def ideal_sum(I, J):
    R = I.ring
    side = I.side if I.side == J.side else "additive"
    if {I.side, J.side} <= {"two-sided", "right"} and "right" in (I.side, J.side):
        side = "right"
    if {I.side, J.side} <= {"two-sided", "left"} and "left" in (I.side, J.side):
        side = "left"
    mask = I.mask.copy()
    basis = list(I.basis)
    for s in J.basis:
        if _adjoin(R, mask, s):
            basis.append(s)
    return Ideal(R, mask, side, basis=basis)


def ideal_product(I, J):
    """Additive closure of all products ab with a in I, b in J."""
    R = I.ring
    mul = R.mul_table
    seeds = mul[np.asarray(I.basis or [R.zero])[:, None], np.asarray(J.basis or [R.zero])[None, :]]
    mask, basis = span(R, np.unique(seeds))
    return Ideal(R, mask, _product_side(I, J), basis=basis)


def ideal_power(I, n):
    if n < 1:
        raise ValueError("ideal powers start at 1")
    out = I
    for _ in range(n - 1):
        out = ideal_product(out, I)
    return out


def ideal_intersection(I, J):
    if I.side == J.side:
        side = I.side
    elif "two-sided" in (I.side, J.side):
        side = J.side if I.side == "two-sided" else I.side
    else:
        side = "additive"
    return Ideal(I.ring, I.mask & J.mask, side)


def _as_seed_array(R, S):
    if isinstance(S, Ideal):
        seeds = list(S.basis)
    else:
        seeds = [int(s) for s in S]
    return np.asarray(seeds, dtype=np.int64)


def right_annihilator(R, S):
    """r(S) = {a : sa = 0 for all s in S}; for an Ideal its additive basis suffices."""
    seeds = _as_seed_array(R, S)
    if len(seeds) == 0:
        return whole(R)
    mask = (R.mul_table[seeds, :] == R.zero).all(axis=0)
    return Ideal(R, mask, "right")


def left_annihilator(R, S):
    seeds = _as_seed_array(R, S)
    if len(seeds) == 0:
        return whole(R)
    mask = (R.mul_table[:, seeds] == R.zero).all(axis=1)
    return Ideal(R, mask, "left")


# ---------------------------------------------------------------- enumeration


def enumerate_ideals(R, limit=DEFAULT_IDEAL_LIMIT):
    """Every two-sided ideal, in canonical order (size, then elements)."""
    def compute():
        mul = R.mul_table
        seen = {}
        order = []
        # with a unity the principal ideal of x only depends on the left ideal Rx
        dedupe = {}
        for x in range(R.size):
            if R.has_unity:
                col = np.zeros(R.size, dtype=bool)
                col[mul[:, x]] = True
                k = np.packbits(col).tobytes()
                if k in dedupe:
                    continue
                dedupe[k] = x
            I = ideal_generated(R, [x])
            if I.key not in seen:
                seen[I.key] = I
                order.append(I)
                if len(seen) > limit:
                    raise LimitError(f"more than {limit} ideals", reached=len(seen))
        queue = deque((i, j) for i in range(len(order)) for j in range(i + 1, len(order)))
        while queue:
            i, j = queue.popleft()
            S = ideal_sum(order[i], order[j])
            if S.key in seen:
                continue
            S = Ideal(R, S.mask, "two-sided", basis=S.basis)
            seen[S.key] = S
            order.append(S)
            if len(seen) > limit:
                raise LimitError(f"more than {limit} ideals", reached=len(seen))
            k = len(order) - 1
            queue.extend((m, k) for m in range(k))
        return tuple(sorted(order, key=Ideal.sort_key))
    out = R.memo(("ideals", limit), compute)
    return list(out)


# ---------------------------------------------------------------- classification


def _packed_rows(mask2d):
    return np.packbits(mask2d, axis=1)


def projection_right_ideals(R):
    """Map from packed eR masks to the first projection e generating them."""
    def compute():
        out = {}
        for e in projection_indices(R):
            m = np.zeros(R.size, dtype=bool)
            m[R.mul_table[e, :]] = True
            out.setdefault(np.packbits(m).tobytes(), e)
        return out
    return R.memo("eR", compute)


def generating_projection(R, I):
    """The first projection e with I = eR, or None."""
    return projection_right_ideals(R).get(np.packbits(I.mask).tobytes())


def right_ideal_classes(R):
    """(class id per element, representative per class) for the relation xR = yR."""
    def compute():
        mul = R.mul_table
        ids = np.empty(R.size, dtype=np.int64)
        reps = []
        index = {}
        for x in range(R.size):
            m = np.zeros(R.size, dtype=bool)
            m[mul[x, :]] = True
            k = np.packbits(m).tobytes()
            if k not in index:
                index[k] = len(reps)
                reps.append(x)
            ids[x] = index[k]
        return ids, tuple(reps)
    return R.memo("xR_classes", compute)


def right_power_chain(R, x):
    """[(xR)^1, ..., (xR)^s] where (xR)^(s+1) = (xR)^s."""
    ids, reps = right_ideal_classes(R)
    cls = int(ids[x])

    def compute():
        base = principal_right(R, reps[cls])
        chain = [base]
        while True:
            nxt = ideal_product(chain[-1], base)
            if nxt == chain[-1]:
                return tuple(chain)
            chain.append(nxt)
    return list(R.memo(("xR_chain", cls), compute))


def annihilator_chain(R, x):
    """[r((xR)^1), ..., r((xR)^s)] along the stabilising power chain."""
    ids, _ = right_ideal_classes(R)
    cls = int(ids[x])
    return list(R.memo(("xR_ann", cls),
                       lambda: tuple(right_annihilator(R, I) for I in right_power_chain(R, x))))


def ann_at(R, x, n):
    chain = annihilator_chain(R, x)
    return chain[min(n, len(chain)) - 1]


FLAG_NAMES = {
    "rickart_star": "rickartStar",
    "baer_star": "baerStar",
    "quasi_baer_star": "quasiBaerStar",
    "pq_baer_star": "pqBaerStar",
    "gen_pq_baer_star": "genPqBaerStar",
    "weakly_gen_pq_baer_star": "weaklyGenPqBaerStar",
    "semi_proper": "semiProper",
    "quasi_proper": "quasiProper",
}


@dataclass(frozen=True)
class ClassificationFlags:
    """Annihilator classification.

    ``counterexamples`` maps each false flag to a witness (an element, a
    list of elements whose annihilators intersect to a bad annihilator,
    an ideal, or a reason string).  ``gen_witnesses`` maps each
    generalized flag to {x: (n, e)}.
    """

    rickart_star: bool
    baer_star: bool
    quasi_baer_star: bool
    pq_baer_star: bool
    gen_pq_baer_star: bool
    weakly_gen_pq_baer_star: bool
    semi_proper: bool
    quasi_proper: bool
    counterexamples: dict = field(default_factory=dict)
    gen_witnesses: dict = field(default_factory=dict)

    def as_dict(self):
        return {v: getattr(self, k) for k, v in FLAG_NAMES.items()}

    def to_json(self, R):
        def enc(w):
            if isinstance(w, str):
                return w
            if isinstance(w, Ideal):
                return {"ideal": w.render()}
            if isinstance(w, (list, tuple)):
                return [R.encode(v) for v in w]
            return R.encode(w)
        return {
            "flags": self.as_dict(),
            "counterexamples": {FLAG_NAMES[k]: enc(v) for k, v in sorted(self.counterexamples.items())},
            "witnesses": {
                FLAG_NAMES[k]: {R.encode(x): {"n": n, "projection": R.encode(e)}
                                for x, (n, e) in sorted(v.items())}
                for k, v in sorted(self.gen_witnesses.items())
            },
        }


def _rickart(R, eR):
    ann = R.mul_table == R.zero
    packed = _packed_rows(ann)
    for x in range(R.size):
        if packed[x].tobytes() not in eR:
            return False, x
    return True, None


def _baer(R, eR, limit):
    ann = R.mul_table == R.zero
    packed = _packed_rows(ann)
    base = {}
    for x in range(R.size):
        base.setdefault(packed[x].tobytes(), (x,))
    found = dict(base)
    queue = deque(found.items())
    base_items = [(np.frombuffer(k, dtype=np.uint8), w) for k, w in base.items()]
    while queue:
        k, w = queue.popleft()
        a = np.frombuffer(k, dtype=np.uint8)
        for b, wb in base_items:
            c = (a & b).tobytes()
            if c not in found:
                found[c] = tuple(sorted(set(w) | set(wb)))
                queue.append((c, found[c]))
                if len(found) > limit:
                    raise LimitError(f"more than {limit} distinct annihilators", reached=len(found))
    bad = sorted((w for k, w in found.items() if k not in eR), key=lambda w: (len(w), w))
    return (False, list(bad[0])) if bad else (True, None)


def _quasi(R, eR, limit):
    for I in enumerate_ideals(R, limit):
        A = right_annihilator(R, I)
        if A.key not in eR:
            return False, I
    return True, None


def _pq(R, eR):
    ids, reps = right_ideal_classes(R)
    bad = {}
    for c, x in enumerate(reps):
        A = right_annihilator(R, principal_right(R, x))
        if A.key not in eR:
            bad[c] = True
    for x in range(R.size):
        if int(ids[x]) in bad:
            return False, x
    return True, None


def _gen_pq(R, eR):
    ids, reps = right_ideal_classes(R)
    per_class = {}
    for c, x in enumerate(reps):
        for n, A in enumerate(annihilator_chain(R, x), start=1):
            e = eR.get(A.key)
            if e is not None:
                per_class[c] = (n, e)
                break
    witnesses = {}
    failure = None
    for x in range(R.size):
        w = per_class.get(int(ids[x]))
        if w is None:
            if failure is None:
                failure = x
        else:
            witnesses[x] = w
    return failure is None, failure, witnesses


def weakly_witnesses(R):
    """{x: (n, e)} for the least n and then the first central projection e
    with x^n e = x^n and r((xR)^n) = r({e}); elements without a pair are
    absent."""
    def compute():
        mul = R.mul_table
        cands = central_projection_indices(R)
        ann_e = {}
        for e in cands:
            m = mul[e, :] == R.zero
            ann_e[e] = np.packbits(m).tobytes()
        out = {}
        for x in range(R.size):
            chain = annihilator_chain(R, x)
            tr = power_trajectory(R, x)
            top = max(len(chain), tr.tail)
            for n in range(1, top + 1):
                A = chain[min(n, len(chain)) - 1]
                xn = tr.power(n)
                hit = next((e for e in cands if mul[xn, e] == xn and ann_e[e] == A.key), None)
                if hit is not None:
                    out[x] = (n, hit)
                    break
        return out
    return R.memo("weakly", compute)


def xrx_star_zero(R):
    """Mask of elements x with x R x* = {0}."""
    def compute():
        mul, star = R.mul_table, R.star_table
        xr = mul
        prod = mul[xr, star[:, None]]
        return (prod == R.zero).all(axis=1)
    return R.memo("xrx*", compute)


def nilpotent_mask(R):
    def compute():
        m = np.zeros(R.size, dtype=bool)
        for x in range(R.size):
            tr = power_trajectory(R, x)
            m[x] = tr.period == 1 and tr.powers[tr.tail - 1] == R.zero
        return m
    return R.memo("nilpotent", compute)


def classify(R, limit=DEFAULT_IDEAL_LIMIT):
    """Decide every flag exhaustively."""
    def compute():
        eR = projection_right_ideals(R)
        cex = {}
        rick, w = _rickart(R, eR)
        if not rick:
            cex["rickart_star"] = w
        baer, w = _baer(R, eR, limit)
        if not baer:
            cex["baer_star"] = w
        quasi, w = _quasi(R, eR, limit)
        if not quasi:
            cex["quasi_baer_star"] = w
        pq, w = _pq(R, eR)
        if not pq:
            cex["pq_baer_star"] = w
        gen_ok, gen_fail, gen_w = _gen_pq(R, eR)
        if not R.has_unity:
            gen = False
            cex["gen_pq_baer_star"] = "no unity"
        else:
            gen = gen_ok
            if not gen:
                cex["gen_pq_baer_star"] = gen_fail
        weak = weakly_witnesses(R)
        weakly = len(weak) == R.size
        if not weakly:
            cex["weakly_gen_pq_baer_star"] = next(x for x in range(R.size) if x not in weak)
        zr = xrx_star_zero(R)
        nil = nilpotent_mask(R)
        semi_bad = [x for x in np.nonzero(zr)[0] if x != R.zero]
        quasi_bad = [x for x in np.nonzero(zr & ~nil)[0]]
        if semi_bad:
            cex["semi_proper"] = int(semi_bad[0])
        if quasi_bad:
            cex["quasi_proper"] = int(quasi_bad[0])
        gw = {"weakly_gen_pq_baer_star": dict(weak)}
        if gen:
            gw["gen_pq_baer_star"] = gen_w
        return ClassificationFlags(rick, baer, quasi, pq, gen, weakly,
                                   not semi_bad, not quasi_bad, cex, gw)
    return R.memo(("classify", limit), compute)


def gen_annihilator_condition(R, a, b):
    """(n, m, c) with c = GC(a) + GC(b) - GC(a)GC(b) and
    r((aR)^n) intersect r((bR)^m) = r(cR)."""
    if not classify(R).gen_pq_baer_star:
        raise PreconditionError(f"{R.spec.describe()} is not generalized p.q.-Baer*")
    ga, gb = gc_of(R, a), gc_of(R, b)
    c = R.sub(R.add(ga, gb), R.mul(ga, gb))
    target = right_annihilator(R, principal_right(R, c))
    ca, cb = annihilator_chain(R, a), annihilator_chain(R, b)
    for n, A in enumerate(ca, start=1):
        for m, B in enumerate(cb, start=1):
            if ideal_intersection(A, B) == target:
                return n, m, c
    raise CheckFailure("no exponents give r((aR)^n) and r((bR)^m) meeting in r(cR)",
                       {"a": R.encode(a), "b": R.encode(b), "c": R.encode(c)})


def right_principal_annihilators(R):
    """Set of keys of r(cR) over all c."""
    def compute():
        _, reps = right_ideal_classes(R)
        return frozenset(right_annihilator(R, principal_right(R, x)).key for x in reps)
    return R.memo("r(cR)", compute)


def require_unity(R):
    if not R.has_unity:
        raise NoUnityError(f"{R.spec.describe()} has no unity")
