"""Prime gcs spectrum, hull-kernel topology and the Boolean algebra of
central projections."""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import CheckFailure, PreconditionError
from .ideals import (DEFAULT_IDEAL_LIMIT, Ideal, annihilator_chain, enumerate_ideals,
                     ideal_generated, ideal_sum, is_closed, left_annihilator, nilpotent_mask,
                     right_annihilator)
from .projections import central_projection_indices, gc_table
from .strict import GcsIdeal, boolean_trace, gcs_ideals, is_gcs, is_prime, is_restricted, prime_witness


# ---------------------------------------------------------------- B(R)


@dataclass(frozen=True)
class BooleanAlgebra:
    carrier: tuple
    atoms: tuple
    maximal_ideals: tuple
    ring: object = field(repr=False, compare=False)

    def join(self, e, f):
        R = self.ring
        return R.sub(R.add(e, f), R.mul(e, f))

    def meet(self, e, f):
        return self.ring.mul(e, f)

    def complement(self, e):
        return self.ring.sub(self.ring.one, e)

    def leq(self, e, f):
        return self.ring.mul(e, f) == e


def boolean_algebra(R):
    """Central projections with e v f = e + f - ef, e ^ f = ef, e' = 1 - e."""
    def compute():
        if not R.has_unity:
            raise PreconditionError("the Boolean algebra of central projections needs a unity")
        C = central_projection_indices(R)
        B = BooleanAlgebra(C, (), (), R)
        cs = set(C)
        zero, one = R.zero, R.one
        for e in C:
            if B.complement(e) not in cs or B.meet(e, B.complement(e)) != zero:
                raise CheckFailure("complement law fails", {"e": R.encode(e)})
            for f in C:
                j, m = B.join(e, f), B.meet(e, f)
                if j not in cs or m not in cs:
                    raise CheckFailure("B(R) not closed", {"e": R.encode(e), "f": R.encode(f)})
                if B.meet(e, j) != e or B.join(e, m) != e:
                    raise CheckFailure("absorption fails", {"e": R.encode(e), "f": R.encode(f)})
                for g in C:
                    if B.meet(e, B.join(f, g)) != B.join(B.meet(e, f), B.meet(e, g)):
                        raise CheckFailure("distributivity fails",
                                           {"e": R.encode(e), "f": R.encode(f), "g": R.encode(g)})
        nonzero = [e for e in C if e != zero]
        atoms = tuple(a for a in nonzero if not any(b != a and B.leq(b, a) for b in nonzero))
        maximal = tuple(tuple(e for e in C if R.mul(e, a) == zero) for a in atoms)
        if one == zero:
            atoms, maximal = (), ()
        return BooleanAlgebra(C, atoms, maximal, R)
    return R.memo("boolean_algebra", compute)


def is_boolean_ideal(B, S):
    S = set(S)
    if B.ring.zero not in S:
        return False
    for e in S:
        for f in B.carrier:
            if B.leq(f, e) and f not in S:
                return False
        for f in S:
            if B.join(e, f) not in S:
                return False
    return True


def maximal_boolean_ideals(B):
    """All maximal ideals of B found by brute force over subsets of the carrier."""
    C = B.carrier
    proper = []
    for mask in range(1 << len(C)):
        S = [C[i] for i in range(len(C)) if mask >> i & 1]
        if B.ring.one in S or not is_boolean_ideal(B, S):
            continue
        proper.append(frozenset(S))
    return sorted((tuple(sorted(S)) for S in proper if not any(S < T for T in proper)))


# ---------------------------------------------------------------- spectrum


@dataclass(frozen=True)
class SpectrumPoint:
    ideal: Ideal
    trace: tuple

    def render(self):
        return self.ideal.render()


def _points_brute(R, limit):
    out = []
    for Q in gcs_ideals(R, limit):
        if prime_witness(R, Q, limit) is None:
            out.append(SpectrumPoint(Q, boolean_trace(R, Q)))
    return tuple(out)


def saturation(R, I):
    """{a : GC(a) in I}."""
    cover = gc_table(R)[0]
    ok = cover >= 0
    mask = np.zeros(R.size, dtype=bool)
    mask[ok] = I.mask[cover[ok]]
    return Ideal(R, mask, "two-sided")


def nil_radical(R):
    """Largest nil ideal: x with rx nilpotent for every r (finite rings)."""
    def compute():
        nil = nilpotent_mask(R)
        mask = nil[R.mul_table].all(axis=0)
        I = Ideal(R, mask, "two-sided")
        if not is_closed(I):
            raise CheckFailure("nil radical is not an ideal", {})
        return I
    return R.memo("nil_radical", compute)


def _points_boolean(R, limit):
    # In a finite ring R is the direct sum of the blocks Ra over the atoms a
    # of B(R).  A proper gcs ideal of a block holds no nonzero central
    # projection, so it is nil, and the only prime one is the nil radical
    # of the block.  The point over M is therefore <M> + N(R).
    B = boolean_algebra(R)
    N = nil_radical(R)
    out = []
    for M in B.maximal_ideals:
        Q = ideal_sum(ideal_generated(R, M), N)
        Q = Ideal(R, Q.mask, "two-sided", generators=M, basis=Q.basis)
        if boolean_trace(R, Q) != tuple(M):
            raise CheckFailure("ideal built from a maximal ideal of B(R) has the wrong trace",
                               {"M": [R.encode(e) for e in M], "Q": Q.render()})
        if not is_gcs(R, Q)[0] or prime_witness(R, Q, limit) is not None:
            raise CheckFailure("ideal built from a maximal ideal of B(R) is not prime gcs",
                               {"M": [R.encode(e) for e in M], "Q": Q.render()})
        out.append(SpectrumPoint(Q, boolean_trace(R, Q)))
    return tuple(sorted(out, key=lambda p: p.ideal.sort_key()))


def spectrum(R, mode="brute", limit=DEFAULT_IDEAL_LIMIT):
    """Sigma(R) in canonical order.

    ``brute`` filters the enumerated ideals; ``boolean`` builds one point
    per maximal ideal M of B(R) as <M> + N(R) without enumerating ideals.
    """
    if mode == "brute":
        return list(R.memo(("spectrum", limit), lambda: _points_brute(R, limit)))
    if mode == "boolean":
        return list(R.memo("spectrum_boolean", lambda: _points_boolean(R, limit)))
    raise ValueError(f"unknown mode {mode!r}")


def psi(R, M):
    """The two-sided ideal generated by a set of central projections."""
    return ideal_generated(R, M)


def spectrum_comparison(R, limit=DEFAULT_IDEAL_LIMIT):
    """Both spectrum modes plus the generated-ideal map on maximal ideals of B(R)."""
    brute = spectrum(R, "brute", limit)
    try:
        boolean = spectrum(R, "boolean", limit)
        error = None
    except CheckFailure as exc:
        boolean, error = [], {"message": str(exc), **exc.witness}
    B = boolean_algebra(R)
    by_trace = {p.trace: p for p in brute}
    generated = []
    for M in B.maximal_ideals:
        G = psi(R, M)
        p = by_trace.get(tuple(M))
        generated.append({
            "maximalIdeal": [R.encode(e) for e in M],
            "generatedIdeal": G.render(),
            "generatedIsPrimeGcs": bool(is_gcs(R, G)[0] and prime_witness(R, G, limit) is None),
            "equalsPoint": p is not None and p.ideal == G,
        })
    return {
        "brute": [p.render() for p in brute],
        "boolean": [p.render() for p in boolean],
        "agree": error is None and [p.ideal for p in brute] == [p.ideal for p in boolean],
        "booleanError": error,
        "generated": generated,
    }


# ---------------------------------------------------------------- hull / kernel


def non_star_closed_points(R, points):
    """Indices of points Q with some x in Q and x* outside Q."""
    out = []
    for i, p in enumerate(points):
        el = list(p.ideal.elements)
        if not p.ideal.mask[R.star_table[el]].all():
            out.append(i)
    return out


def membership(R, points):
    """Boolean matrix (points x elements) of x in Q."""
    if not points:
        return np.zeros((0, R.size), dtype=bool)
    return np.stack([p.ideal.mask for p in points])


def _bits(indices):
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def _indices(bits, n):
    return tuple(i for i in range(n) if bits >> i & 1)


def hull(R, S, points):
    """Indices of points containing every element of S."""
    el = list(S.elements) if isinstance(S, Ideal) else [int(s) for s in S]
    return tuple(i for i, p in enumerate(points) if all(p.ideal.mask[x] for x in el))


def kernel(R, A, points):
    """Intersection of the chosen points; the empty intersection is R."""
    mask = np.ones(R.size, dtype=bool)
    for i in A:
        mask &= points[i].ideal.mask
    return Ideal(R, mask, "two-sided")


def basic_open(R, x, points):
    """P(x): points not containing x."""
    return tuple(i for i, p in enumerate(points) if not p.ideal.mask[x])


def radical(R, points):
    return kernel(R, range(len(points)), points)


def ann_ideal(R, I):
    """Two-sided annihilator; r(I) and l(I) are compared by ann_record."""
    r = right_annihilator(R, I)
    return Ideal(R, r.mask, "two-sided")


def ann_record(R, I, points):
    r = right_annihilator(R, I)
    l = left_annihilator(R, I)
    A = Ideal(R, r.mask, "two-sided")
    K = kernel(R, [i for i in range(len(points)) if i not in hull(R, I, points)], points)
    return {
        "leftEqualsRight": r == l,
        "isIdeal": is_closed(A),
        "gcs": bool(is_closed(A) and is_gcs(R, A)[0]),
        "kernelIdentity": A == K,
        "ann": A.render(),
        "kernel": K.render(),
    }


def kernel_hull_check(R, I, points):
    """(holds, elements of K(H(I)) missing from I)."""
    I = I.ideal if isinstance(I, GcsIdeal) else I
    K = kernel(R, hull(R, I, points), points)
    extra = [R.encode(x) for x in np.nonzero(K.mask & ~I.mask)[0]]
    missing = [R.encode(x) for x in np.nonzero(I.mask & ~K.mask)[0]]
    return K == I, {"extra": extra, "missing": missing}


def prime_ideals(R, limit=DEFAULT_IDEAL_LIMIT):
    return R.memo(("primes", limit),
                  lambda: tuple(P for P in enumerate_ideals(R, limit) if is_prime(R, P, limit)))


def go_quantifier_form(R, P):
    """{a : r((aR)^n) is not inside P for some n}."""
    mask = np.zeros(R.size, dtype=bool)
    for a in range(R.size):
        mask[a] = any(not A <= P for A in annihilator_chain(R, a))
    return Ideal(R, mask, "two-sided")


def go_ideal(R, P, limit=DEFAULT_IDEAL_LIMIT):
    """GO(P) = {a : GC(a) in P}, checked against the quantifier form."""
    if not is_prime(R, P, limit):
        raise PreconditionError("GO(P) needs a prime ideal P")
    G = saturation(R, P)
    Q = go_quantifier_form(R, P)
    if G != Q:
        raise CheckFailure("closed form of GO(P) differs from the quantifier form",
                           {"P": P.render(), "closed": G.render(), "quantifier": Q.render()})
    if not is_closed(G) or not is_gcs(R, G)[0] or prime_witness(R, G, limit) is not None:
        raise CheckFailure("GO(P) is not a prime gcs ideal", {"P": P.render(), "GO": G.render()})
    return GcsIdeal(G, True)


# ---------------------------------------------------------------- topology


@dataclass(frozen=True)
class TopologySnapshot:
    points: tuple
    basis: dict
    open_sets: tuple
    radical: Ideal


def basis_bits(R, points):
    """P(x) as a bitmask over points, for every x."""
    def compute():
        mem = membership(R, points)
        out = np.zeros(R.size, dtype=object)
        for x in range(R.size):
            out[x] = _bits(np.nonzero(~mem[:, x])[0])
        return out
    key = ("basis_bits", tuple(p.ideal.key for p in points))
    return R.memo(key, compute)


def _unions(sets):
    opens = {0}
    for s in sets:
        opens |= {o | s for o in opens}
    return opens


def topology_report(R, limit=DEFAULT_IDEAL_LIMIT):
    """Snapshot plus a record of every topological property with witnesses."""
    points = spectrum(R, "brute", limit)
    n = len(points)
    full = (1 << n) - 1
    cover, exponent, _ = gc_table(R)
    bits = basis_bits(R, points)
    one = R.one
    rec = {}

    bad = []
    for x in range(R.size):
        comp = full & ~bits[R.sub(one, int(cover[x]))]
        if bits[x] != comp:
            bad.append(R.encode(x))
    rec["complementIdentity"] = {"holds": not bad, "failures": bad[:5]}

    distinct = sorted(set(bits.tolist()))
    union = 0
    for b in distinct:
        union |= b
    # P(x1) ^ P(x2) = P(GC(x1)GC(x2)); only (P(x), GC(x)) matters
    reps = {}
    for x in range(R.size):
        reps.setdefault((bits[x], int(cover[x])), x)
    reps = sorted(reps.values())
    basis_bad = []
    for x1 in reps:
        for x2 in reps:
            e = R.mul(int(cover[x1]), int(cover[x2]))
            if bits[e] != bits[x1] & bits[x2]:
                basis_bad.append([R.encode(x1), R.encode(x2)])
    # the basis axiom proper: each intersection is a union of basis sets
    union_bad = []
    for b1, b2 in combinations(distinct, 2):
        meet = b1 & b2
        u = 0
        for b in distinct:
            if not b & ~meet:
                u |= b
        if u != meet:
            union_bad.append([_indices(b1, n), _indices(b2, n)])
    rec["basis"] = {"covers": bool(union == full), "intersections": not basis_bad,
                    "failures": basis_bad[:5], "unionOfBasis": not union_bad,
                    "unionFailures": union_bad[:5]}

    opens = _unions(distinct)
    clopen_bad = [_indices(b, n) for b in distinct if (full & ~b) not in opens]
    rec["clopen"] = {"holds": not clopen_bad, "failures": clopen_bad}

    sep_bad = []
    for i, j in combinations(range(n), 2):
        ok = any(b1 >> i & 1 and b2 >> j & 1 and not b1 & b2
                 for b1 in distinct for b2 in distinct)
        if not ok:
            sep_bad.append([i, j])
    rec["hausdorff"] = {"holds": not sep_bad, "failures": sep_bad}
    rec["discrete"] = all((1 << i) in opens for i in range(n))

    # every cover by basic opens has a finite subcover; exhaustive over
    # families of distinct basis sets when there are few of them
    families = []
    if len(distinct) <= 12:
        for r in range(1, len(distinct) + 1):
            families.extend(combinations(distinct, r))
    else:
        families.append(tuple(distinct))
    compact_bad = []
    for fam in families:
        u = 0
        for b in fam:
            u |= b
        if u != full:
            continue
        sub, got = [], 0
        for b in sorted(fam, key=lambda b: -bin(b).count("1")):
            if b & ~got:
                sub.append(b)
                got |= b
        if got != full:
            compact_bad.append([_indices(b, n) for b in fam])
    rec["compact"] = {"holds": not compact_bad, "coversChecked": len(families),
                      "failures": compact_bad[:3]}

    B = boolean_algebra(R)
    traces = [p.trace for p in points]
    maximal = [tuple(M) for M in B.maximal_ideals]
    rec["phi"] = {
        "injective": len(set(traces)) == len(traces),
        "surjective": set(traces) == set(maximal),
        "intoMaximal": all(t in maximal for t in traces),
        "continuous": all(bits[e] in opens for e in B.carrier),
    }
    rec["phi"]["bijective"] = (rec["phi"]["injective"] and rec["phi"]["surjective"])
    psi_rows = []
    for p in points:
        G = psi(R, p.trace)
        psi_rows.append({"point": p.render(), "generated": G.render(), "inverse": G == p.ideal,
                         "restricted": is_restricted(R, p.ideal)})
    rec["psi"] = psi_rows
    rad = radical(R, points)
    rec["radical"] = rad.render()
    snap = TopologySnapshot(tuple(points), {x: _indices(bits[x], n) for x in range(R.size)},
                            tuple(_indices(o, n) for o in sorted(opens)), rad)
    return snap, rec


def gc_orthogonality_check(R, x, y, points):
    """(y in every Q of P(x), GC(x)GC(y) = 0)."""
    lhs = all(points[i].ideal.mask[y] for i in basic_open(R, x, points))
    cover = gc_table(R)[0]
    rhs = R.mul(int(cover[x]), int(cover[y])) == R.zero
    return lhs, rhs


def gc_orthogonality_scan(R, points):
    """Every disagreement of the biconditional, one representative per class."""
    cover = gc_table(R)[0]
    bits = basis_bits(R, points)
    n = len(points)
    mem = membership(R, points)
    hull_bits = [_bits(np.nonzero(mem[:, y])[0]) for y in range(R.size)]
    xs, ys = {}, {}
    for x in range(R.size):
        xs.setdefault((bits[x], int(cover[x])), x)
        ys.setdefault((hull_bits[x], int(cover[x])), x)
    bad = []
    for (bx, gx), x in sorted(xs.items(), key=lambda kv: kv[1]):
        for (hy, gy), y in sorted(ys.items(), key=lambda kv: kv[1]):
            lhs = bx & ~hy == 0
            rhs = R.mul(gx, gy) == R.zero
            if lhs != rhs:
                bad.append((x, y, lhs, rhs))
    return bad
