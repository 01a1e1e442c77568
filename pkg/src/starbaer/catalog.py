"""Executable checks for every result about generalized p.q.-Baer *-rings,
keyed by stable IDs, plus the worked examples."""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import CheckFailure, LatticeError, LimitError, PreconditionError
from .ideals import (DEFAULT_IDEAL_LIMIT, ann_at, annihilator_chain, classify, enumerate_ideals,
                     ideal_generated, ideal_intersection, principal_right, right_annihilator,
                     right_ideal_classes, right_principal_annihilators, weakly_witnesses,
                     gen_annihilator_condition, ideal_sum, is_closed, from_elements)
from .projections import (brute_inf, brute_sup, central_cover_table, central_projection_indices,
                          gc_table, is_equivalent, is_lattice, lattice_formula_agreement, leq,
                          meets_nonzero, orthogonal_decomposition, parallelogram_law,
                          parallelogram_pair, pc_check, position_p_gc_check, projection_indices,
                          very_orthogonal)
from .ring import DEFAULT_ELEMENT_LIMIT, center_mask, power_trajectory
from .sheaf import gamma_size, gelfand_iso_check, section_power_scan, trajectory_bound
from .spectrum import (ann_record, boolean_algebra, go_quantifier_form, kernel_hull_check,
                       prime_ideals, radical, saturation, spectrum, topology_report,
                       gc_orthogonality_scan)
from .strict import (fixture_set, gc_inequality_failures, gc_set_closure, gcs_arithmetic_check,
                     gcs_ideals, is_gc_set, is_gcs, is_prime, is_prime_gcs, is_restricted,
                     separate, boolean_trace)
from .unitification import build_unitification, embedding_checks, quasi_proper_check

THEOREM = "THEOREM"
FINDING = "FINDING"
# FINDING when the intersection of all spectrum points is nonzero, else THEOREM
RADICAL = "RADICAL"


class Context:
    """A ring under test with its limits and lazily computed structure."""

    def __init__(self, R, ideal_limit=DEFAULT_IDEAL_LIMIT, element_limit=DEFAULT_ELEMENT_LIMIT):
        self.R = R
        self.ideal_limit = ideal_limit
        self.element_limit = element_limit
        self._cache = {}

    def _get(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    @property
    def flags(self):
        return classify(self.R, self.ideal_limit)

    @property
    def points(self):
        return spectrum(self.R, "brute", self.ideal_limit)

    @property
    def gcs(self):
        return gcs_ideals(self.R, self.ideal_limit)

    @property
    def ideals(self):
        return enumerate_ideals(self.R, self.ideal_limit)

    @property
    def topology(self):
        return self._get("topology", lambda: topology_report(self.R, self.ideal_limit)[1])

    def radical_is_zero(self):
        return radical(self.R, self.points).is_zero()

    def unitification(self):
        def compute():
            R = self.R
            return build_unitification(R, R.characteristic, limit=self.element_limit)
        return self._get("unitification", compute)

    def enc(self, x):
        return self.R.encode(int(x))

    def encs(self, xs):
        return [self.R.encode(int(x)) for x in xs]


@dataclass(frozen=True)
class Entry:
    pid: str
    title: str
    expected: str
    operation: str
    check: object = field(repr=False)
    requires: tuple = ()
    applies: object = field(default=None, repr=False)


# ---------------------------------------------------------------- applicability


def _lattice(ctx):
    return None if is_lattice(ctx.R) else "projections do not form a lattice"


def _unity(ctx):
    return None if ctx.R.has_unity else "ring has no unity"


def _all_projections_covered(ctx):
    cover = gc_table(ctx.R)[0]
    if all(cover[e] >= 0 for e in projection_indices(ctx.R)):
        return None
    return "some projection has no generalized central cover"


def _commutative(ctx):
    return None if ctx.R.is_commutative else "ring is not commutative"


def _parallelogram(ctx):
    why = _lattice(ctx)
    if why:
        return why
    return None if parallelogram_law(ctx.R)[0] else "the parallelogram law fails"


def _unitifiable(ctx):
    R = ctx.R
    p = R.characteristic
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        return f"additive characteristic {p} is not prime, so Z_p scalars do not act"
    if R.size * p > ctx.element_limit:
        return {"reason": "limit", "elements": R.size * p, "limit": ctx.element_limit}
    try:
        ctx.unitification()
    except PreconditionError as exc:
        return f"unitification hypothesis fails: {exc}"
    return None


def _fixture(name):
    def applies(ctx):
        if any(f.name == name for f in ctx.R.spec.fixtures):
            return None
        return f"ring spec has no fixture {name!r}"
    return applies


def _is_m2_zn(q):
    def applies(ctx):
        s = ctx.R.spec
        if s.kind == "matrix" and s.size == 2 and s.base.kind == "zn" and s.base.n == q:
            return None
        return f"example concerns M2(Z{q})"
    return applies


def _doubled_m2(ctx):
    s = ctx.R.spec
    if (s.kind == "product" and len(s.factors) == 2
            and all(f.kind == "matrix" and f.size == 2 for f in s.factors)
            and s.factors[0] == s.factors[1]):
        return _fixture("A")(ctx)
    return "example concerns M2(F) x M2(F)"


def _both(*preds):
    def applies(ctx):
        for p in preds:
            why = p(ctx)
            if why:
                return why
        return None
    return applies


def _fixture_by_name(ctx, name):
    return next(f for f in ctx.R.spec.fixtures if f.name == name)


# ---------------------------------------------------------------- projections and covers


def _p2_lattice(ctx):
    R = ctx.R
    if not is_lattice(R):
        return False, {"reason": "projections do not form a lattice"}
    bad = lattice_formula_agreement(R, "C")
    gc_bad = lattice_formula_agreement(R, "GC")
    k = len(projection_indices(R))
    return not bad, {"pairs": k * k, "failures": [_render_pair(ctx, d) for d in bad[:5]],
                     "disagreements": len(bad), "gcFormulaDisagreements": len(gc_bad)}


def _render_pair(ctx, d):
    return {k: (ctx.enc(v) if v >= 0 else None) for k, v in d.items()}


def _p2_complete_qb(ctx):
    f = ctx.flags
    lat = is_lattice(ctx.R)
    return f.quasi_baer_star == (f.pq_baer_star and lat), {
        "quasiBaerStar": f.quasi_baer_star, "pqBaerStar": f.pq_baer_star, "completeLattice": lat}


def _p2_ann_intersect(ctx):
    R = ctx.R
    wit = ctx.flags.gen_witnesses["gen_pq_baer_star"]
    ids, _ = right_ideal_classes(R)
    seen = set()
    for x in range(R.size):
        n = wit[x][0]
        p = R.power(R.star(x), n)
        key = (int(ids[x]), n, p)
        if key in seen:
            continue
        seen.add(key)
        A = ann_at(R, x, n)
        pR = np.zeros(R.size, dtype=bool)
        pR[R.mul_table[p, :]] = True
        meet = np.nonzero(A.mask & pR)[0]
        if len(meet) > 1:
            return False, {"x": ctx.enc(x), "n": n, "intersection": ctx.encs(meet)}
    return True, {"elements": R.size, "checked": len(seen)}


def _p2_gcexist(ctx):
    R = ctx.R
    w = weakly_witnesses(R)
    missing = [x for x in range(R.size) if x not in w]
    if missing:
        return False, {"x": ctx.enc(missing[0])}
    cover = gc_table(R)[0]
    same = sum(1 for x, (n, e) in w.items() if e == cover[x])
    return True, {"elements": R.size, "witnessEqualsGC": same}


def _p2_gc_monotone(ctx):
    R = ctx.R
    cover = gc_table(R)[0]
    P = projection_indices(R)
    pairs = 0
    for e in P:
        for f in P:
            if leq(R, e, f):
                pairs += 1
                if not leq(R, int(cover[e]), int(cover[f])):
                    return False, {"e": ctx.enc(e), "f": ctx.enc(f)}
    return True, {"comparablePairs": pairs}


def _p2_gc_central_commute(ctx):
    R = ctx.R
    cover = gc_table(R)[0]
    for e in projection_indices(R):
        for h in central_projection_indices(R):
            if int(cover[R.mul(h, e)]) != R.mul(h, int(cover[e])):
                return False, {"e": ctx.enc(e), "h": ctx.enc(h)}
    return True, {"projections": len(projection_indices(R)),
                  "centralProjections": len(central_projection_indices(R))}


def _p2_gc_star_comm(ctx):
    R = ctx.R
    cover = gc_table(R)[0]
    for x in range(R.size):
        if cover[x] != cover[R.star(x)]:
            return False, {"clause": "GC(x) = GC(x*)", "x": ctx.enc(x)}
    least = {}
    for x in range(R.size):
        chain = annihilator_chain(R, x)
        gx = int(cover[x])
        hit = None
        for n, A in enumerate(chain, start=1):
            if all(R.mul(gx, int(cover[y])) == R.zero for y in A.elements):
                hit = n
                break
        if hit is None:
            return False, {"clause": "(xR)^n y = 0 implies GC(x)GC(y) = 0", "x": ctx.enc(x)}
        least[hit] = least.get(hit, 0) + 1
    return True, {"leastExponentCounts": {str(k): v for k, v in sorted(least.items())}}


def _p2_char_ann(ctx):
    R = ctx.R
    lhs = ctx.flags.gen_pq_baer_star
    cond = True
    bad = None
    if R.has_unity:
        C = central_projection_indices(R)
        _, reps = right_ideal_classes(R)
        for x in reps:
            cx = annihilator_chain(R, x)
            ok = False
            for e in C:
                ce = annihilator_chain(R, e)
                top = max(len(cx), len(ce))
                if any(cx[min(n, len(cx)) - 1] == ce[min(n, len(ce)) - 1] for n in range(1, top + 1)):
                    ok = True
                    break
            if not ok:
                cond, bad = False, x
                break
    rhs = R.has_unity and cond
    data = {"genPqBaerStar": lhs, "unity": R.has_unity, "annihilatorCondition": cond}
    if bad is not None:
        data["x"] = ctx.enc(bad)
    return lhs == rhs, data


# ---------------------------------------------------------------- unitification


def _p3_weakly_quasiproper(ctx):
    ok, w = quasi_proper_check(ctx.R)
    return ok, {} if ok else {"x": ctx.enc(w)}


def _p3_weakly_unity(ctx):
    f = ctx.flags
    return f.gen_pq_baer_star == (f.weakly_gen_pq_baer_star and ctx.R.has_unity), {
        "genPqBaerStar": f.gen_pq_baer_star, "weaklyGenPqBaerStar": f.weakly_gen_pq_baer_star,
        "unity": ctx.R.has_unity}


def _p3_gc_lift(ctx):
    U = ctx.unitification()
    R, R1, p = U.base, U.ring, U.scalars.p
    cover, cover1 = gc_table(R)[0], gc_table(R1)[0]
    for x in range(R.size):
        c, c1 = int(cover[x]), int(cover1[U.embed[x]])
        forward = c < 0 or c1 == int(U.embed[c])
        backward = c1 < 0 or c1 % p != 0 or c == c1 // p
        if not (forward and backward):
            return False, {"x": ctx.enc(x), "GC": None if c < 0 else ctx.enc(c),
                           "GC1": None if c1 < 0 else R1.encode(c1)}
    return True, {"elements": R.size, "unitificationSize": R1.size}


def _p3_upperbound(ctx):
    R = ctx.R
    P = projection_indices(R)
    C = central_projection_indices(R)
    for e in P:
        for f in P:
            if not any(leq(R, e, g) and leq(R, f, g) for g in C):
                return False, {"e": ctx.enc(e), "f": ctx.enc(f)}
    return True, {"pairs": len(P) ** 2}


def _p3_embed(ctx):
    U = ctx.unitification()
    rec = embedding_checks(U)
    R1 = U.ring
    unity_ok = R1.one == U.pair(U.base.zero, 1)
    steps = rec["largestCentralStep"]
    ok = (rec["genPqBaerStar"] and rec["starIdeal"] and unity_ok and rec["gcLift"]["holds"]
          and rec["quasiProper"]["lifts"] and rec["upperBound"]["holds"] and steps["holds"])
    data = {
        "p": U.scalars.p,
        "size": rec["size"],
        "unity": rec["unity"],
        "genPqBaerStar": rec["genPqBaerStar"],
        "starIdeal": rec["starIdeal"],
        "gcLift": rec["gcLift"]["holds"],
        "quasiProper": {k: rec["quasiProper"][k] for k in ("base", "unitification", "lifts")},
        "upperBound": rec["upperBound"]["holds"],
        "largestCentralStep": steps["holds"],
        "largestCentralStepFailures": [r for r in steps["rows"]
                                       if not (r["agrees"] and r["coverMatches"])][:5],
        "eLambda": rec["eLambda"],
    }
    return ok, data


# ---------------------------------------------------------------- comparability


def _p4_para_central(ctx):
    R = ctx.R
    cm = center_mask(R)
    P = projection_indices(R)
    n = 0
    for e in P:
        for f in P:
            if cm[e] or cm[f]:
                n += 1
                if not parallelogram_pair(R, e, f):
                    return False, {"e": ctx.enc(e), "f": ctx.enc(f)}
    return True, {"pairs": n}


def _p4_position_gc(ctx):
    R = ctx.R
    P = projection_indices(R)
    bad = []
    for e in P:
        for f in P:
            lhs, rhs = position_p_gc_check(R, e, f)
            if lhs != rhs:
                bad.append({"e": ctx.enc(e), "f": ctx.enc(f), "positionPprime": lhs,
                            "gcCondition": rhs})
    return not bad, {"pairs": len(P) ** 2, "disagreements": len(bad), "failures": bad[:5]}


def _p4_para_char(ctx):
    R = ctx.R
    law, pair = parallelogram_law(R)
    P = projection_indices(R)
    one = R.one
    cond, first = True, None
    for e in P:
        for f in P:
            pp = (brute_inf(R, e, R.sub(one, f)) == R.zero and brute_inf(R, R.sub(one, e), f) == R.zero)
            if pp and not is_equivalent(R, e, f):
                cond, first = False, (e, f)
                break
        if not cond:
            break
    data = {"parallelogramLaw": law, "positionPprimeImpliesEquivalent": cond}
    if pair:
        data["lawFailure"] = ctx.encs(pair)
    if first:
        data["conditionFailure"] = ctx.encs(first)
    return law == cond, data


def _p4_veryorth(ctx):
    R = ctx.R
    cover = gc_table(R)[0]
    P = projection_indices(R)
    n = 0
    for e in P:
        for f in P:
            if very_orthogonal(R, e, f) is None:
                continue
            n += 1
            problems = []
            if R.mul(e, f) != R.zero:
                problems.append("ef != 0")
            if R.mul(int(cover[e]), int(cover[f])) != R.zero:
                problems.append("GC(e)GC(f) != 0")
            if meets_nonzero(R, e, f):
                problems.append("eRf != 0")
            if problems:
                return False, {"e": ctx.enc(e), "f": ctx.enc(f), "problems": problems}
    return True, {"veryOrthogonalPairs": n}


def _p4_pc(ctx):
    R = ctx.R
    cover = gc_table(R)[0]
    ids, _ = right_ideal_classes(R)
    reps = {}
    for x in range(R.size):
        reps.setdefault((int(ids[x]), int(cover[x])), x)
    # h = 0 always meets the stated bound; record where no nonzero h exists
    zero_h = []
    for (_, gx), x in sorted(reps.items(), key=lambda kv: kv[1]):
        ann = right_annihilator(R, principal_right(R, x)).mask
        for g in np.unique(cover[~ann]):
            if g >= 0 and R.mul(gx, int(g)) == R.zero:
                y = int(np.nonzero(~ann & (cover == g))[0][0])
                zero_h.append({"x": ctx.enc(x), "y": ctx.enc(y)})
    try:
        ok, w = pc_check(R)
    except LatticeError as exc:
        return False, {"clause": "PC", "reason": str(exc)}
    data = {"elementClasses": len(reps), "onlyZeroH": len(zero_h), "onlyZeroHExamples": zero_h[:5]}
    if not ok:
        return False, {"clause": "PC", "e": ctx.enc(w[0]), "f": ctx.enc(w[1]), **data}
    return True, {"pcPairs": len(w), **data}


def _p4_orthdecomp(ctx):
    R = ctx.R
    P = projection_indices(R)
    C = central_projection_indices(R)
    construction_bad = 0
    for e in P:
        for f in P:
            found = None
            for e1 in C:
                if R.mul(f, R.sub(e, e1)) != R.zero:
                    continue
                for f1 in C:
                    if R.mul(e, R.sub(f, f1)) == R.zero and is_equivalent(R, e1, f1):
                        found = (e1, f1)
                        break
                if found:
                    break
            try:
                orthogonal_decomposition(R, e, f)
            except CheckFailure:
                construction_bad += 1
            if found is None:
                return False, {"e": ctx.enc(e), "f": ctx.enc(f)}
    return True, {"pairs": len(P) ** 2, "gcConstructionFailures": construction_bad}


# ---------------------------------------------------------------- gcs ideals


def _p5_gen_gcs(ctx):
    R = ctx.R
    for e in central_projection_indices(R):
        ok, x = is_gcs(R, ideal_generated(R, [e]))
        if not ok:
            return False, {"e": ctx.enc(e), "x": ctx.enc(x)}
    return True, {"centralProjections": len(central_projection_indices(R))}


def _p5_power_in(ctx):
    R = ctx.R
    cover, exponent, _ = gc_table(R)
    n = 0
    for I in ctx.gcs:
        for x in np.nonzero(I.mask[np.where(cover < 0, 0, cover)] & (cover >= 0))[0]:
            x = int(x)
            n += 1
            if not I.mask[R.power(x, int(exponent[x]))]:
                return False, {"I": I.render(), "x": ctx.enc(x), "n": int(exponent[x])}
    return True, {"gcsIdeals": len(ctx.gcs), "pairs": n}


def _p5_prime_usual(ctx):
    R = ctx.R
    n = 0
    for P in ctx.gcs:
        if is_prime(R, P, ctx.ideal_limit):
            n += 1
            if not is_prime_gcs(R, P, ctx.ideal_limit):
                return False, {"P": P.render()}
    return True, {"primeGcsIdealsChecked": n}


def _p5_gc_ineq(ctx):
    R = ctx.R
    el = list(range(R.size))
    bad = gc_inequality_failures(R, el, el)
    if bad:
        b, c = bad[0]
        return False, {"b": ctx.enc(b), "c": ctx.enc(c)}
    return True, {"elements": R.size}


def _p5_bmax(ctx):
    R = ctx.R
    B = boolean_algebra(R)
    maximal = {tuple(M) for M in B.maximal_ideals}
    bad = []
    for Q in ctx.gcs:
        prime = is_prime_gcs(R, Q, ctx.ideal_limit)
        mx = boolean_trace(R, Q) in maximal
        if prime != mx:
            bad.append({"Q": Q.render(), "primeGcs": prime, "traceMaximal": mx})
    return not bad, {"gcsIdeals": len(ctx.gcs), "failures": bad[:5]}


def _p5_gcset_prime(ctx):
    R = ctx.R
    cover = gc_table(R)[0]
    n = 0
    for P in ctx.ideals:
        S = np.nonzero(~P.mask)[0]
        if not len(S) or not is_gc_set(R, S)[0]:
            continue
        outside = ~P.mask[np.where(cover < 0, 0, cover)] & (cover >= 0)
        if (outside & P.mask).any():
            continue
        n += 1
        if not is_prime_gcs(R, P, ctx.ideal_limit):
            return False, {"P": P.render()}
    return True, {"idealsMeetingHypothesis": n}


def _p5_sumprod_gcs(ctx):
    R = ctx.R
    G = ctx.gcs
    exps = {}
    for I in G:
        for J in G:
            n, m = gcs_arithmetic_check(R, I, J)
            exps[f"{n},{m}"] = exps.get(f"{n},{m}", 0) + 1
    return True, {"pairs": len(G) ** 2, "exponentCounts": dict(sorted(exps.items()))}


def _gc_set_family(R):
    fam = {frozenset([R.one])}
    for e in central_projection_indices(R):
        if e != R.zero:
            fam.add(frozenset([e]))
    for x in range(R.size):
        S = gc_set_closure(R, [x])
        if R.zero not in S:
            fam.add(S)
    return sorted(fam, key=lambda s: (len(s), sorted(s)))


def _p5_separation(ctx):
    R = ctx.R
    G = ctx.gcs
    fam = _gc_set_family(R)
    done = set()
    n = 0
    for M in fam:
        if not is_gc_set(R, M)[0]:
            return False, {"clause": "family member is not a GC-set", "M": ctx.encs(sorted(M))}
        sig = tuple(Q.isdisjoint(M) for Q in G)
        for i, I in enumerate(G):
            if not sig[i] or (i, sig) in done:
                continue
            done.add((i, sig))
            n += 1
            Q = separate(R, I, M, ctx.ideal_limit).ideal
            if not (I <= Q and Q.isdisjoint(M)):
                return False, {"I": I.render(), "M": ctx.encs(sorted(M)), "Q": Q.render()}
    return True, {"gcSets": len(fam), "separations": n}


# ---------------------------------------------------------------- spectrum and sheaf


def _p6_basis(ctx):
    b = ctx.topology["basis"]
    ok = b["covers"] and b["unionOfBasis"]
    return ok, {"covers": b["covers"], "unionOfBasis": b["unionOfBasis"],
                "unionFailures": b["unionFailures"],
                "intersectionViaGCProduct": b["intersections"],
                "complementIdentity": ctx.topology["complementIdentity"]["holds"]}


def _p6_ann_gcs(ctx):
    R = ctx.R
    for I in ctx.ideals:
        rec = ann_record(R, I, ctx.points)
        if not (rec["leftEqualsRight"] and rec["isIdeal"] and rec["gcs"]):
            return False, {"I": I.render(), **{k: rec[k] for k in ("leftEqualsRight", "isIdeal", "gcs")}}
    return True, {"ideals": len(ctx.ideals)}


def _p6_ann_kernel(ctx):
    R = ctx.R
    bad = []
    for I in ctx.gcs:
        rec = ann_record(R, I, ctx.points)
        if not rec["kernelIdentity"]:
            bad.append({"I": I.render(), "ann": rec["ann"], "kernel": rec["kernel"]})
    return not bad, {"gcsIdeals": len(ctx.gcs), "failures": bad[:5]}


def _p6_kh_ident(ctx):
    R = ctx.R
    bad = []
    for I in ctx.gcs:
        ok, diff = kernel_hull_check(R, I, ctx.points)
        if not ok:
            bad.append({"I": I.render(), **diff})
    return not bad, {"gcsIdeals": len(ctx.gcs), "failures": bad[:5]}


def _p6_gc_product_ideal(ctx):
    R = ctx.R
    cover = gc_table(R)[0]
    vals = sorted(set(int(c) for c in cover if c >= 0))
    gen = {e: ideal_generated(R, [e]) for e in vals}
    for e, f in combinations(vals, 2):
        if ideal_intersection(gen[e], gen[f]) != ideal_generated(R, [R.mul(e, f)]):
            return False, {"GC(a)": ctx.enc(e), "GC(b)": ctx.enc(f)}
    return True, {"coverValues": len(vals)}


def _p6_gen_ac(ctx):
    R = ctx.R
    targets = right_principal_annihilators(R)
    _, reps = right_ideal_classes(R)
    for a in reps:
        ca = annihilator_chain(R, a)
        for b in reps:
            cb = annihilator_chain(R, b)
            if not any(ideal_intersection(A, B).key in targets for A in ca for B in cb):
                return False, {"a": ctx.enc(a), "b": ctx.enc(b)}
    formula_bad = 0
    for a in reps:
        for b in reps:
            try:
                gen_annihilator_condition(R, a, b)
            except CheckFailure:
                formula_bad += 1
    return True, {"classes": len(reps), "formulaFailures": formula_bad}


def _p6_hausdorff(ctx):
    t = ctx.topology
    ok = t["clopen"]["holds"] and t["hausdorff"]["holds"]
    return ok, {"clopen": t["clopen"], "hausdorff": t["hausdorff"],
                "complementIdentity": t["complementIdentity"]}


def _p6_compact_phi(ctx):
    t = ctx.topology
    phi = t["phi"]
    ok = t["compact"]["holds"] and phi["bijective"] and phi["continuous"]
    return ok, {"compact": t["compact"], "phi": phi,
                "psiInverse": sum(r["inverse"] for r in t["psi"]),
                "restrictedPoints": sum(r["restricted"] for r in t["psi"]),
                "points": len(t["psi"])}


def _p6_orth_lemma(ctx):
    R = ctx.R
    bad = gc_orthogonality_scan(R, ctx.points)
    rows = [{"x": ctx.enc(x), "y": ctx.enc(y), "membership": l, "gcProductZero": r}
            for x, y, l, r in bad[:5]]
    return not bad, {"disagreements": len(bad), "failures": rows,
                     "radical": radical(R, ctx.points).render()}


def _p6_section_power(ctx):
    R = ctx.R
    roots = section_power_scan(R, ctx.ideal_limit)
    ms = [m for m, _ in roots]
    return True, {"sections": len(roots), "maxExponent": max(ms) if ms else 0,
                  "trajectoryBound": trajectory_bound(R, ctx.ideal_limit),
                  "gelfandKernel": radical(R, ctx.points).render()}


def _p6_gelfand_iso(ctx):
    rec = gelfand_iso_check(ctx.R, ctx.ideal_limit)
    ok = rec["homomorphism"] and rec["starPreserving"] and rec["bijective"]
    return ok, rec


def _p6_go_prime(ctx):
    R = ctx.R
    primes = prime_ideals(R, ctx.ideal_limit)
    closed = 0
    for P in primes:
        G = go_quantifier_form(R, P)
        closed += saturation(R, P) == G
        if not is_closed(G) or not is_prime_gcs(R, G, ctx.ideal_limit):
            return False, {"P": P.render(), "GO": G.render()}
    return True, {"primes": len(primes), "closedFormAgrees": closed}


def _p6_go_form(ctx):
    R = ctx.R
    primes = prime_ideals(R, ctx.ideal_limit)
    gos = [go_quantifier_form(R, P) for P in primes]
    for p in ctx.points:
        if not any(G == p.ideal for G in gos):
            return False, {"point": p.render()}
    return True, {"points": len(ctx.points), "primes": len(primes)}


# ---------------------------------------------------------------- worked examples


def _ex2_central_proj(ctx):
    R = ctx.R
    k = R.spec.factors[0].base.n
    I = [[1, 0], [0, 1]]
    Z = [[0, 0], [0, 0]]
    want = sorted(R.index([a, b]) for a in (Z, I) for b in (Z, I))
    got = list(central_projection_indices(R))
    return got == want, {"centralProjections": ctx.encs(got), "field": f"Z{k}"}


def _ex2_covers(ctx):
    R = ctx.R
    A = R.index(_fixture_by_name(ctx, "A").values[0])
    c = int(central_cover_table(R)[0][A])
    g, n = int(gc_table(R)[0][A]), int(gc_table(R)[1][A])
    I = [[1, 0], [0, 1]]
    Z = [[0, 0], [0, 0]]
    ok = c == R.index([I, I]) and g == R.index([I, Z]) and n == 2
    return ok, {"A": ctx.enc(A), "C": ctx.enc(c), "GC": ctx.enc(g), "exponent": n}


def _ex5_gc_e11(ctx):
    R = ctx.R
    x = R.index([[1, 0], [0, 0]])
    g = int(gc_table(R)[0][x])
    return g == R.one, {"GC": ctx.enc(g)}


def _ex5_scalar_gcs(ctx):
    R = ctx.R
    S = fixture_set(R, _fixture_by_name(ctx, "scalars"))
    cover = gc_table(R)[0]
    I = from_elements(R, S)
    ideal = is_closed(I)
    element_level = all(cover[x] >= 0 and int(cover[x]) in S for x in S)
    outside = [x for x in range(R.size) if x not in S and cover[x] >= 0 and int(cover[x]) in S]
    return ideal and element_level, {
        "isIdeal": ideal, "gcClosed": element_level,
        "elementsOutsideWithCoverInside": len(outside),
        "example": ctx.enc(R.index([[1, 0], [0, 0]])) if outside else None}


def _ex5_nonrestricted(ctx):
    R = ctx.R
    I = fixture_set(R, _fixture_by_name(ctx, "twoM"))
    gcs = is_gcs(R, I)[0]
    res = is_restricted(R, I)
    return gcs and not res, {"size": len(I), "gcs": gcs, "restricted": res}


def _ex6_trace_zero(ctx):
    R = ctx.R
    S = fixture_set(R, _fixture_by_name(ctx, "traceZeroJ"))
    J = from_elements(R, S)
    ideal = is_closed(J)
    cover = gc_table(R)[0]
    element_level = all(cover[x] >= 0 and int(cover[x]) in S for x in S)
    gen = ideal_generated(R, sorted(S))
    return ideal and element_level, {
        "size": len(S), "isIdeal": ideal, "gcClosed": element_level,
        "generatedIdealSize": len(gen), "generatedIsGcs": is_gcs(R, gen)[0]}


# ---------------------------------------------------------------- catalog


G = ("gen_pq_baer_star",)

CATALOG = (
    Entry("P2.LATTICE", "projection lattice formula via C in p.q.-Baer* rings", THEOREM,
          "projections.lattice_formula_agreement", _p2_lattice, ("pq_baer_star",)),
    Entry("P2.COMPLETE-QB", "quasi-Baer* iff p.q.-Baer* with complete projection lattice", THEOREM,
          "projections.is_lattice", _p2_complete_qb),
    Entry("P2.ANN-INTERSECT", "r((xR)^n) meets (x*)^n R only in 0", THEOREM,
          "ideals.annihilator_chain", _p2_ann_intersect, G),
    Entry("P2.GCEXIST", "central e with x^n e = x^n and (xR)^n y = 0 iff ey = 0", THEOREM,
          "ideals.weakly_witnesses", _p2_gcexist, G),
    Entry("P2.GC-MONOTONE", "e <= f implies GC(e) <= GC(f)", THEOREM,
          "projections.gc_table", _p2_gc_monotone, (), _all_projections_covered),
    Entry("P2.GC-CENTRAL-COMMUTE", "GC(he) = h GC(e) for central h", THEOREM,
          "projections.gc_table", _p2_gc_central_commute, (), _all_projections_covered),
    Entry("P2.GC-STAR-COMM", "commutative case: GC(x) = GC(x*) and annihilation gives orthogonal covers",
          THEOREM, "projections.gc_table", _p2_gc_star_comm, G, _commutative),
    Entry("P2.CHAR-ANN", "generalized p.q.-Baer* iff unity and r((xR)^n) = r((eR)^n)", THEOREM,
          "ideals.classify", _p2_char_ann),
    Entry("P3.WEAKLY-QUASIPROPER", "weakly generalized p.q.-Baer* rings have quasi-proper involution",
          THEOREM, "unitification.quasi_proper_check", _p3_weakly_quasiproper,
          ("weakly_gen_pq_baer_star",)),
    Entry("P3.WEAKLY-UNITY", "generalized p.q.-Baer* iff weakly generalized with unity", THEOREM,
          "unitification.is_weakly_gen_pq", _p3_weakly_unity),
    Entry("P3.GC-LIFT", "GC(x) = e iff GC((x,0)) = (e,0) in the unitification", THEOREM,
          "unitification.build_unitification", _p3_gc_lift, ("weakly_gen_pq_baer_star",),
          _unitifiable),
    Entry("P3.UPPERBOUND", "any two projections have a central upper bound", THEOREM,
          "unitification.embedding_checks", _p3_upperbound, ("weakly_gen_pq_baer_star",)),
    Entry("P3.EMBED", "embedding into a generalized p.q.-Baer* unitification", THEOREM,
          "unitification.embedding_checks", _p3_embed, ("weakly_gen_pq_baer_star",), _unitifiable),
    Entry("P4.PARA-CENTRAL", "parallelogram law when e or f is central", THEOREM,
          "projections.parallelogram_pair", _p4_para_central, G, _lattice),
    Entry("P4.POSITION-GC", "position p' iff GC(ef) = f and GC(fe) = e", THEOREM,
          "projections.position_p_gc_check", _p4_position_gc, G, _lattice),
    Entry("P4.PARA-CHAR", "parallelogram law iff position p' implies equivalence", THEOREM,
          "projections.parallelogram_law", _p4_para_char, G, _lattice),
    Entry("P4.VERYORTH", "very orthogonal projections are orthogonal with orthogonal covers", THEOREM,
          "projections.very_orthogonal", _p4_veryorth, G),
    Entry("P4.PC", "xRy != 0 gives a common central piece; partial comparability", THEOREM,
          "projections.pc_check", _p4_pc, G, _lattice),
    Entry("P4.ORTHDECOMP", "orthogonal decomposition with central equivalent parts", THEOREM,
          "projections.orthogonal_decomposition", _p4_orthdecomp, G, _parallelogram),
    Entry("P5.GEN-GCS", "<e> is gcs for central e", THEOREM,
          "strict.is_gcs", _p5_gen_gcs, G),
    Entry("P5.POWER-IN", "GC(x) in a gcs ideal I gives a power of x in I", THEOREM,
          "strict.gcs_ideals", _p5_power_in, G),
    Entry("P5.PRIME-USUAL", "a prime gcs ideal in the usual sense is prime gcs", THEOREM,
          "strict.is_prime_gcs", _p5_prime_usual, G),
    Entry("P5.GC-INEQ", "GC of sums and products of powers is bounded by join and meet", THEOREM,
          "strict.gc_inequality_failures", _p5_gc_ineq, G),
    Entry("P5.BMAX", "prime gcs iff the Boolean trace is maximal", THEOREM,
          "spectrum.boolean_algebra", _p5_bmax, G),
    Entry("P5.GCSET-PRIME", "complement a GC-set reflecting covers gives prime gcs", THEOREM,
          "strict.is_gc_set", _p5_gcset_prime, G),
    Entry("P5.SUMPROD-GCS", "I^n + J^m and I^n J^m are gcs", THEOREM,
          "strict.gcs_arithmetic_check", _p5_sumprod_gcs, G),
    Entry("P5.SEPARATION", "separation of a gcs ideal from a disjoint GC-set", THEOREM,
          "strict.separate", _p5_separation, G),
    Entry("P6.BASIS", "basic opens P(x) form a basis", THEOREM,
          "spectrum.topology_report", _p6_basis, G),
    Entry("P6.ANN-GCS", "Ann(I) is a gcs ideal", THEOREM,
          "spectrum.ann_record", _p6_ann_gcs, G),
    Entry("P6.ANN-KERNEL", "Ann(I) = K(Sigma - H(I)) for gcs I", THEOREM,
          "spectrum.ann_record", _p6_ann_kernel, G),
    Entry("P6.KH-IDENT", "I = K(H(I)) for gcs I", THEOREM,
          "spectrum.kernel_hull_check", _p6_kh_ident, G),
    Entry("P6.GC-PRODUCT-IDEAL", "<GC(a)> meet <GC(b)> = <GC(a)GC(b)>", THEOREM,
          "ideals.ideal_intersection", _p6_gc_product_ideal, G),
    Entry("P6.GEN-AC", "generalized right annihilator condition", THEOREM,
          "ideals.gen_annihilator_condition", _p6_gen_ac, G),
    Entry("P6.HAUSDORFF", "spectrum is zero-dimensional Hausdorff", THEOREM,
          "spectrum.topology_report", _p6_hausdorff, G),
    Entry("P6.COMPACT-PHI", "spectrum is compact and phi is a continuous bijection", THEOREM,
          "spectrum.topology_report", _p6_compact_phi, G),
    Entry("P6.ORTH-LEMMA", "y in every Q of P(x) iff GC(x)GC(y) = 0", RADICAL,
          "spectrum.gc_orthogonality_scan", _p6_orth_lemma, G),
    Entry("P6.SECTION-POWER", "every section has a power of the form r-hat", THEOREM,
          "sheaf.section_power_scan", _p6_section_power, G),
    Entry("P6.GELFAND-ISO", "r -> r-hat is a *-isomorphism onto the sections", RADICAL,
          "sheaf.gelfand_iso_check", _p6_gelfand_iso, G),
    Entry("P6.GO-PRIME", "GO(P) is prime gcs for prime P", THEOREM,
          "spectrum.go_quantifier_form", _p6_go_prime, G),
    Entry("P6.GO-FORM", "every prime gcs ideal is GO(P) for a prime P", THEOREM,
          "spectrum.prime_ideals", _p6_go_form, G),
    Entry("EX2.CENTRAL-PROJ", "central projections of M2(F) x M2(F)", THEOREM,
          "projections.central_projection_indices", _ex2_central_proj, (), _doubled_m2),
    Entry("EX2.COVERS", "C((I,N)) = (I,I) and GC((I,N)) = (I,0)", THEOREM,
          "projections.central_cover_table", _ex2_covers, (), _doubled_m2),
    Entry("EX5.GC-E11", "GC(E11) = I in M2(Z2)", THEOREM,
          "projections.gc_table", _ex5_gc_e11, (), _is_m2_zn(2)),
    Entry("EX5.SCALAR-GCS", "scalar matrices {0, I} in M2(Z2) as a gcs ideal", FINDING,
          "strict.fixture_set", _ex5_scalar_gcs, (), _fixture("scalars")),
    Entry("EX5.NONRESTRICTED", "2 M2(Z4) is gcs and not restricted", THEOREM,
          "strict.is_restricted", _ex5_nonrestricted, (), _fixture("twoM")),
    Entry("EX6.TRACE-ZERO", "trace-zero set J in M2(Z2) x M2(Z3) as a gcs ideal", FINDING,
          "strict.is_gcs", _ex6_trace_zero, (), _fixture("traceZeroJ")),
)

BY_ID = {e.pid: e for e in CATALOG}
PROPOSITION_IDS = tuple(e.pid for e in CATALOG if e.pid.startswith("P"))


# ---------------------------------------------------------------- running


def _plain(v):
    """Make a value JSON-ready (numpy scalars, tuples, sets)."""
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (set, frozenset)):
        return sorted(_plain(x) for x in v)
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def _reason(ctx, entry):
    missing = [f for f in entry.requires if not getattr(ctx.flags, f)]
    if missing:
        from .ideals import FLAG_NAMES
        return {"reason": "requires", "flags": [FLAG_NAMES[f] for f in missing]}
    if entry.applies is not None:
        why = entry.applies(ctx)
        if isinstance(why, dict):
            return why
        if why:
            return {"reason": "hypothesis", "detail": why}
    return None


def expected_status(ctx, entry):
    if entry.expected == RADICAL:
        return THEOREM if ctx.radical_is_zero() else FINDING
    return entry.expected


def run_entry(ctx, entry):
    """Result record: pass, fail{witness}, skipped{reason} or finding{data}."""
    out = {"title": entry.title, "operation": entry.operation}
    try:
        why = _reason(ctx, entry)
    except LimitError as exc:
        why = {"reason": "limit", "detail": str(exc)}
    if why:
        out.update(status="skipped", expected=entry.expected if entry.expected != RADICAL else THEOREM,
                   reason=why)
        return _plain(out)
    try:
        ok, data = entry.check(ctx)
    except LimitError as exc:
        out.update(status="skipped", expected=entry.expected, reason={"reason": "limit",
                                                                      "detail": str(exc)})
        return _plain(out)
    except PreconditionError as exc:
        out.update(status="skipped", expected=entry.expected,
                   reason={"reason": "hypothesis", "detail": str(exc)})
        return _plain(out)
    except CheckFailure as exc:
        ok, data = False, {"message": str(exc), **exc.witness}
    expected = expected_status(ctx, entry)
    out["expected"] = expected
    if ok:
        out.update(status="pass", data=data)
    elif expected == FINDING:
        out.update(status="finding", data=data)
    else:
        out.update(status="fail", witness=data)
    return _plain(out)


def resolve_ids(props):
    """'all', a comma list, or an iterable of IDs; raises KeyError on unknown IDs."""
    if props in (None, "all"):
        return [e.pid for e in CATALOG]
    if isinstance(props, str):
        props = [p.strip() for p in props.split(",") if p.strip()]
    ids = []
    for p in props:
        if p == "all":
            ids.extend(e.pid for e in CATALOG)
        elif p not in BY_ID:
            raise KeyError(p)
        else:
            ids.append(p)
    return sorted(set(ids))


_WORKER_CTX = None


def _run_in_worker(pid):
    return pid, run_entry(_WORKER_CTX, BY_ID[pid])


def run_catalog(ctx, ids, jobs=1):
    """{ID: result} in sorted ID order; jobs > 1 fans out to forked workers."""
    global _WORKER_CTX
    ids = sorted(ids)
    if jobs <= 1 or len(ids) <= 1:
        return {pid: run_entry(ctx, BY_ID[pid]) for pid in ids}
    import multiprocessing
    from concurrent.futures import ProcessPoolExecutor
    # structure every entry consults is computed once before forking
    ctx.flags
    _WORKER_CTX = ctx
    try:
        with ProcessPoolExecutor(max_workers=jobs,
                                 mp_context=multiprocessing.get_context("fork")) as pool:
            results = dict(pool.map(_run_in_worker, ids))
    finally:
        _WORKER_CTX = None
    return {pid: results[pid] for pid in ids}


def summarize(results):
    counts = {"pass": 0, "fail": 0, "skipped": 0, "finding": 0}
    for r in results.values():
        counts[r["status"]] += 1
    return counts


def theorem_failures(results):
    return sorted(pid for pid, r in results.items() if r["status"] == "fail")
