"""Stalks R/Q over the spectrum, global sections and the Gelfand map."""

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import CheckFailure
from .ideals import DEFAULT_IDEAL_LIMIT, is_closed
from .spectrum import radical, spectrum, topology_report


@dataclass(frozen=True)
class Stalk:
    point: int
    ideal: object = field(repr=False)
    reps: tuple
    coset_of: np.ndarray = field(repr=False)
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    star: np.ndarray = field(repr=False)

    @property
    def size(self):
        return len(self.reps)


def stalk(R, Q, point=0):
    """R/Q with each coset named by its least representative."""
    if not is_closed(Q, "two-sided"):
        raise CheckFailure("stalk ideal is not two-sided", {"Q": Q.render()})
    el = np.asarray(Q.elements)
    if not Q.mask[R.star_table[el]].all():
        raise CheckFailure("involution does not descend to R/Q", {"Q": Q.render()})
    least = R.add_table[:, el].min(axis=1)
    reps, coset_of = np.unique(least, return_inverse=True)
    r = reps.astype(np.int64)
    tables = [coset_of[R.add_table[r[:, None], r[None, :]]],
              coset_of[R.mul_table[r[:, None], r[None, :]]],
              coset_of[R.neg_table[r]], coset_of[R.star_table[r]]]
    for t in tables:
        t.setflags(write=False)
    coset_of.setflags(write=False)
    return Stalk(point, Q, tuple(int(v) for v in r), coset_of, *tables)


def stalks(R, limit=DEFAULT_IDEAL_LIMIT):
    points = spectrum(R, "brute", limit)
    return R.memo(("stalks", limit),
                  lambda: tuple(stalk(R, p.ideal, i) for i, p in enumerate(points)))


def _require_discrete(R, limit):
    if not spectrum(R, "brute", limit):
        return
    _, rec = topology_report(R, limit)
    if not rec["discrete"]:
        raise CheckFailure("spectrum is not discrete; sections are not all continuous", {})


def gamma(R, limit=DEFAULT_IDEAL_LIMIT):
    """All sections; over a discrete finite base every choice of coset is continuous."""
    _require_discrete(R, limit)
    return list(product(*[range(s.size) for s in stalks(R, limit)]))


def gamma_size(R, limit=DEFAULT_IDEAL_LIMIT):
    _require_discrete(R, limit)
    n = 1
    for s in stalks(R, limit):
        n *= s.size
    return n


def gelfand_table(R, limit=DEFAULT_IDEAL_LIMIT):
    """Array (elements x points) of coset ids: row r is r-hat."""
    st = stalks(R, limit)
    if not st:
        return np.zeros((R.size, 0), dtype=np.int64)
    return np.stack([s.coset_of for s in st], axis=1)


def gelfand(R, r, limit=DEFAULT_IDEAL_LIMIT):
    return tuple(int(v) for v in gelfand_table(R, limit)[r])


def section_op(R, op, f, g=None, limit=DEFAULT_IDEAL_LIMIT):
    st = stalks(R, limit)
    if op == "add":
        return tuple(int(s.add[a, b]) for s, a, b in zip(st, f, g))
    if op == "mul":
        return tuple(int(s.mul[a, b]) for s, a, b in zip(st, f, g))
    if op == "star":
        return tuple(int(s.star[a]) for s, a in zip(st, f))
    raise ValueError(op)


def trajectory_bound(R, limit=DEFAULT_IDEAL_LIMIT):
    """Largest tail + period - 1 over the stalk power trajectories."""
    return R.memo(("stalk_bound", limit), lambda: _trajectory_bound(R, limit))


def _trajectory_bound(R, limit):
    bound = 1
    for s in stalks(R, limit):
        for a in range(s.size):
            seen, x, k = {}, a, 1
            while x not in seen:
                seen[x] = k
                x = int(s.mul[x, a])
                k += 1
            bound = max(bound, k - 1)
    return bound


def _image(R, limit):
    """{r-hat: least r}."""
    def compute():
        table = gelfand_table(R, limit)
        image = {}
        for r in range(R.size - 1, -1, -1):
            image[tuple(int(v) for v in table[r])] = r
        return image
    return R.memo(("gelfand_image", limit), compute)


def section_power_root(R, f, limit=DEFAULT_IDEAL_LIMIT):
    """Least m, then least r, with f^m = r-hat; m stays within the trajectory bound."""
    image = _image(R, limit)
    bound = trajectory_bound(R, limit)
    fm = tuple(f)
    for m in range(1, bound + 1):
        if fm in image:
            return m, image[fm]
        fm = section_op(R, "mul", fm, f, limit)
    raise CheckFailure("no power of the section lies in the image of the Gelfand map",
                       {"section": list(f), "bound": bound})


def section_power_scan(R, limit=DEFAULT_IDEAL_LIMIT):
    """(m, r) for every section, in canonical section order."""
    return [section_power_root(R, f, limit) for f in gamma(R, limit)]


def gelfand_iso_check(R, limit=DEFAULT_IDEAL_LIMIT):
    """Record of homomorphism, *-preservation, injectivity and surjectivity."""
    st = stalks(R, limit)
    table = gelfand_table(R, limit)
    hom, star = True, True
    for k, s in enumerate(st):
        col = table[:, k]
        if not (col[R.add_table] == s.add[col[:, None], col[None, :]]).all():
            hom = False
        if not (col[R.mul_table] == s.mul[col[:, None], col[None, :]]).all():
            hom = False
        if not (col[R.star_table] == s.star[col]).all():
            star = False
    keys = [tuple(row) for row in table.tolist()]
    zero_hat = keys[R.zero] if keys else ()
    kernel = [x for x in range(R.size) if keys[x] == zero_hat]
    images = set(keys)
    size = gamma_size(R, limit)
    rad = radical(R, spectrum(R, "brute", limit))
    rec = {
        "homomorphism": hom,
        "starPreserving": star,
        "injective": len(images) == R.size,
        "surjective": len(images) == size,
        "gammaSize": size,
        "imageSize": len(images),
        "kernel": [R.encode(x) for x in kernel],
        "radical": rad.render(),
    }
    rec["bijective"] = rec["injective"] and rec["surjective"]
    if sorted(kernel) != list(rad.elements):
        raise CheckFailure("kernel of the Gelfand map differs from the radical", rec)
    return rec
