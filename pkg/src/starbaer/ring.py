"""Finite rings with involution materialised as Cayley tables.

Every element of a ring of size N is represented by an index in
``range(N)``.  Index order is the canonical order of the encodings:
residues by value, matrices row-major over the base order, tuples
lexicographically by factor, table elements by index.  All arithmetic is
table lookup, so the higher modules can work on whole numpy arrays.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import AxiomError, LimitError, NoUnityError, SpecError

DEFAULT_ELEMENT_LIMIT = 10_000
# rings above this size are built from verified factors without a
# second exhaustive pass over the assembled tables
VERIFY_LIMIT = 4096

KINDS = ("zn", "matrix", "product", "swap-product", "table")
INVOLUTIONS = {
    "zn": "identity",
    "matrix": "transpose",
    "product": "componentwise",
    "swap-product": "swap",
    "table": "table",
}
_FIELDS = {
    "zn": {"kind", "n", "involution"},
    "matrix": {"kind", "size", "base", "involution"},
    "product": {"kind", "factors", "involution"},
    "swap-product": {"kind", "base", "involution"},
    "table": {"kind", "size", "add", "mul", "star", "one", "involution"},
}
_TOP_FIELDS = {"name", "fixtures"}
_FIXTURE_MODES = ("elements", "generators")


# ---------------------------------------------------------------- specs


@dataclass(frozen=True)
class Fixture:
    """A named element set shipped with a ring spec.

    ``mode`` is ``"elements"`` for a literal set and ``"generators"`` for
    the two-sided ideal generated by the listed elements.
    """

    name: str
    mode: str
    values: tuple


@dataclass(frozen=True)
class RingSpec:
    kind: str
    involution: str
    n: int | None = None
    size: int | None = None
    base: "RingSpec | None" = None
    factors: tuple = ()
    add: tuple | None = None
    mul: tuple | None = None
    star: tuple | None = None
    one: int | None = None
    name: str | None = None
    fixtures: tuple = ()

    def describe(self):
        if self.kind == "zn":
            return f"Z{self.n}"
        if self.kind == "matrix":
            return f"M{self.size}({self.base.describe()})"
        if self.kind == "product":
            return " x ".join(f.describe() for f in self.factors)
        if self.kind == "swap-product":
            b = self.base.describe()
            return f"{b} x {b}^op"
        return f"table[{self.size}]"


def _freeze(value):
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def _thaw(value):
    if isinstance(value, tuple):
        return [_thaw(v) for v in value]
    return value


def _nonneg_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecError(f"{what} must be an integer, got {value!r}")
    if value < 0:
        raise SpecError(f"{what} must be nonnegative, got {value}")
    return value


def _int_matrix(value, size, what):
    if not isinstance(value, list) or len(value) != size:
        raise SpecError(f"{what} must be a {size}x{size} matrix")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != size:
            raise SpecError(f"{what} row {i} must have {size} entries")
        for j, v in enumerate(row):
            _nonneg_int(v, f"{what}[{i}][{j}]")
            if v >= size:
                raise SpecError(
                    f"table not closed: {what}[{i}][{j}] = {v} is outside 0..{size - 1}")
        rows.append(tuple(row))
    return tuple(rows)


def spec_from_object(obj, top=True):
    """Validate a decoded JSON object and return a RingSpec."""
    if not isinstance(obj, dict):
        raise SpecError("ring spec must be a JSON object")
    kind = obj.get("kind")
    if kind is None:
        raise SpecError("ring spec is missing 'kind'")
    if kind not in KINDS:
        raise SpecError(f"unknown kind {kind!r}")
    allowed = _FIELDS[kind] | (_TOP_FIELDS if top else set())
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise SpecError(f"unknown field(s) for kind {kind!r}: {', '.join(unknown)}")
    involution = obj.get("involution", INVOLUTIONS[kind])
    if involution != INVOLUTIONS[kind]:
        raise SpecError(
            f"involution {involution!r} is not valid for kind {kind!r} "
            f"(expected {INVOLUTIONS[kind]!r})")

    def need(key):
        if key not in obj:
            raise SpecError(f"kind {kind!r} requires field {key!r}")
        return obj[key]

    args = {"kind": kind, "involution": involution}
    if kind == "zn":
        n = _nonneg_int(need("n"), "n")
        if n < 2:
            raise SpecError(f"modulus below 2: n = {n}")
        args["n"] = n
    elif kind == "matrix":
        k = _nonneg_int(need("size"), "size")
        if k < 1:
            raise SpecError("matrix size must be at least 1")
        args["size"] = k
        args["base"] = spec_from_object(need("base"), top=False)
    elif kind == "product":
        factors = need("factors")
        if not isinstance(factors, list) or not factors:
            raise SpecError("product needs a nonempty 'factors' list")
        args["factors"] = tuple(spec_from_object(f, top=False) for f in factors)
    elif kind == "swap-product":
        args["base"] = spec_from_object(need("base"), top=False)
    else:
        size = _nonneg_int(need("size"), "size")
        if size < 1:
            raise SpecError("table size must be at least 1")
        args["size"] = size
        args["add"] = _int_matrix(need("add"), size, "add")
        args["mul"] = _int_matrix(need("mul"), size, "mul")
        star = need("star")
        if not isinstance(star, list) or len(star) != size:
            raise SpecError(f"star must be a vector of length {size}")
        for i, v in enumerate(star):
            _nonneg_int(v, f"star[{i}]")
            if v >= size:
                raise SpecError(f"table not closed: star[{i}] = {v} is outside 0..{size - 1}")
        args["star"] = tuple(star)
        if "one" in obj and obj["one"] is not None:
            one = _nonneg_int(obj["one"], "one")
            if one >= size:
                raise SpecError(f"one = {one} is outside 0..{size - 1}")
            args["one"] = one

    if top:
        if "name" in obj:
            if not isinstance(obj["name"], str):
                raise SpecError("name must be a string")
            args["name"] = obj["name"]
        if "fixtures" in obj:
            args["fixtures"] = _parse_fixtures(obj["fixtures"])
    return RingSpec(**args)


def _parse_fixtures(obj):
    if not isinstance(obj, dict):
        raise SpecError("fixtures must be an object mapping names to element sets")
    out = []
    for name in sorted(obj):
        body = obj[name]
        if not isinstance(body, dict) or len(body) != 1:
            raise SpecError(f"fixture {name!r} must have exactly one of {_FIXTURE_MODES}")
        (mode, values), = body.items()
        if mode not in _FIXTURE_MODES:
            raise SpecError(f"fixture {name!r}: unknown mode {mode!r}")
        if not isinstance(values, list):
            raise SpecError(f"fixture {name!r}: {mode} must be a list")
        out.append(Fixture(name, mode, tuple(_freeze(v) for v in values)))
    return tuple(out)


def parse_ring_spec(text):
    """Parse a ring-spec JSON document."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON: {exc}") from None
    return spec_from_object(obj)


def spec_to_object(spec, top=True):
    obj = {"kind": spec.kind, "involution": spec.involution}
    if spec.kind == "zn":
        obj["n"] = spec.n
    elif spec.kind == "matrix":
        obj["size"] = spec.size
        obj["base"] = spec_to_object(spec.base, top=False)
    elif spec.kind == "product":
        obj["factors"] = [spec_to_object(f, top=False) for f in spec.factors]
    elif spec.kind == "swap-product":
        obj["base"] = spec_to_object(spec.base, top=False)
    else:
        obj["size"] = spec.size
        obj["add"] = _thaw(spec.add)
        obj["mul"] = _thaw(spec.mul)
        obj["star"] = list(spec.star)
        if spec.one is not None:
            obj["one"] = spec.one
    if top:
        if spec.name is not None:
            obj["name"] = spec.name
        if spec.fixtures:
            obj["fixtures"] = {fx.name: {fx.mode: [_thaw(v) for v in fx.values]}
                               for fx in spec.fixtures}
    return obj


def dump_ring_spec(spec):
    return json.dumps(spec_to_object(spec), sort_keys=True, separators=(",", ":"))


def load_ring_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    return parse_ring_spec(text)


def ring_size(spec):
    if spec.kind == "zn":
        return spec.n
    if spec.kind == "matrix":
        return ring_size(spec.base) ** (spec.size * spec.size)
    if spec.kind == "product":
        out = 1
        for f in spec.factors:
            out *= ring_size(f)
        return out
    if spec.kind == "swap-product":
        return ring_size(spec.base) ** 2
    return spec.size


# ---------------------------------------------------------------- codecs


class _Codec:
    """Translate between indices, structured values and canonical strings."""

    size = 0

    def value(self, i):
        raise NotImplementedError

    def index(self, value):
        raise NotImplementedError

    def render(self, i):
        raise NotImplementedError


class _IntCodec(_Codec):
    def __init__(self, size):
        self.size = size

    def value(self, i):
        return int(i)

    def index(self, value):
        if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < self.size:
            raise SpecError(f"{value!r} is not an element index below {self.size}")
        return value

    def render(self, i):
        return str(int(i))


class _ProductCodec(_Codec):
    def __init__(self, parts, opener="(", closer=")"):
        self.parts = parts
        self.size = 1
        for p in parts:
            self.size *= p.size
        self.opener, self.closer = opener, closer

    def digits(self, i):
        i = int(i)
        out = []
        for p in reversed(self.parts):
            i, d = divmod(i, p.size)
            out.append(d)
        return out[::-1]

    def value(self, i):
        return tuple(p.value(d) for p, d in zip(self.parts, self.digits(i)))

    def index(self, value):
        if not isinstance(value, (list, tuple)) or len(value) != len(self.parts):
            raise SpecError(f"{value!r} does not have {len(self.parts)} components")
        i = 0
        for p, v in zip(self.parts, value):
            i = i * p.size + p.index(v)
        return i

    def render(self, i):
        inner = ",".join(p.render(d) for p, d in zip(self.parts, self.digits(i)))
        return self.opener + inner + self.closer


class _MatrixCodec(_Codec):
    def __init__(self, base, k):
        self.k = k
        self.flat = _ProductCodec([base] * (k * k))
        self.base = base
        self.size = self.flat.size

    def value(self, i):
        v = self.flat.value(i)
        return tuple(tuple(v[r * self.k:(r + 1) * self.k]) for r in range(self.k))

    def index(self, value):
        if not isinstance(value, (list, tuple)) or len(value) != self.k:
            raise SpecError(f"{value!r} is not a {self.k}x{self.k} matrix")
        flat = []
        for row in value:
            if not isinstance(row, (list, tuple)) or len(row) != self.k:
                raise SpecError(f"{value!r} is not a {self.k}x{self.k} matrix")
            flat.extend(row)
        return self.flat.index(flat)

    def render(self, i):
        d = self.flat.digits(i)
        rows = []
        for r in range(self.k):
            rows.append("[" + ",".join(self.base.render(x) for x in d[r * self.k:(r + 1) * self.k]) + "]")
        return "[" + ",".join(rows) + "]"


class _LabelCodec(_Codec):
    """Codec for rings assembled from other rings (for example unitifications)."""

    def __init__(self, labels, values):
        self.labels = list(labels)
        self.values = list(values)
        self.size = len(labels)
        self._by_label = {s: i for i, s in enumerate(self.labels)}
        self._by_value = {v: i for i, v in enumerate(self.values)}

    def value(self, i):
        return self.values[int(i)]

    def index(self, value):
        if isinstance(value, str) and value in self._by_label:
            return self._by_label[value]
        key = _freeze(value)
        if key in self._by_value:
            return self._by_value[key]
        raise SpecError(f"{value!r} is not an element of this ring")

    def render(self, i):
        return self.labels[int(i)]


def _codec_for(spec):
    if spec.kind in ("zn", "table"):
        return _IntCodec(ring_size(spec))
    if spec.kind == "matrix":
        return _MatrixCodec(_codec_for(spec.base), spec.size)
    if spec.kind == "product":
        return _ProductCodec([_codec_for(f) for f in spec.factors])
    return _ProductCodec([_codec_for(spec.base)] * 2)


# ---------------------------------------------------------------- rings


def _index_dtype(n):
    return np.int16 if n <= np.iinfo(np.int16).max else np.int32


def _blocked(n_rows, n_cols, fill, dtype):
    """Build an (n_rows, n_cols) table block by block of rows."""
    out = np.empty((n_rows, n_cols), dtype=dtype)
    step = max(1, 2_000_000 // max(n_cols, 1))
    for lo in range(0, n_rows, step):
        rows = np.arange(lo, min(n_rows, lo + step))
        out[lo:lo + len(rows)] = fill(rows)
    return out


def _readonly(*arrays):
    for a in arrays:
        a.setflags(write=False)


class StarRing:
    """A finite ring with involution.

    ``add_table``, ``mul_table`` are (N, N) index arrays, ``neg_table`` and
    ``star_table`` are length-N vectors.  ``unity`` is the index of 1 or
    None for a ring without identity.
    """

    def __init__(self, spec, add, mul, neg, star, zero, unity, codec):
        self.spec = spec
        self.size = int(add.shape[0])
        self.add_table = add
        self.mul_table = mul
        self.neg_table = neg
        self.star_table = star
        self.zero = int(zero)
        self.unity = None if unity is None else int(unity)
        self.codec = codec
        self._memo = {}
        _readonly(add, mul, neg, star)

    def __repr__(self):
        return f"StarRing({self.spec.describe()}, size={self.size})"

    # element operations

    @property
    def one(self):
        if self.unity is None:
            raise NoUnityError(f"{self.spec.describe()} has no unity")
        return self.unity

    @property
    def has_unity(self):
        return self.unity is not None

    def add(self, a, b):
        return int(self.add_table[a, b])

    def neg(self, a):
        return int(self.neg_table[a])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def star(self, a):
        return int(self.star_table[a])

    def power(self, x, n):
        if n < 1:
            raise ValueError("exponent must be at least 1")
        p = x
        for _ in range(n - 1):
            p = int(self.mul_table[p, x])
        return p

    def elements(self):
        return range(self.size)

    # encodings

    def encode(self, i):
        return self.codec.render(i)

    def value(self, i):
        return self.codec.value(i)

    def index(self, value):
        """Index of an element given as a structured value or canonical string."""
        if isinstance(value, str):
            if isinstance(self.codec, _LabelCodec):
                return self.codec.index(value)
            try:
                value = json.loads(value.replace("(", "[").replace(")", "]"))
            except json.JSONDecodeError:
                raise SpecError(f"cannot parse element {value!r}") from None
        return self.codec.index(_freeze(value))

    # cached structure

    def memo(self, key, compute):
        """Return a cached derived value; computing it has no side effects."""
        try:
            return self._memo[key]
        except KeyError:
            value = self._memo[key] = compute()
            return value

    @property
    def is_commutative(self):
        return self.memo("commutative", lambda: bool((self.mul_table == self.mul_table.T).all()))

    @property
    def additive_basis(self):
        """Greedy additive generators in canonical order."""
        return self.memo("basis", lambda: _greedy_generators(self))

    @property
    def characteristic(self):
        """Additive exponent: least m with m*x = 0 for all x."""
        def compute():
            m, acc = 1, np.arange(self.size)
            base = np.arange(self.size)
            while not (acc == self.zero).all():
                acc = self.add_table[acc, base]
                m += 1
            return m
        return self.memo("characteristic", compute)


def _greedy_generators(R):
    """Elements g_1, g_2, ... such that every element is reached from 0
    by repeatedly adding generators on the right."""
    add = R.add_table
    reach = np.zeros(R.size, dtype=bool)
    reach[R.zero] = True
    frontier = [R.zero]
    members = [R.zero]
    gens = []
    for x in range(R.size):
        if reach[x]:
            continue
        gens.append(x)
        frontier = list(members)
        while frontier:
            cur = np.asarray(frontier)
            nxt = []
            for g in gens:
                cand = add[cur, g]
                new = cand[~reach[cand]]
                if len(new):
                    new = np.unique(new)
                    reach[new] = True
                    nxt.extend(new.tolist())
            members.extend(nxt)
            frontier = nxt
    return tuple(gens)


def _zn_ring(spec):
    n = spec.n
    dt = _index_dtype(n)
    add = _blocked(n, n, lambda r: (r[:, None] + np.arange(n)[None, :]) % n, dt)
    mul = _blocked(n, n, lambda r: (r[:, None] * np.arange(n)[None, :]) % n, dt)
    neg = ((-np.arange(n)) % n).astype(dt)
    star = np.arange(n, dtype=dt)
    return StarRing(spec, add, mul, neg, star, 0, 1 % n, _codec_for(spec))


def _table_ring(spec):
    n = spec.size
    dt = _index_dtype(n)
    add = np.array(spec.add, dtype=dt).reshape(n, n)
    mul = np.array(spec.mul, dtype=dt).reshape(n, n)
    star = np.array(spec.star, dtype=dt)
    zeros = [z for z in range(n) if (add[z, :] == np.arange(n)).all() and (add[:, z] == np.arange(n)).all()]
    if not zeros:
        raise AxiomError("addition table has no identity element")
    zero = zeros[0]
    neg = np.empty(n, dtype=dt)
    for a in range(n):
        inv = np.nonzero(add[a, :] == zero)[0]
        if not len(inv):
            raise AxiomError(f"element {a} has no additive inverse", {"element": a})
        neg[a] = inv[0]
    return StarRing(spec, add, mul, neg, star, zero, spec.one, _codec_for(spec))


def _matrix_ring(spec, base):
    k, b = spec.size, base.size
    n = b ** (k * k)
    dt = _index_dtype(n)
    kk = k * k
    # digits[i, p] = base index of entry p (row-major) of element i
    digits = np.zeros((n, kk), dtype=np.int64)
    rest = np.arange(n)
    for p in range(kk - 1, -1, -1):
        digits[:, p] = rest % b
        rest = rest // b
    weights = b ** np.arange(kk - 1, -1, -1, dtype=np.int64)
    badd, bmul = base.add_table.astype(np.int64), base.mul_table.astype(np.int64)

    def add_rows(rows):
        acc = np.zeros((len(rows), n), dtype=np.int64)
        for p in range(kk):
            acc += badd[digits[rows, p][:, None], digits[None, :, p]] * weights[p]
        return acc

    def mul_rows(rows):
        acc = np.zeros((len(rows), n), dtype=np.int64)
        for r in range(k):
            for c in range(k):
                entry = None
                for t in range(k):
                    term = bmul[digits[rows, r * k + t][:, None], digits[None, :, t * k + c]]
                    entry = term if entry is None else badd[entry, term]
                acc += entry * weights[r * k + c]
        return acc

    add = _blocked(n, n, add_rows, dt)
    mul = _blocked(n, n, mul_rows, dt)
    bneg, bstar = base.neg_table.astype(np.int64), base.star_table.astype(np.int64)
    neg = (bneg[digits] @ weights).astype(dt)
    transposed = digits.reshape(n, k, k).transpose(0, 2, 1).reshape(n, kk)
    star = (bstar[transposed] @ weights).astype(dt)
    zero_digits = np.full(kk, base.zero, dtype=np.int64)
    zero = int(zero_digits @ weights)
    unity = None
    if base.unity is not None:
        one_digits = zero_digits.copy()
        one_digits[[r * k + r for r in range(k)]] = base.unity
        unity = int(one_digits @ weights)
    return StarRing(spec, add, mul, neg, star, zero, unity, _codec_for(spec))


def _pair_tables(t1, t2, n2, dt, swap_second=False):
    """Table of the componentwise operation on R1 x R2 with index i1*n2+i2."""
    n = t1.shape[0] * n2
    j = np.arange(n)
    j1, j2 = j // n2, j % n2
    t1, t2 = t1.astype(np.int64), t2.astype(np.int64)

    def fill(rows):
        r1, r2 = rows // n2, rows % n2
        if swap_second:
            second = t2[j2[None, :], r2[:, None]]
        else:
            second = t2[r2[:, None], j2[None, :]]
        return t1[r1[:, None], j1[None, :]] * n2 + second

    return _blocked(n, n, fill, dt)


def _product_ring(spec, factors):
    cur = factors[0]
    add, mul = cur.add_table, cur.mul_table
    neg, star = cur.neg_table.astype(np.int64), cur.star_table.astype(np.int64)
    zero, unity, n = cur.zero, cur.unity, cur.size
    for f in factors[1:]:
        m = f.size
        dt = _index_dtype(n * m)
        add = _pair_tables(add, f.add_table, m, dt)
        mul = _pair_tables(mul, f.mul_table, m, dt)
        idx = np.arange(n * m)
        neg = neg[idx // m] * m + f.neg_table.astype(np.int64)[idx % m]
        star = star[idx // m] * m + f.star_table.astype(np.int64)[idx % m]
        zero = zero * m + f.zero
        unity = None if unity is None or f.unity is None else unity * m + f.unity
        n *= m
    dt = _index_dtype(n)
    return StarRing(spec, np.asarray(add, dtype=dt), np.asarray(mul, dtype=dt),
                    neg.astype(dt), star.astype(dt), zero, unity, _codec_for(spec))


def _swap_ring(spec, base):
    # R x R^op with (a, b)* = (b, a); the opposite factor makes the swap
    # anti-multiplicative for noncommutative bases too
    b = base.size
    n = b * b
    dt = _index_dtype(n)
    add = _pair_tables(base.add_table, base.add_table, b, dt)
    mul = _pair_tables(base.mul_table, base.mul_table, b, dt, swap_second=True)
    idx = np.arange(n)
    bneg = base.neg_table.astype(np.int64)
    neg = (bneg[idx // b] * b + bneg[idx % b]).astype(dt)
    star = ((idx % b) * b + idx // b).astype(dt)
    zero = base.zero * b + base.zero
    unity = None if base.unity is None else base.unity * b + base.unity
    return StarRing(spec, add, mul, neg, star, zero, unity, _codec_for(spec))


def build_ring(spec, limit=DEFAULT_ELEMENT_LIMIT, verify=None):
    """Materialise ``spec`` as a StarRing.

    With ``verify=None`` the ring laws are checked exhaustively whenever
    the ring has at most VERIFY_LIMIT elements; larger rings are only
    assembled from factors that were themselves verified.
    """
    n = ring_size(spec)
    if n > limit:
        raise LimitError(f"{spec.describe()} has {n} elements, above the limit {limit}", reached=n)
    if spec.kind == "zn":
        R = _zn_ring(spec)
    elif spec.kind == "table":
        R = _table_ring(spec)
    elif spec.kind == "matrix":
        R = _matrix_ring(spec, build_ring(spec.base, limit, verify))
    elif spec.kind == "product":
        R = _product_ring(spec, [build_ring(f, limit, verify) for f in spec.factors])
    else:
        R = _swap_ring(spec, build_ring(spec.base, limit, verify))
    if verify or (verify is None and (n <= VERIFY_LIMIT or spec.kind == "table")):
        verify_axioms(R)
    return R


def make_ring(tables_spec, add, mul, star, zero, unity, labels, values, limit=DEFAULT_ELEMENT_LIMIT):
    """Assemble a ring from explicit tables with custom element labels."""
    n = len(labels)
    if n > limit:
        raise LimitError(f"ring would have {n} elements, above the limit {limit}", reached=n)
    dt = _index_dtype(n)
    add = np.asarray(add, dtype=dt)
    mul = np.asarray(mul, dtype=dt)
    neg = np.empty(n, dtype=dt)
    for a in range(n):
        inv = np.nonzero(add[a, :] == zero)[0]
        if not len(inv):
            raise AxiomError(f"element {a} has no additive inverse", {"element": a})
        neg[a] = inv[0]
    R = StarRing(tables_spec, add, mul, neg, np.asarray(star, dtype=dt), zero, unity,
                 _LabelCodec(labels, values))
    verify_axioms(R)
    return R


def verify_axioms(R):
    """Exhaustively check the ring and involution laws.

    Additive associativity, distributivity and the star laws are checked
    for every element against every additive generator, and
    multiplicative associativity and anti-multiplicativity on generator
    triples.  Since every element is a sum of generators and the checked
    maps are additive in each argument, this covers all elements.
    """
    n = R.size
    add, mul, neg, star = R.add_table, R.mul_table, R.neg_table, R.star_table
    idx = np.arange(n)

    def fail(message, **witness):
        raise AxiomError(message, {k: R.encode(v) for k, v in witness.items()})

    bad = np.argwhere(add != add.T)
    if len(bad):
        a, b = bad[0]
        fail("addition is not commutative", a=a, b=b)
    if not (add[R.zero] == idx).all():
        fail("zero is not an additive identity", zero=R.zero)
    bad = np.nonzero(add[idx, neg] != R.zero)[0]
    if len(bad):
        fail("negation is not an additive inverse", a=bad[0])
    gens = _greedy_generators(R)
    for g in gens:
        lhs = add[add, g]
        rhs = add[idx[:, None], add[:, g][None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b = bad[0]
            fail("addition is not associative", a=a, b=b, c=g)
        lhs = mul[idx[:, None], add[:, g][None, :]]
        rhs = add[mul, mul[:, g][:, None]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b = bad[0]
            fail("left distributivity fails", a=a, b=b, c=g)
        lhs = mul[add[:, g][:, None], idx[None, :]]
        rhs = add[mul, mul[g, :][None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, a = bad[0]
            fail("right distributivity fails", a=a, b=b, c=g)
        bad = np.nonzero(star[add[:, g]] != add[star, star[g]])[0]
        if len(bad):
            fail("star is not additive", a=bad[0], b=g)
    bad = np.nonzero(star[star] != idx)[0]
    if len(bad):
        fail("star is not an involution", a=bad[0])
    G = np.asarray(gens if gens else [R.zero])
    xy = mul[G[:, None], G[None, :]]
    lhs = mul[xy[:, :, None], G[None, None, :]]
    rhs = mul[G[:, None, None], xy[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        i, j, k = bad[0]
        fail("multiplication is not associative", a=G[i], b=G[j], c=G[k])
    lhs = star[xy]
    rhs = mul[star[G][None, :], star[G][:, None]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        i, j = bad[0]
        fail("star is not anti-multiplicative", a=G[i], b=G[j])
    if R.unity is not None:
        if not ((mul[R.unity] == idx).all() and (mul[:, R.unity] == idx).all()):
            fail("declared one is not a two-sided identity", one=R.unity)


# ---------------------------------------------------------------- analysis


@dataclass(frozen=True)
class PowerTrajectory:
    """x, x^2, ... enters a cycle: x^(tail + period) = x^tail."""

    element: int
    tail: int
    period: int
    powers: tuple = field(repr=False)

    def power(self, n):
        """x^n for any n >= 1, using the cycle."""
        if n < self.tail + self.period:
            return self.powers[n - 1]
        return self.powers[self.tail - 1 + (n - self.tail) % self.period]


def power_trajectory(R, x):
    """Least (t, p) with x^(t+p) = x^t, with the powers x^1..x^(t+p-1)."""
    def compute():
        mul = R.mul_table
        seen = {}
        powers = []
        p, k = int(x), 1
        while p not in seen:
            seen[p] = k
            powers.append(p)
            p = int(mul[p, x])
            k += 1
        t = seen[p]
        return PowerTrajectory(int(x), t, k - t, tuple(powers))
    return R.memo(("trajectory", int(x)), compute)


def trajectory_arrays(R):
    """(tail, period) vectors over all elements."""
    def compute():
        tails = np.empty(R.size, dtype=np.int64)
        periods = np.empty(R.size, dtype=np.int64)
        for x in range(R.size):
            tr = power_trajectory(R, x)
            tails[x], periods[x] = tr.tail, tr.period
        return tails, periods
    return R.memo("trajectories", compute)


def is_nilpotent(R, x):
    tr = power_trajectory(R, x)
    return tr.period == 1 and tr.powers[tr.tail - 1] == R.zero


def enumerate_elements(R):
    """All elements as canonical strings, in canonical order."""
    return [R.encode(i) for i in range(R.size)]


def center(R):
    """Indices z with zx = xz for every x."""
    def compute():
        mul = R.mul_table
        mask = (mul == mul.T).all(axis=1)
        return tuple(int(i) for i in np.nonzero(mask)[0])
    return R.memo("center", compute)


def center_mask(R):
    def compute():
        m = np.zeros(R.size, dtype=bool)
        m[list(center(R))] = True
        m.setflags(write=False)
        return m
    return R.memo("center_mask", compute)
