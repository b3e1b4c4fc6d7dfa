"""Exact linear algebra over the rationals and prime fields.

Everything downstream works with finite dimensional spaces carrying a fixed
ordered basis, sparse matrices with exact entries, and quotient presentations
(ambient space, relation subspace, projection, section).  No floats anywhere.
"""

from fractions import Fraction
import itertools

_space_counter = itertools.count()


class NoSolution(Exception):
    pass


class NotInvertible(Exception):
    pass


class DescentFailure(Exception):
    """A map defined on lifts does not kill the relation subspace.

    Carries a witness: the index of the offending relation column and the
    nonzero image vector in the target quotient.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FieldSpec:
    """The rationals, or a prime field F_p.

    Scalars are Fraction instances over Q and plain ints in range(p) over F_p.
    """

    def __init__(self, p=0):
        if p == 0:
            self.char = 0
        else:
            assert p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1)), p
            self.char = p

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.char == other.char

    def __hash__(self):
        return hash(("FieldSpec", self.char))

    def __repr__(self):
        return "Q" if self.char == 0 else "F%d" % self.char

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def of_int(self, n, d=1):
        if self.char == 0:
            return Fraction(n, d)
        p = self.char
        dd = d % p
        if dd == 0:
            raise ZeroDivisionError("denominator divisible by %d" % p)
        return (n * pow(dd, p - 2, p)) % p

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a):
        if not a:
            raise ZeroDivisionError
        if self.char == 0:
            return 1 / a
        return pow(a, self.char - 2, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def parse(self, text):
        """Parse "3", "-1/2" etc. into a scalar."""
        s = str(text)
        if "/" in s:
            n, d = s.split("/")
            return self.of_int(int(n), int(d))
        return self.of_int(int(s))


QQ = FieldSpec()


class Space:
    """A finite dimensional vector space with a fixed ordered basis."""

    __slots__ = ("dim", "label", "uid")

    def __init__(self, dim, label=""):
        assert dim >= 0
        self.dim = dim
        self.label = label
        self.uid = next(_space_counter)

    def __repr__(self):
        return "Space(%d, %r)" % (self.dim, self.label)

    def basis_vector(self, i, field):
        v = [field.zero] * self.dim
        v[i] = field.one
        return tuple(v)


def tensor_space(a, b, label=""):
    """Tensor product space; index (i, j) maps to i * b.dim + j."""
    return Space(a.dim * b.dim, label or "(%s)x(%s)" % (a.label, b.label))


class LinMap:
    """A sparse linear map, stored as {(row, col): nonzero scalar}."""

    __slots__ = ("dom", "cod", "field", "entries")

    def __init__(self, dom, cod, field, entries=None):
        self.dom = dom
        self.cod = cod
        self.field = field
        zero = field.zero
        self.entries = {k: v for k, v in (entries or {}).items() if v != zero}

    @staticmethod
    def identity(space, field):
        one = field.one
        return LinMap(space, space, field, {(i, i): one for i in range(space.dim)})

    @staticmethod
    def zero(dom, cod, field):
        return LinMap(dom, cod, field, {})

    @staticmethod
    def from_rows(dom, cod, field, rows):
        entries = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = v
        return LinMap(dom, cod, field, entries)

    @staticmethod
    def from_columns(dom, cod, field, columns):
        entries = {}
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                if v:
                    entries[(i, j)] = v
        return LinMap(dom, cod, field, entries)

    def rows(self):
        out = [[self.field.zero] * self.dom.dim for _ in range(self.cod.dim)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j):
        col = [self.field.zero] * self.cod.dim
        for (i, jj), v in self.entries.items():
            if jj == j:
                col[i] = v
        return tuple(col)

    def apply(self, vec):
        assert len(vec) == self.dom.dim
        f = self.field
        out = [f.zero] * self.cod.dim
        for (i, j), v in self.entries.items():
            if vec[j]:
                out[i] = f.add(out[i], f.mul(v, vec[j]))
        return tuple(out)

    def __matmul__(self, other):
        assert isinstance(other, LinMap)
        assert self.dom.dim == other.cod.dim, (self.dom.dim, other.cod.dim)
        f = self.field
        by_col = {}
        for (i, k), v in self.entries.items():
            by_col.setdefault(k, []).append((i, v))
        out = {}
        for (k, j), w in other.entries.items():
            for i, v in by_col.get(k, ()):
                key = (i, j)
                cur = out.get(key)
                out[key] = f.mul(v, w) if cur is None else f.add(cur, f.mul(v, w))
        return LinMap(other.dom, self.cod, f, out)

    def __add__(self, other):
        assert self.dom.dim == other.dom.dim and self.cod.dim == other.cod.dim
        f = self.field
        out = dict(self.entries)
        for k, v in other.entries.items():
            cur = out.get(k)
            out[k] = v if cur is None else f.add(cur, v)
        return LinMap(self.dom, self.cod, f, out)

    def __sub__(self, other):
        return self + other.scaled(self.field.neg(self.field.one))

    def scaled(self, c):
        f = self.field
        return LinMap(self.dom, self.cod, f,
                      {k: f.mul(c, v) for k, v in self.entries.items()})

    def tensor(self, other):
        """Kronecker product, consistent with tensor_space index order."""
        f = self.field
        dom = tensor_space(self.dom, other.dom)
        cod = tensor_space(self.cod, other.cod)
        bc, bd = other.cod.dim, other.dom.dim
        out = {}
        for (i1, j1), v1 in self.entries.items():
            for (i2, j2), v2 in other.entries.items():
                out[(i1 * bc + i2, j1 * bd + j2)] = f.mul(v1, v2)
        return LinMap(dom, cod, f, out)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.dom.dim == other.dom.dim and self.cod.dim == other.cod.dim
                and self.entries == other.entries)

    def __hash__(self):
        raise TypeError("LinMap is not hashable")

    def nonzero_column_index(self):
        """Index of some column with a nonzero entry, or None."""
        for (_, j) in self.entries:
            return j
        return None

    def __repr__(self):
        return "LinMap(%d->%d, nnz=%d)" % (self.dom.dim, self.cod.dim,
                                           len(self.entries))


def tensor_many(maps):
    assert maps
    out = maps[0]
    for m in maps[1:]:
        out = out.tensor(m)
    return out


def permute_factors(dims, perm, field):
    """Permutation of tensor factors.

    `dims` are the factor dimensions of the source, in order.  The map sends
    the source basis tensor (i_0, ..., i_{m-1}) to the target basis tensor
    (i_{perm[0]}, ..., i_{perm[m-1]}); target factor k has dimension
    dims[perm[k]].
    """
    m = len(dims)
    assert sorted(perm) == list(range(m))
    src_dim = 1
    for d in dims:
        src_dim *= d
    dom = Space(src_dim)
    cod = Space(src_dim)
    tgt_dims = [dims[perm[k]] for k in range(m)]
    entries = {}
    one = field.one
    for flat in range(src_dim):
        idx = []
        rem = flat
        for d in reversed(dims):
            idx.append(rem % d)
            rem //= d
        idx.reverse()
        out = 0
        for k in range(m):
            out = out * tgt_dims[k] + idx[perm[k]]
        entries[(out, flat)] = one
    return LinMap(dom, cod, field, entries)


def rref(m):
    """Reduced row echelon form.

    Returns (reduced LinMap, pivot column tuple, rank).
    """
    f = m.field
    rows = m.rows()
    nr, nc = m.cod.dim, m.dom.dim
    pivots = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    red = LinMap.from_rows(m.dom, m.cod, f, rows)
    return red, tuple(pivots), len(pivots)


def rank(m):
    return rref(m)[2]


def kernel(m):
    """Basis of the kernel, as columns of a LinMap into m.dom."""
    f = m.field
    red, pivots, rk = rref(m)
    rows = red.rows()
    free = [c for c in range(m.dom.dim) if c not in set(pivots)]
    cols = []
    for fc in free:
        v = [f.zero] * m.dom.dim
        v[fc] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(rows[r][fc])
        cols.append(v)
    dom = Space(len(cols), "ker")
    return LinMap.from_columns(dom, m.dom, f, cols)


def solve(m, target):
    """One solution of m v = target, or raise NoSolution."""
    f = m.field
    assert len(target) == m.cod.dim
    nr, nc = m.cod.dim, m.dom.dim
    rows = [row + [t] for row, t in zip(m.rows(), target)]
    r = 0
    pivots = []
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    for i in range(r, nr):
        if rows[i][nc]:
            raise NoSolution("inconsistent system")
    sol = [f.zero] * nc
    for i, pc in enumerate(pivots):
        sol[pc] = rows[i][nc]
    return tuple(sol)


def invert(m):
    """Two sided inverse, or raise NotInvertible."""
    if m.dom.dim != m.cod.dim:
        raise NotInvertible("not square")
    f = m.field
    cols = []
    try:
        for j in range(m.cod.dim):
            cols.append(solve(m, m.cod.basis_vector(j, f)))
    except NoSolution:
        raise NotInvertible("not surjective")
    inv = LinMap.from_columns(m.cod, m.dom, f, cols)
    if not (m @ inv == LinMap.identity(m.cod, f)) or \
       not (inv @ m == LinMap.identity(m.dom, f)):
        raise NotInvertible("one sided only")
    return inv


class QuotientPresentation:
    """ambient -> quotient with a chosen linear section.

    projection . section = id on the quotient, and the kernel of the
    projection is exactly the span of the relation columns.
    """

    __slots__ = ("ambient", "relations", "quotient", "projection", "section")

    def __init__(self, ambient, relations, quotient, projection, section):
        self.ambient = ambient
        self.relations = relations
        self.quotient = quotient
        self.projection = projection
        self.section = section

    @staticmethod
    def trivial(space, field):
        ident = LinMap.identity(space, field)
        rel = LinMap.zero(Space(0, "rel"), space, field)
        return QuotientPresentation(space, rel, space, ident, ident)

    def __repr__(self):
        return "QuotientPresentation(%d -> %d)" % (self.ambient.dim,
                                                   self.quotient.dim)


def quotient_by(ambient, relations, field, label=""):
    """Present ambient / span(relation columns).

    The section picks out the non-pivot coordinates of the column-reduced
    relation matrix, so results are deterministic given the input order.
    """
    assert relations.cod.dim == ambient.dim
    f = field
    # column echelon form of the relations = row echelon of the transpose
    red, pivots, rk = rref(_transpose(relations))
    ech_rows = red.rows()[:rk]  # each row is an echelon basis vector of span
    piv_set = set(pivots)
    nonpiv = [c for c in range(ambient.dim) if c not in piv_set]
    quotient = Space(len(nonpiv), label or (ambient.label + "/~"))
    # projection: subtract v[p_k] * w_k for each echelon vector, keep non-pivots
    proj_entries = {}
    for out_i, c in enumerate(nonpiv):
        proj_entries[(out_i, c)] = f.one
        for k, pc in enumerate(pivots):
            w = ech_rows[k][c]
            if w:
                proj_entries[(out_i, pc)] = f.neg(w)
    projection = LinMap(ambient, quotient, f, proj_entries)
    section = LinMap(quotient, ambient, f,
                     {(c, out_i): f.one for out_i, c in enumerate(nonpiv)})
    return QuotientPresentation(ambient, relations, quotient, projection, section)


def _transpose(m):
    return LinMap(m.cod, m.dom, m.field,
                  {(j, i): v for (i, j), v in m.entries.items()})


def descend(f_free, src, dst):
    """Descend a map on ambient spaces to the quotients.

    Checks that the relation subspace of src is sent into the relation
    subspace of dst; raises DescentFailure with a witness column otherwise.
    """
    assert f_free.dom.dim == src.ambient.dim
    assert f_free.cod.dim == dst.ambient.dim
    bad = dst.projection @ (f_free @ src.relations)
    if not bad.is_zero():
        j = bad.nonzero_column_index()
        raise DescentFailure(
            "map does not descend (relation column %d)" % j,
            witness=(j, bad.column(j)))
    return dst.projection @ (f_free @ src.section)


def vector_from_dict(space, field, items):
    v = [field.zero] * space.dim
    for i, c in items.items():
        v[i] = field.add(v[i], c)
    return tuple(v)
