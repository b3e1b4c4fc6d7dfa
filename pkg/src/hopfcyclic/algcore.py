"""Algebras, coalgebras, (co)module actions, and balanced tensor products.

Structures are plain structure-constant containers over an exact field.
Every axiom check returns a Report listing named pass/fail results with a
witness (basis index or offending column) on failure.
"""

from .exactlin import (
    LinMap, Space, QuotientPresentation, tensor_space, permute_factors,
    kernel, quotient_by,
)


class CheckResult:
    __slots__ = ("name", "passed", "witness")

    def __init__(self, name, passed, witness=None):
        self.name = name
        self.passed = passed
        self.witness = witness

    def __repr__(self):
        tag = "ok" if self.passed else "FAIL"
        return "<%s %s%s>" % (self.name, tag,
                              "" if self.passed else " witness=%r" % (self.witness,))


class Report:
    def __init__(self, subject=""):
        self.subject = subject
        self.results = []

    def add(self, name, passed, witness=None):
        self.results.append(CheckResult(name, bool(passed), witness))
        return self

    def check_map_equal(self, name, lhs, rhs):
        diff = lhs - rhs
        if diff.is_zero():
            return self.add(name, True)
        j = diff.nonzero_column_index()
        return self.add(name, False, witness=(j, diff.column(j)))

    def check_map_zero(self, name, m):
        if m.is_zero():
            return self.add(name, True)
        j = m.nonzero_column_index()
        return self.add(name, False, witness=(j, m.column(j)))

    def extend(self, other, prefix=""):
        for r in other.results:
            self.results.append(CheckResult(prefix + r.name, r.passed, r.witness))
        return self

    @property
    def ok(self):
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def __repr__(self):
        return "Report(%s: %d checks, %d failed)" % (
            self.subject, len(self.results), len(self.failures()))


def swap_map(a, b, field):
    return permute_factors([a.dim, b.dim], [1, 0], field)


def curry_left(m, xvec, xdim):
    """Slice a map X (x) Y -> Z at a fixed vector in X."""
    ydim = m.dom.dim // xdim
    assert len(xvec) == xdim and xdim * ydim == m.dom.dim
    f = m.field
    out = {}
    for (i, j), v in m.entries.items():
        xi, yj = divmod(j, ydim)
        if xvec[xi]:
            key = (i, yj)
            cur = out.get(key)
            term = f.mul(v, xvec[xi])
            out[key] = term if cur is None else f.add(cur, term)
    return LinMap(Space(ydim), m.cod, f, out)


class AlgebraData:
    """A unital associative algebra given by its multiplication tensor."""

    def __init__(self, space, mul, unit, field, label=""):
        assert mul.dom.dim == space.dim * space.dim and mul.cod.dim == space.dim
        assert len(unit) == space.dim
        self.space = space
        self.mul = mul
        self.unit = tuple(unit)
        self.field = field
        self.label = label or space.label

    def unit_map(self):
        return LinMap.from_columns(Space(1, "k"), self.space, self.field,
                                   [self.unit])

    def left_mult(self, vec):
        """The operator v |-> (vec * v)."""
        return curry_left(self.mul, vec, self.space.dim)

    def right_mult(self, vec):
        """The operator v |-> (v * vec)."""
        f = self.field
        d = self.space.dim
        out = {}
        for (i, j), v in self.mul.entries.items():
            lj, rj = divmod(j, d)
            if vec[rj]:
                key = (i, lj)
                cur = out.get(key)
                term = f.mul(v, vec[rj])
                out[key] = term if cur is None else f.add(cur, term)
        return LinMap(self.space, self.space, f, out)

    def mul_elements(self, u, v):
        d = self.space.dim
        f = self.field
        vec = [f.zero] * (d * d)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        vec[i * d + j] = f.mul(a, b)
        return self.mul.apply(tuple(vec))

    def mul_n(self, k):
        """Left-folded multiplication map on k tensor factors."""
        assert k >= 1
        d = self.space.dim
        out = LinMap.identity(self.space, self.field)
        for _ in range(k - 1):
            src = Space(out.dom.dim * d)
            step = self.mul @ (out.tensor(LinMap.identity(self.space, self.field)))
            out = LinMap(src, self.space, self.field, step.entries)
        return out

    def opposite(self):
        sw = swap_map(self.space, self.space, self.field)
        return AlgebraData(self.space, self.mul @ sw, self.unit, self.field,
                           label=self.label + "^op")

    def tensor_with(self, other, label=""):
        """Componentwise algebra structure on the tensor product."""
        f = self.field
        a, b = self.space, other.space
        mid = permute_factors([a.dim, a.dim, b.dim, b.dim], [0, 2, 1, 3], f)
        mul = (self.mul.tensor(other.mul)) @ mid
        unit = []
        for x in self.unit:
            for y in other.unit:
                unit.append(f.mul(x, y))
        return AlgebraData(tensor_space(a, b), mul, unit, f,
                           label=label or "%sx%s" % (self.label, other.label))


def check_algebra(a, commutative=False):
    rep = Report("algebra %s" % a.label)
    f = a.field
    ident = LinMap.identity(a.space, f)
    rep.check_map_equal("associativity",
                        a.mul @ (a.mul.tensor(ident)),
                        a.mul @ (ident.tensor(a.mul)))
    rep.check_map_equal("left_unit", a.mul @ (a.unit_map().tensor(ident)), ident)
    rep.check_map_equal("right_unit", a.mul @ (ident.tensor(a.unit_map())), ident)
    if commutative:
        rep.check_map_equal("commutativity",
                            a.mul, a.mul @ swap_map(a.space, a.space, f))
    return rep


class CoalgebraData:
    def __init__(self, space, comul, counit, field, label=""):
        assert comul.dom.dim == space.dim
        assert comul.cod.dim == space.dim * space.dim
        assert counit.dom.dim == space.dim and counit.cod.dim == 1
        self.space = space
        self.comul = comul
        self.counit = counit
        self.field = field
        self.label = label or space.label

    def is_cocommutative(self):
        sw = swap_map(self.space, self.space, self.field)
        return (sw @ self.comul - self.comul).is_zero()

    def iterated_comul_vector(self, xvec, n):
        """Expand an element into C^{(x)n}; dict {basis tuple: coefficient}.

        n = 1 returns the element itself; n = 0 applies the counit.
        """
        f = self.field
        d = self.space.dim
        if n == 0:
            v = self.counit.apply(tuple(xvec))
            return {(): v[0]} if v[0] else {}
        cur = {(i,): c for i, c in enumerate(xvec) if c}
        for _ in range(n - 1):
            nxt = {}
            for key, coeff in cur.items():
                last = key[-1]
                col = self.comul.column(last)
                for flat, v in enumerate(col):
                    if v:
                        i, j = divmod(flat, d)
                        nk = key[:-1] + (i, j)
                        term = f.mul(coeff, v)
                        cur_v = nxt.get(nk)
                        nxt[nk] = term if cur_v is None else f.add(cur_v, term)
            cur = {k: v for k, v in nxt.items() if v}
        return cur

    def tensor_with(self, other, label=""):
        """Tensor product coalgebra (middle factors swapped in the coproduct)."""
        f = self.field
        a, b = self.space, other.space
        mid = permute_factors([a.dim, a.dim, b.dim, b.dim], [0, 2, 1, 3], f)
        comul = mid @ (self.comul.tensor(other.comul))
        counit_big = self.counit.tensor(other.counit)
        counit = LinMap(tensor_space(a, b), Space(1), f, counit_big.entries)
        return CoalgebraData(tensor_space(a, b), comul, counit, f,
                             label=label or "%sx%s" % (self.label, other.label))


def check_coalgebra(c, cocommutative=False):
    rep = Report("coalgebra %s" % c.label)
    f = c.field
    ident = LinMap.identity(c.space, f)
    rep.check_map_equal("coassociativity",
                        (c.comul.tensor(ident)) @ c.comul,
                        (ident.tensor(c.comul)) @ c.comul)
    left = (c.counit.tensor(ident)) @ c.comul
    rep.check_map_equal("left_counit",
                        LinMap(c.space, c.space, f, left.entries), ident)
    right = (ident.tensor(c.counit)) @ c.comul
    rep.check_map_equal("right_counit",
                        LinMap(c.space, c.space, f, right.entries), ident)
    if cocommutative:
        rep.add("cocommutativity", c.is_cocommutative())
    return rep


class ModuleActionData:
    """A left (A (x) M -> M) or right (M (x) A -> M) module action."""

    def __init__(self, algebra, space, action, side, label=""):
        assert side in ("left", "right")
        expected = (algebra.space.dim * space.dim if side == "left"
                    else space.dim * algebra.space.dim)
        assert action.dom.dim == expected and action.cod.dim == space.dim
        self.algebra = algebra
        self.space = space
        self.action = action
        self.side = side
        self.label = label


def check_module(m):
    rep = Report("module %s" % m.label)
    f = m.algebra.field
    ident = LinMap.identity(m.space, f)
    ida = LinMap.identity(m.algebra.space, f)
    u = m.algebra.unit_map()
    if m.side == "left":
        rep.check_map_equal("associativity",
                            m.action @ (m.algebra.mul.tensor(ident)),
                            m.action @ (ida.tensor(m.action)))
        unit_act = m.action @ (u.tensor(ident))
        rep.check_map_equal("unit", LinMap(m.space, m.space, f, unit_act.entries),
                            ident)
    else:
        rep.check_map_equal("associativity",
                            m.action @ (m.action.tensor(ida)),
                            m.action @ (ident.tensor(m.algebra.mul)))
        unit_act = m.action @ (ident.tensor(u))
        rep.check_map_equal("unit", LinMap(m.space, m.space, f, unit_act.entries),
                            ident)
    return rep


class ComoduleData:
    """A comodule over a plain coalgebra.

    side "right": coaction M -> M (x) C;  side "left": coaction M -> C (x) M.
    """

    def __init__(self, coalgebra, space, coaction, side, label=""):
        assert side in ("left", "right")
        assert coaction.dom.dim == space.dim
        assert coaction.cod.dim == space.dim * coalgebra.space.dim
        self.coalgebra = coalgebra
        self.space = space
        self.coaction = coaction
        self.side = side
        self.label = label

    def iterated_coaction_vector(self, yvec, n):
        """Expand into M (x) C^{(x)n} (right) or C^{(x)n} (x) M (left).

        Returns {(m_index, c_1, ..., c_n): coefficient} in both cases, with
        the comodule index first for uniformity.
        """
        f = self.coalgebra.field
        dc = self.coalgebra.space.dim
        cur = {(i,): c for i, c in enumerate(yvec) if c}
        for _ in range(n):
            nxt = {}
            for key, coeff in cur.items():
                midx = key[0]
                col = self.coaction.column(midx)
                for flat, v in enumerate(col):
                    if not v:
                        continue
                    if self.side == "right":
                        mi, ci = divmod(flat, dc)
                    else:
                        ci, mi = divmod(flat, self.space.dim)
                    nk = (mi,) + key[1:] + (ci,)
                    term = f.mul(coeff, v)
                    cur_v = nxt.get(nk)
                    nxt[nk] = term if cur_v is None else f.add(cur_v, term)
            cur = {k: v for k, v in nxt.items() if v}
        return cur


def check_comodule(cm):
    rep = Report("comodule %s" % cm.label)
    c = cm.coalgebra
    f = c.field
    ident = LinMap.identity(cm.space, f)
    idc = LinMap.identity(c.space, f)
    if cm.side == "right":
        rep.check_map_equal("coassociativity",
                            (cm.coaction.tensor(idc)) @ cm.coaction,
                            (ident.tensor(c.comul)) @ cm.coaction)
        cu = (ident.tensor(c.counit)) @ cm.coaction
    else:
        rep.check_map_equal("coassociativity",
                            (idc.tensor(cm.coaction)) @ cm.coaction,
                            (c.comul.tensor(ident)) @ cm.coaction)
        cu = (c.counit.tensor(ident)) @ cm.coaction
    rep.check_map_equal("counit", LinMap(cm.space, cm.space, f, cu.entries), ident)
    return rep


class BalancedTensor:
    """A balanced tensor product, packaged as its quotient presentation."""

    def __init__(self, presentation, factors):
        self.presentation = presentation
        self.factors = factors


def balanced_tensor(left_pres, right_pres, ract, lact, aspace, field, label=""):
    """Quotient of left (x) right by (q.a) (x) r - q (x) (a.r).

    `ract`: left_pres.quotient (x) A -> left_pres.quotient
    `lact`: A (x) right_pres.quotient -> right_pres.quotient
    The ambient of the result is the tensor product of the two ambients, so
    towers keep a projection/section from the full tensor power.
    """
    lq, rq = left_pres.quotient, right_pres.quotient
    da = aspace.dim
    ambient = tensor_space(left_pres.ambient, right_pres.ambient, label)
    inner_ambient = tensor_space(lq, rq)
    cols = []
    for i in range(lq.dim):
        qi = lq.basis_vector(i, field)
        for a in range(da):
            av = aspace.basis_vector(a, field)
            qa = ract.apply(_kron_vec(qi, av, field))
            for j in range(rq.dim):
                rj = rq.basis_vector(j, field)
                ar = lact.apply(_kron_vec(av, rj, field))
                col = [field.zero] * inner_ambient.dim
                for x, v in enumerate(qa):
                    if v:
                        col[x * rq.dim + j] = field.add(col[x * rq.dim + j], v)
                for y, v in enumerate(ar):
                    if v:
                        col[i * rq.dim + y] = field.sub(col[i * rq.dim + y], v)
                if any(col):
                    cols.append(col)
    rel_inner = LinMap.from_columns(Space(len(cols), "rel"), inner_ambient,
                                    field, cols)
    inner = quotient_by(inner_ambient, rel_inner, field, label)
    both = left_pres.projection.tensor(right_pres.projection)
    projection = LinMap(ambient, inner.quotient, field,
                        (inner.projection @ both).entries)
    sect = (left_pres.section.tensor(right_pres.section)) @ inner.section
    section = LinMap(inner.quotient, ambient, field, sect.entries)
    relations = kernel(projection)
    return QuotientPresentation(ambient, relations, inner.quotient,
                                projection, section)


def _kron_vec(u, v, field):
    out = [field.zero] * (len(u) * len(v))
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    out[i * len(v) + j] = field.mul(a, b)
    return tuple(out)


def action_on_last_slot(pres, slot_action, aspace, field):
    """Right A-action on a tower quotient, acting through the last factor.

    `slot_action`: U (x) A -> U on the last ambient factor.  Returns the
    descended map quotient (x) A -> quotient.
    """
    udim = slot_action.cod.dim
    rest = pres.ambient.dim // udim
    ident_rest = LinMap.identity(Space(rest), field)
    q = pres.quotient
    entries = {}
    for a in range(aspace.dim):
        act_a = curry_left(
            permuted_right_slice(slot_action, aspace.basis_vector(a, field), field),
            (field.one,), 1)
        op = pres.projection @ (ident_rest.tensor(act_a) @ pres.section)
        for (i, j), v in op.entries.items():
            entries[(i, j * aspace.dim + a)] = v
    return LinMap(tensor_space(q, aspace), q, field, entries)


def permuted_right_slice(m, avec, field):
    """Slice U (x) A -> U at a fixed A vector; returned as k (x) U -> U."""
    udim = m.cod.dim
    adim = m.dom.dim // udim
    f = field
    out = {}
    for (i, j), v in m.entries.items():
        uj, aj = divmod(j, adim)
        if avec[aj]:
            key = (i, uj)
            term = f.mul(v, avec[aj])
            cur = out.get(key)
            out[key] = term if cur is None else f.add(cur, term)
    return LinMap(Space(udim), Space(udim), f, out)


def iterated_balanced_tensor(base_pres, base_ract, factor_space, factor_ract,
                             factor_lact, aspace, field, n, label=""):
    """Left-nested tower base (x)_A U (x)_A ... (x)_A U with n copies of U.

    `base_ract`: base.quotient (x) A -> base.quotient
    `factor_ract`: U (x) A -> U,  `factor_lact`: A (x) U -> U.
    Returns the list of presentations for 0, 1, ..., n attached factors.
    """
    factor_pres = QuotientPresentation.trivial(factor_space, field)
    out = [base_pres]
    ract = base_ract
    for k in range(1, n + 1):
        pres = balanced_tensor(out[-1], factor_pres, ract, factor_lact,
                               aspace, field,
                               label="%s[%d]" % (label, k))
        out.append(pres)
        if k < n:
            ract = action_on_last_slot(pres, factor_ract, aspace, field)
    return out


def check_sweedler_measuring(c, r, r2, psi):
    """psi: C (x) R -> R2 measuring a coalgebra action on algebras."""
    rep = Report("sweedler measuring")
    f = c.field
    idc = LinMap.identity(c.space, f)
    idr = LinMap.identity(r.space, f)
    lhs = psi @ (idc.tensor(r.mul))
    mid = permute_factors([c.space.dim, c.space.dim, r.space.dim, r.space.dim],
                          [0, 2, 1, 3], f)
    rhs = r2.mul @ ((psi.tensor(psi)) @ (mid @ (c.comul.tensor(idr.tensor(idr)))))
    rep.check_map_equal("multiplicativity",
                        LinMap(lhs.dom, lhs.cod, f, lhs.entries),
                        LinMap(lhs.dom, lhs.cod, f, rhs.entries))
    lu = psi @ (idc.tensor(r.unit_map()))
    ru = r2.unit_map() @ c.counit
    rep.check_map_equal("unitality",
                        LinMap(c.space, r2.space, f, lu.entries),
                        LinMap(c.space, r2.space, f, ru.entries))
    return rep
