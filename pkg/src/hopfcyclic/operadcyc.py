"""Non-symmetric operads with multiplication, cyclic unital comp modules,
their measurings, and the constructions attached to Yetter-Drinfeld algebra
and anti-Yetter-Drinfeld coefficients over a Hopf algebroid.

Operad arities are truncated at a cutoff; identities that would need data
above the cutoff are skipped and counted rather than silently assumed.
"""

from .exactlin import (
    DescentFailure, LinMap, Space, QuotientPresentation, descend, kernel,
    permute_factors, solve,
)
from .algcore import (
    ComoduleData, Report, balanced_tensor, check_comodule, curry_left,
    swap_map,
)
from .hopfalgebroid import SaydModuleData, translation_lift
from .cyclichom import (
    CyclicModuleData, chain_coeff_tower, check_chain_map,
    tensor_presentation,
)


class StabilityFailure(Exception):
    pass


class CertificateFailure(Exception):
    pass


def _flat(m):
    return LinMap(Space(m.dom.dim), Space(m.cod.dim), m.field, m.entries)


def _idd(d, f):
    return LinMap.identity(Space(d), f)


def _chain(maps, f):
    out = None
    for m in maps:
        out = m if out is None else out.tensor(m)
    return _flat(out) if out is not None else _idd(1, f)


def _curry_right(m, vec, right_dim):
    """Fix the right tensor factor of a map X (x) Y -> Z."""
    f = m.field
    dx = m.dom.dim // right_dim
    entries = {}
    for (i, j), v in m.entries.items():
        x, y = divmod(j, right_dim)
        c = f.mul(v, vec[y])
        if c:
            entries[(i, x)] = f.add(entries.get((i, x), f.zero), c)
    return LinMap(Space(dx), m.cod, f, {k: v for k, v in entries.items() if v})


class _Pipe:
    """A linear map built stage by stage on a list of tensor factors."""

    def __init__(self, dims, f):
        self.dims = list(dims)
        self.f = f
        d = 1
        for x in self.dims:
            d *= x
        self.map = _idd(d, f)

    def permute(self, order):
        if order == list(range(len(self.dims))):
            return self
        perm = permute_factors(self.dims, order, self.f)
        self.map = perm @ self.map
        self.dims = [self.dims[k] for k in order]
        return self

    def block(self, start, count, blockmap, out_dims):
        """Apply blockmap to factors [start, start+count), replacing them."""
        left = 1
        for x in self.dims[:start]:
            left *= x
        mid = 1
        for x in self.dims[start:start + count]:
            mid *= x
        assert blockmap.dom.dim == mid, (blockmap.dom.dim, mid)
        right = 1
        for x in self.dims[start + count:]:
            right *= x
        step = _chain([_idd(left, self.f), blockmap, _idd(right, self.f)],
                      self.f)
        self.map = step @ self.map
        self.dims = self.dims[:start] + list(out_dims) \
            + self.dims[start + count:]
        return self


# -- operads and comp modules ---------------------------------------------

class OperadData:
    """Arity spaces O(0..N), partial compositions, identity, multiplication
    and unit; comp[(p, q, i)] : O(p) (x) O(q) -> O(p+q-1), 1 <= i <= p."""

    def __init__(self, spaces, comp, one, m, e, field, label=""):
        self.spaces = spaces
        self.N = len(spaces) - 1
        self.comp = comp
        self.one = tuple(one)
        self.m = tuple(m)
        self.e = tuple(e)
        self.field = field
        self.label = label


class CompModuleData:
    """Spaces L(0..N), bullet[(p, n, i)] : O(p) (x) L(n) -> L(n-p+1), and
    cyclic operators t[n]."""

    def __init__(self, operad, spaces, bullet, t, field, label=""):
        self.operad = operad
        self.spaces = spaces
        self.N = len(spaces) - 1
        self.bullet = bullet
        self.t = t
        self.field = field
        self.label = label


def check_operad(od):
    rep = Report("operad %s" % od.label)
    f = od.field
    N = od.N
    skipped = 0
    ok = True
    wit = None
    for p in range(1, N + 1):
        for q in range(0, N + 1):
            for r in range(0, N + 1):
                n2 = p + q - 1
                final = p + q + r - 2
                if n2 > N or final > N or final < 0:
                    skipped += 1
                    continue
                dp = od.spaces[p].dim
                dq = od.spaces[q].dim
                dr = od.spaces[r].dim
                uwv = permute_factors([dp, dq, dr], [0, 2, 1], f)
                for i in range(1, p + 1):
                    for j in range(1, n2 + 1):
                        lhs_inner = od.comp.get((p, q, i))
                        lhs_outer = od.comp.get((n2, r, j))
                        if lhs_inner is None or lhs_outer is None:
                            skipped += 1
                            continue
                        lhs = lhs_outer @ _flat(lhs_inner.tensor(_idd(dr, f)))
                        if j < i:
                            inner = od.comp.get((p, r, j))
                            outer = od.comp.get((p + r - 1, q, i + r - 1)) \
                                if p + r - 1 <= N else None
                            case = "left_of"
                        elif j < q + i:
                            inner = od.comp.get((q, r, j - i + 1))
                            outer = od.comp.get((p, q + r - 1, i)) \
                                if q + r - 1 <= N else None
                            case = "inside"
                        else:
                            inner = od.comp.get((p, r, j - q + 1))
                            outer = od.comp.get((p + r - 1, q, i)) \
                                if p + r - 1 <= N else None
                            case = "right_of"
                        if inner is None or outer is None:
                            skipped += 1
                            continue
                        if case == "inside":
                            rhs = outer @ _flat(_idd(dp, f).tensor(inner))
                        else:
                            rhs = outer @ (_flat(inner.tensor(_idd(dq, f)))
                                           @ uwv)
                        if not (lhs - rhs).is_zero():
                            ok = False
                            wit = (case, p, q, r, i, j)
    rep.add("associativity", ok, witness=wit)
    rep.add("associativity_skipped", True, witness=skipped)
    ok = True
    wit = None
    for p in range(0, N + 1):
        dp = od.spaces[p].dim
        for i in range(1, p + 1):
            c = od.comp.get((p, 1, i))
            if c is None:
                continue
            right = _curry_right(c, od.one, od.spaces[1].dim)
            if not (right - _idd(dp, f)).is_zero():
                ok = False
                wit = ("right_unit", p, i)
        c = od.comp.get((1, p, 1))
        if c is not None:
            left = curry_left(c, od.one, od.spaces[1].dim)
            if not (left - _idd(dp, f)).is_zero():
                ok = False
                wit = ("left_unit", p)
    rep.add("operad_identity", ok, witness=wit)
    if N >= 3:
        d2 = od.spaces[2].dim
        m1 = curry_left(od.comp[(2, 2, 1)], od.m, d2).apply(od.m)
        m2 = curry_left(od.comp[(2, 2, 2)], od.m, d2).apply(od.m)
        rep.add("m_comp_associative", m1 == m2,
                witness=None if m1 == m2 else (m1, m2))
    for i in (1, 2):
        c = od.comp.get((2, 0, i))
        if c is None:
            continue
        val = curry_left(c, od.m, od.spaces[2].dim).apply(od.e)
        rep.add("m_unit_%d" % i, val == od.one,
                witness=None if val == od.one else val)
    return rep


def check_comp_module(cm):
    od = cm.operad
    rep = Report("comp module %s" % cm.label)
    f = cm.field
    N = cm.N
    skipped = 0
    ok = True
    wit = None
    for p in range(0, od.N + 1):
        for q in range(0, od.N + 1):
            dp = od.spaces[p].dim
            dq = od.spaces[q].dim
            sw = permute_factors([dp, dq], [1, 0], f)
            for n in range(0, N + 1):
                dl = cm.spaces[n].dim
                swl = _flat(sw.tensor(_idd(dl, f)))
                for j in range(0, n + 2 - q):
                    bj = cm.bullet.get((q, n, j))
                    n1 = n - q + 1
                    if bj is None or n1 < 0 or n1 > N:
                        continue
                    for i in range(0, n1 + 2 - p):
                        bi = cm.bullet.get((p, n1, i))
                        if bi is None:
                            skipped += 1
                            continue
                        lhs = bi @ _flat(_idd(dp, f).tensor(bj))
                        rhs = None
                        if j < i:
                            inner = cm.bullet.get((p, n, i + q - 1))
                            outer = cm.bullet.get((q, n - p + 1, j)) \
                                if 0 <= n - p + 1 <= N else None
                            if inner is not None and outer is not None:
                                rhs = outer \
                                    @ (_flat(_idd(dq, f).tensor(inner)) @ swl)
                        elif p > 0 and j - p < i <= j:
                            inner = od.comp.get((p, q, j - i + 1))
                            outer = cm.bullet.get((p + q - 1, n, i))
                            if inner is not None and outer is not None:
                                rhs = outer \
                                    @ _flat(inner.tensor(_idd(dl, f)))
                        elif p > 0 and i <= j - p:
                            inner = cm.bullet.get((p, n, i))
                            outer = cm.bullet.get((q, n - p + 1, j - p + 1)) \
                                if 0 <= n - p + 1 <= N else None
                            if inner is not None and outer is not None:
                                rhs = outer \
                                    @ (_flat(_idd(dq, f).tensor(inner)) @ swl)
                        elif p == 0 and i <= j:
                            inner = cm.bullet.get((0, n, i))
                            outer = cm.bullet.get((q, n + 1, j + 1)) \
                                if n + 1 <= N else None
                            if inner is not None and outer is not None:
                                rhs = outer \
                                    @ (_flat(_idd(dq, f).tensor(inner)) @ swl)
                        if rhs is None:
                            skipped += 1
                            continue
                        if not (lhs - rhs).is_zero():
                            ok = False
                            wit = ("bullet", p, q, n, i, j)
    rep.add("comp_compatibility", ok, witness=wit)
    rep.add("comp_skipped", True, witness=skipped)
    ok = True
    wit = None
    for n in range(0, N + 1):
        for i in range(0, n + 1):
            b = cm.bullet.get((1, n, i))
            if b is None:
                continue
            cur = curry_left(b, od.one, od.spaces[1].dim)
            if not (cur - _idd(cm.spaces[n].dim, f)).is_zero():
                ok = False
                wit = ("unit", n, i)
    rep.add("module_unital", ok, witness=wit)
    ok = True
    wit = None
    for p in range(0, od.N + 1):
        dp = od.spaces[p].dim
        for n in range(0, N + 1):
            if n - p + 1 < 0 or n - p + 1 > N:
                continue
            for i in range(0, n - p + 1):
                b1 = cm.bullet.get((p, n, i))
                b2 = cm.bullet.get((p, n, i + 1))
                if b1 is None or b2 is None:
                    continue
                lhs = cm.t[n - p + 1] @ b1
                rhs = b2 @ _flat(_idd(dp, f).tensor(cm.t[n]))
                if not (lhs - rhs).is_zero():
                    ok = False
                    wit = ("cyclic_compat", p, n, i)
    rep.add("cyclic_compatibility", ok, witness=wit)
    for n in range(0, N + 1):
        power = cm.t[n]
        for _ in range(n):
            power = cm.t[n] @ power
        rep.check_map_equal("t_order@%d" % n, power,
                            _idd(cm.spaces[n].dim, f))
    return rep


def comp_cyclic_module(cm, N=None):
    """The cyclic module of a cyclic unital comp module."""
    od = cm.operad
    N = cm.N if N is None else N
    d2 = od.spaces[2].dim
    d0 = od.spaces[0].dim
    faces = {}
    degen = {}
    cyc = {}
    for n in range(1, N + 1):
        ops = []
        for i in range(0, n):
            ops.append(curry_left(cm.bullet[(2, n, i)], od.m, d2))
        ops.append(curry_left(cm.bullet[(2, n, 0)], od.m, d2) @ cm.t[n])
        faces[n] = ops
    for n in range(0, N):
        ops = []
        for j in range(0, n + 1):
            ops.append(curry_left(cm.bullet[(0, n, j + 1)], od.e, d0))
        degen[n] = ops
    for n in range(0, N + 1):
        cyc[n] = cm.t[n]
    return CyclicModuleData("cyclic", N, list(cm.spaces), faces, degen, cyc,
                            label="C_(%s)" % cm.label)


# -- measurings -----------------------------------------------------------

class OperadMeasuringData:
    """Psi[n] : C (x) O(n) -> O'(n)."""

    def __init__(self, C, src, dst, Psi, label=""):
        self.C = C
        self.src = src
        self.dst = dst
        self.Psi = Psi
        self.label = label

    def Psi_of(self, n, xvec):
        return curry_left(self.Psi[n], xvec, self.C.space.dim)


def check_operad_measuring(om):
    rep = Report("operad measuring %s" % om.label)
    f = om.C.field
    rep.add("coalgebra_cocommutative", om.C.is_cocommutative())
    N = min(om.src.N, om.dst.N)
    dc = om.C.space.dim
    skipped = 0
    ok = True
    wit = None
    for c in range(dc):
        xv = om.C.space.basis_vector(c, f)
        terms = om.C.iterated_comul_vector(xv, 2)
        for (p, q, i), comp in om.src.comp.items():
            comp2 = om.dst.comp.get((p, q, i))
            if comp2 is None or p + q - 1 > N:
                skipped += 1
                continue
            lhs = om.Psi_of(p + q - 1, xv) @ comp
            rhs = None
            for (a, b), coeff in terms.items():
                pa = om.Psi_of(p, om.C.space.basis_vector(a, f))
                qb = om.Psi_of(q, om.C.space.basis_vector(b, f))
                term = (comp2 @ _flat(pa.tensor(qb))).scaled(coeff)
                rhs = term if rhs is None else rhs + term
            if rhs is None or not (lhs - rhs).is_zero():
                ok = False
                wit = (c, p, q, i)
    rep.add("comp_measuring", ok, witness=wit)
    rep.add("comp_measuring_skipped", True, witness=skipped)
    ok = True
    for c in range(dc):
        xv = om.C.space.basis_vector(c, f)
        eps = om.C.counit.apply(xv)[0]
        got_m = om.Psi_of(2, xv).apply(om.src.m)
        want_m = tuple(f.mul(eps, v) for v in om.dst.m)
        got_e = om.Psi_of(0, xv).apply(om.src.e)
        want_e = tuple(f.mul(eps, v) for v in om.dst.e)
        if got_m != want_m or got_e != want_e:
            ok = False
    rep.add("m_and_e_preserved", ok)
    return rep


class CompComoduleMeasuringData:
    """Left C-comodule D with Omega[n] : D (x) L(n) -> L'(n)."""

    def __init__(self, base, D, src, dst, Omega, label=""):
        self.base = base
        self.D = D
        self.src = src
        self.dst = dst
        self.Omega = Omega
        self.label = label

    def Omega_of(self, n, yvec):
        return curry_left(self.Omega[n], yvec, self.D.space.dim)


def check_comp_comodule_measuring(ccm):
    rep = Report("comp comodule measuring %s" % ccm.label)
    om = ccm.base
    f = om.C.field
    rep.extend(check_comodule(ccm.D), "comodule.")
    N = min(ccm.src.N, ccm.dst.N)
    dd = ccm.D.space.dim
    skipped = 0
    ok = True
    wit = None
    for c in range(dd):
        yv = ccm.D.space.basis_vector(c, f)
        terms = ccm.D.iterated_coaction_vector(yv, 1)
        for (p, n, i), b in ccm.src.bullet.items():
            b2 = ccm.dst.bullet.get((p, n, i))
            if b2 is None or n - p + 1 > N or n - p + 1 < 0:
                skipped += 1
                continue
            lhs = ccm.Omega_of(n - p + 1, yv) @ b
            rhs = None
            for key, coeff in terms.items():
                y1, x0 = key  # left comodule: (module index, coalgebra index)
                pa = om.Psi_of(p, om.C.space.basis_vector(x0, f))
                ob = ccm.Omega_of(n, ccm.D.space.basis_vector(y1, f))
                term = (b2 @ _flat(pa.tensor(ob))).scaled(coeff)
                rhs = term if rhs is None else rhs + term
            if rhs is None or not (lhs - rhs).is_zero():
                ok = False
                wit = (c, p, n, i)
    rep.add("bullet_measuring", ok, witness=wit)
    rep.add("bullet_measuring_skipped", True, witness=skipped)
    ok = True
    wit = None
    for c in range(dd):
        yv = ccm.D.space.basis_vector(c, f)
        for n in range(N + 1):
            lhs = ccm.Omega_of(n, yv) @ ccm.src.t[n]
            rhs = ccm.dst.t[n] @ ccm.Omega_of(n, yv)
            if not (lhs - rhs).is_zero():
                ok = False
                wit = (c, n)
    rep.add("cyclic_commutes", ok, witness=wit)
    return rep


def induced_comp_map(ccm, yvec, N=None):
    """Chain maps on the associated cyclic modules, plus the certificate."""
    N = min(ccm.src.N, ccm.dst.N) if N is None else N
    maps = [ccm.Omega_of(n, yvec) for n in range(N + 1)]
    src = comp_cyclic_module(ccm.src, N)
    dst = comp_cyclic_module(ccm.dst, N)
    cert = check_chain_map(src, dst, maps)
    return maps, cert


# -- Yetter-Drinfeld operads ----------------------------------------------

def _hom_data(h, z, N):
    """Per arity: (tower presentation or None, basis of ambient-level hom
    maps U^{(x)n} -> Z, coordinate inclusion K)."""
    f = h.field
    dz = z.Z.space.dim
    da = h.A.space.dim
    du = h.U.space.dim
    out = {}
    for n in range(N + 1):
        if n == 0:
            basis = [LinMap(Space(1), z.Z.space, f, {(i, 0): f.one})
                     for i in range(dz)]
            out[0] = (None, basis, _idd(dz, f))
            continue
        pres = h.rtower(n)
        w = pres.quotient.dim
        entries = {}
        for a in range(da):
            avec = h.A.space.basis_vector(a, f)
            free = _flat(h.rmul(h.t_of(avec)).tensor(_idd(du ** (n - 1), f)))
            Ra = descend(free, pres, pres)
            Sa = z.act_by(h.s_of(avec))
            # rows of vec(f Ra - Sa f) = 0, one block per base element
            for (wj, wp), v in Ra.entries.items():
                for zi in range(dz):
                    key = (a * dz * w + zi * w + wp, zi * w + wj)
                    entries[key] = f.add(entries.get(key, f.zero), v)
            for (zi, zp), v in Sa.entries.items():
                for wj in range(w):
                    key = (a * dz * w + zi * w + wj, zp * w + wj)
                    entries[key] = f.sub(entries.get(key, f.zero), v)
        B = LinMap(Space(dz * w), Space(da * dz * w), f,
                   {k: v for k, v in entries.items() if v})
        K = kernel(B)
        basis = []
        for j in range(K.dom.dim):
            vec = K.column(j)
            hm = {}
            for zi in range(dz):
                for wj in range(w):
                    v = vec[zi * w + wj]
                    if v:
                        hm[(zi, wj)] = v
            fq = LinMap(pres.quotient, z.Z.space, f, hm)
            basis.append(_flat(fq @ pres.projection))
        out[n] = (pres, basis, K)
    return out


def _hom_coords(h, z, hom_data, n, amb_map):
    """Coordinates of an ambient-level hom map in the arity-n basis."""
    f = h.field
    pres, _basis, K = hom_data[n]
    if n == 0:
        return tuple(amb_map.column(0))
    w = pres.quotient.dim
    dz = z.Z.space.dim
    fq = _flat(amb_map @ pres.section)
    back = _flat(fq @ pres.projection)
    if not (back - amb_map).is_zero():
        j = (back - amb_map).nonzero_column_index()
        raise DescentFailure("hom does not factor through the tower",
                             witness=(j, (back - amb_map).column(j)))
    vec = [f.zero] * (dz * w)
    for (zi, wj), v in fq.entries.items():
        vec[zi * w + wj] = v
    return tuple(solve(K, vec))


def _yd_circ(h, z, Famb, p, Gamb, q, i):
    """Ambient-level partial composition of two hom maps."""
    f = h.field
    du = h.U.space.dim
    dz = z.Z.space.dim
    nout = p + q - 1
    a = p + q - i       # slots expanded by the coproduct
    tails = nout - a    # = i - 1 untouched slots
    c = p - i
    pipe = _Pipe([du] * nout, f)
    for k in range(a):
        pipe.block(2 * k, 1, h.delta_lift, [du, du])
    # layout: (u^j_1, u^j_2) for j in 1..a, then tails
    gargs = [2 * (j - 1) for j in range(c + 1, a + 1)]
    gsecs = [2 * j - 1 for j in range(c + 1, a + 1)]
    fargs = [2 * (j - 1) for j in range(1, c + 1)]
    fsecs = [2 * j - 1 for j in range(1, c + 1)]
    tidx = [2 * a + k for k in range(tails)]
    pipe.permute(gargs + gsecs + fargs + tidx + fsecs)
    pipe.block(0, q, _flat(z.coact_lift @ Gamb), [du, dz])
    # layout: g_-1, g_0, gsecs(q), fargs(c), tails, fsecs(c)
    pipe.permute(list(range(2 + q, 2 + q + c))
                 + [0] + list(range(2, 2 + q))
                 + list(range(2 + q + c, 2 + q + c + tails))
                 + list(range(2 + q + c + tails, 2 + q + 2 * c + tails))
                 + [1])
    pipe.block(c, q + 1, h.U.mul_n(q + 1), [du])
    # layout: fargs(c), merged, tails, fsecs(c), g_0
    pipe.block(0, p, Famb, [dz])
    # layout: f_val, fsecs(c), g_0
    if c:
        acted = z.action @ _flat(h.U.mul_n(c).tensor(_idd(dz, f)))
        pipe.block(0, 2 + c,
                   _flat(z.Z.mul @ _flat(_idd(dz, f).tensor(acted))), [dz])
    else:
        pipe.block(0, 2, z.Z.mul, [dz])
    return pipe.map


def build_yd_operad(h, z, N):
    """The endomorphism-style operad of a braided commutative
    Yetter-Drinfeld algebra, truncated at arity N."""
    f = h.field
    hom_data = _hom_data(h, z, N)
    spaces = [Space(len(hom_data[n][1]), "O%d" % n) for n in range(N + 1)]
    comp = {}
    for p in range(1, N + 1):
        for q in range(0, N + 1):
            nout = p + q - 1
            if nout > N:
                continue
            for i in range(1, p + 1):
                cols = []
                for Famb in hom_data[p][1]:
                    for Gamb in hom_data[q][1]:
                        amb = _yd_circ(h, z, Famb, p, Gamb, q, i)
                        cols.append(list(_hom_coords(h, z, hom_data, nout,
                                                     amb)))
                comp[(p, q, i)] = LinMap.from_columns(
                    Space(spaces[p].dim * spaces[q].dim), spaces[nout], f,
                    cols)
    unit_z = LinMap.from_columns(Space(1), z.Z.space, f, [list(z.Z.unit)])
    one_amb = _flat(z.action @ _flat((h.s_L @ h.eps_L).tensor(unit_z)))
    one = _hom_coords(h, z, hom_data, 1, one_amb)
    m_amb = _flat(z.action @ _flat(
        (h.s_L @ (h.eps_L @ h.U.mul)).tensor(unit_z)))
    m = _hom_coords(h, z, hom_data, 2, m_amb)
    e = tuple(z.Z.unit)
    od = OperadData(spaces, comp, one, m, e, f,
                    "C^(%s,%s)" % (h.label, z.label))
    od.h = h
    od.z = z
    od.hom_data = hom_data
    return od


# -- Yetter-Drinfeld comp modules -----------------------------------------

def build_ayd_coefficient(h, l, z):
    """The anti-Yetter-Drinfeld structure on L (x)_{A^op} Z, packaged with
    the same interface as the other coefficient modules.  Raises
    StabilityFailure when the composite of coaction and action is not the
    identity."""
    f = h.field
    du = h.U.space.dim
    dl = l.space.dim
    dz = z.Z.space.dim
    trivL = QuotientPresentation.trivial(l.space, f)
    trivZ = QuotientPresentation.trivial(z.Z.space, f)
    # a . z = t(a) z packed as A (x) Z -> Z
    entries = {}
    for a in range(h.A.space.dim):
        sl = z.act_by(h.t_of(h.A.space.basis_vector(a, f)))
        for (i, j), v in sl.entries.items():
            entries[(i, a * dz + j)] = v
    lactz = LinMap(Space(h.A.space.dim * dz), z.Z.space, f, entries)
    mpres = balanced_tensor(trivL, trivZ, l.right_arrow_action(), lactz,
                            h.A.space, f, label="LZ")
    trans = translation_lift(h)
    # action: (l (x) z) u = l u_+ (x) u_- z
    pipe = _Pipe([dl, dz, du], f)
    pipe.block(2, 1, trans, [du, du])
    pipe.permute([0, 2, 3, 1])
    act_free = _flat(_chain([l.action, z.action], f) @ pipe.map)
    act = descend(act_free,
                  tensor_presentation(
                      mpres, QuotientPresentation.trivial(h.U.space, f), f),
                  mpres)
    # coaction: l (x) z -> z_-1 l_-1 (x) (l_0 (x) z_0)
    pipe = _Pipe([dl, dz], f)
    pipe.block(0, 1, l.coact_lift, [du, dl])
    pipe.block(2, 1, z.coact_lift, [du, dz])
    pipe.permute([2, 0, 1, 3])
    pipe.block(0, 2, h.U.mul, [du])
    coact = descend(pipe.map, mpres,
                    tensor_presentation(
                        QuotientPresentation.trivial(h.U.space, f), mpres, f))
    mspace = Space(mpres.quotient.dim, "LZ")
    msayd = SaydModuleData(h, mspace, act, coact, "LZ")
    msayd.presentation = mpres
    sw = swap_map(Space(du), mspace, f)
    stab = act @ (sw @ coact)
    if not (stab - _idd(mspace.dim, f)).is_zero():
        j = (stab - _idd(mspace.dim, f)).nonzero_column_index()
        raise StabilityFailure((j, (stab - _idd(mspace.dim, f)).column(j)))
    return msayd


def _m_sandwich(h, msayd, free, k_src, k_dst):
    """Push a map defined on the free L (x) Z (x) U^k level down to the
    coefficient towers."""
    f = h.field
    du = h.U.space.dim
    mpres = msayd.presentation
    sand = _flat(_chain([mpres.projection, _idd(du ** k_dst, f)], f)
                 @ (free @ _chain([mpres.section, _idd(du ** k_src, f)], f)))
    return descend(sand, chain_coeff_tower(h, msayd, k_src),
                   chain_coeff_tower(h, msayd, k_dst))


def _yd_bullet_pos(h, l, z, msayd, Famb, p, k, i):
    """f bullet_i for i > 0, on the free level, then descended."""
    f = h.field
    du = h.U.space.dim
    dl = l.space.dim
    dz = z.Z.space.dim
    c = k - p - i + 1
    tails = i - 1
    pipe = _Pipe([dl, dz] + [du] * k, f)
    for j in range(c + p):
        pipe.block(2 + 2 * j, 1, h.delta_lift, [du, du])
    # layout: l, z, (u^j_1, u^j_2) j = 1..c+p, tails
    fb1 = [2 + 2 * j for j in range(c, c + p)]
    fb2 = [3 + 2 * j for j in range(c, c + p)]
    c1 = [2 + 2 * j for j in range(c)]
    c2 = [3 + 2 * j for j in range(c)]
    tidx = [2 + 2 * (c + p) + j for j in range(tails)]
    pipe.permute(fb1 + [0] + c2 + [1] + c1 + fb2 + tidx)
    pipe.block(0, p, _flat(z.coact_lift @ Famb), [du, dz])
    # layout: fv_-1, fv_0, l, c2(c), z, c1(c), fb2(p), tails
    pipe.permute([2] + list(range(3, 3 + c)) + [1, 3 + c]
                 + list(range(4 + c, 4 + 2 * c))
                 + [0] + list(range(4 + 2 * c, 4 + 2 * c + p))
                 + list(range(4 + 2 * c + p, 4 + 2 * c + p + tails)))
    # layout: l, c2(c), fv_0, z, c1(c), fv_-1, fb2(p), tails
    if c:
        acted = z.action @ _flat(h.U.mul_n(c).tensor(_idd(dz, f)))
        pipe.block(1, c + 2,
                   _flat(z.Z.mul @ _flat(acted.tensor(_idd(dz, f)))), [dz])
    else:
        pipe.block(1, 2, z.Z.mul, [dz])
    # layout: l, z', c1(c), fv_-1, fb2(p), tails
    pipe.block(2 + c, p + 1, h.U.mul_n(p + 1), [du])
    return _m_sandwich(h, msayd, pipe.map, k, k - p + 1)


def _yd_bullet_zero(h, l, z, msayd, Famb, p, k):
    """f bullet_0 on the free level, then descended."""
    f = h.field
    du = h.U.space.dim
    dl = l.space.dim
    dz = z.Z.space.dim
    c = k - p + 1
    trans = translation_lift(h)
    pipe = _Pipe([dl, dz] + [du] * k, f)
    for j in range(k):
        pipe.block(2 + 2 * j, 1, trans, [du, du])
    for j in range(c):
        pipe.block(2 + 3 * j, 1, h.delta_lift, [du, du])
    # layout: l, z, (u^j_+1, u^j_+2, u^j_-) j <= c, (u^j_+, u^j_-) j > c
    pipe.block(0, 1, l.coact_lift, [du, dl])
    pipe.block(2, 1, z.coact_lift, [du, dz])
    # layout: l_-1, l_0, z_-1, z_0, blocks shifted by 4
    p1 = [4 + 3 * j for j in range(c)]
    p2 = [5 + 3 * j for j in range(c)]
    mn = [6 + 3 * j for j in range(c)]
    rest_plus = [4 + 3 * c + 2 * j for j in range(k - c)]
    rest_minus = [5 + 3 * c + 2 * j for j in range(k - c)]
    down = list(reversed(rest_minus)) + list(reversed(mn)) + [2, 0]
    pipe.permute(rest_plus + down + [1] + p2 + [3] + p1)
    # layout: u^j_+ (j > c), u^k_- .. u^1_-, z_-1, l_-1, l_0, p2(c), z_0,
    # p1(c)
    pipe.block(len(rest_plus), len(down), h.U.mul_n(len(down)), [du])
    pipe.block(0, p, Famb, [dz])
    # layout: f_val, l_0, p2(c), z_0, p1(c)
    pipe.permute([1] + list(range(2, 2 + c)) + [0, 2 + c]
                 + list(range(3 + c, 3 + 2 * c)))
    if c:
        acted = z.action @ _flat(h.U.mul_n(c).tensor(_idd(dz, f)))
        pipe.block(1, c + 2,
                   _flat(z.Z.mul @ _flat(acted.tensor(_idd(dz, f)))), [dz])
    else:
        pipe.block(1, 2, z.Z.mul, [dz])
    return _m_sandwich(h, msayd, pipe.map, k, k - p + 1)


def _yd_t(h, l, z, msayd, k):
    f = h.field
    du = h.U.space.dim
    dl = l.space.dim
    dz = z.Z.space.dim
    trans = translation_lift(h)
    pipe = _Pipe([dl, dz] + [du] * k, f)
    for j in range(k):
        pipe.block(2 + 2 * j, 1, trans, [du, du])
    pipe.block(2, 1, trans, [du, du])
    # layout: l, z, u1_++, u1_+-, u1_-, (u^j_+, u^j_-) j >= 2
    pipe.block(0, 1, l.coact_lift, [du, dl])
    pipe.block(2, 1, z.coact_lift, [du, dz])
    # layout: l_-1, l_0, z_-1, z_0, u1_++, u1_+-, u1_-, (u^j_+, u^j_-)
    plus = [7 + 2 * j for j in range(k - 1)]
    minus = [8 + 2 * j for j in range(k - 1)]
    pipe.permute([1, 4, 5, 3] + plus + list(reversed(minus)) + [6, 2, 0])
    # layout: l_0, u1_++, u1_+-, z_0, u^j_+ (j >= 2), u^k_- .. u^2_-, u1_-,
    # z_-1, l_-1
    pipe.block(0, 2, l.action, [dl])
    pipe.block(1, 2, z.action, [dz])
    pipe.block(2 + (k - 1), k + 2, h.U.mul_n(k + 2), [du])
    return _m_sandwich(h, msayd, pipe.map, k, k)


def build_yd_comp_module(h, l, z, od, N):
    """The comp module of chains with coefficients in L (x) Z over the
    operad of a braided commutative Yetter-Drinfeld algebra."""
    f = h.field
    msayd = build_ayd_coefficient(h, l, z)
    spaces = [chain_coeff_tower(h, msayd, k).quotient for k in range(N + 1)]
    hom_data = od.hom_data
    bullet = {}
    t = {}
    for k in range(N + 1):
        t[k] = _yd_t(h, l, z, msayd, k) if k >= 1 \
            else _idd(spaces[0].dim, f)
    for p in range(0, od.N + 1):
        basis = hom_data[p][1]
        dop = od.spaces[p].dim
        for k in range(N + 1):
            if k - p + 1 < 0 or k - p + 1 > N:
                continue
            for i in range(0, k + 2 - p):
                if i == 0 and p == 0:
                    continue  # outside the stated index ranges
                cols = []
                width = spaces[k].dim
                for Famb in basis:
                    if i == 0:
                        mm = _yd_bullet_zero(h, l, z, msayd, Famb, p, k)
                    else:
                        mm = _yd_bullet_pos(h, l, z, msayd, Famb, p, k, i)
                    for jcol in range(width):
                        cols.append(list(mm.column(jcol)))
                bullet[(p, k, i)] = LinMap.from_columns(
                    Space(dop * width), spaces[k - p + 1], f, cols)
    cm = CompModuleData(od, spaces, bullet, t, f, "%s,LZ" % h.label)
    cm.msayd = msayd
    return cm


# -- induced measurings from Yetter-Drinfeld data -------------------------

def check_ayd_morphism(l_src, l_dst, hmat):
    rep = Report("ayd morphism")
    f = hmat.field
    du = l_src.h.U.space.dim
    rep.check_map_equal("action_intertwines",
                        hmat @ l_src.action,
                        l_dst.action @ _flat(hmat.tensor(_idd(du, f))))
    rep.check_map_equal("coaction_intertwines",
                        _flat(_idd(du, f).tensor(hmat)) @ l_src.coact_lift,
                        l_dst.coact_lift @ hmat)
    return rep


def induce_from_yd(ym, l_src, l_dst, hmat, od_src, od_dst, cm_src, cm_dst,
                   N):
    """The operad measuring f -> psi(x) . f and the comodule measuring
    (h, psi) on coefficient chains, from an algebra measuring and a module
    morphism.  Raises CertificateFailure when hmat does not intertwine the
    module and comodule structures."""
    f = ym.C.field
    rep = check_ayd_morphism(l_src, l_dst, hmat)
    if not rep.ok:
        raise CertificateFailure(rep.failures())
    h = od_src.h
    dc = ym.C.space.dim
    Psi = {}
    for n in range(N + 1):
        basis_src = od_src.hom_data[n][1]
        cols = []
        for c in range(dc):
            px = ym.psi_of(ym.C.space.basis_vector(c, f))
            for Famb in basis_src:
                coords = _hom_coords(h, od_dst.z, od_dst.hom_data, n,
                                     _flat(px @ Famb))
                cols.append(list(coords))
        Psi[n] = LinMap.from_columns(Space(dc * od_src.spaces[n].dim),
                                     od_dst.spaces[n], f, cols)
    om = OperadMeasuringData(ym.C, od_src, od_dst, Psi, "yd")
    D = ComoduleData(ym.C, ym.C.space, ym.C.comul, "left", "D=C")
    Omega = {}
    du = h.U.space.dim
    msrc = cm_src.msayd
    mdst = cm_dst.msayd
    for k in range(N + 1):
        cols = []
        for c in range(dc):
            px = ym.psi_of(ym.C.space.basis_vector(c, f))
            free = _flat(_chain([hmat, px, _idd(du ** k, f)], f))
            sand = _flat(_chain([mdst.presentation.projection,
                                 _idd(du ** k, f)], f)
                         @ (free @ _chain([msrc.presentation.section,
                                           _idd(du ** k, f)], f)))
            mm = descend(sand, chain_coeff_tower(h, msrc, k),
                         chain_coeff_tower(h, mdst, k))
            for j in range(mm.dom.dim):
                cols.append(list(mm.column(j)))
        Omega[k] = LinMap.from_columns(
            Space(dc * cm_src.spaces[k].dim), cm_dst.spaces[k], f, cols)
    ccm = CompComoduleMeasuringData(om, D, cm_src, cm_dst, Omega, "yd")
    return om, ccm


# -- stock examples -------------------------------------------------------

def one_dimensional_operad(field, N):
    """O(n) = k with every composition the product of scalars."""
    f = field
    spaces = [Space(1, "O%d" % n) for n in range(N + 1)]
    comp = {}
    for p in range(1, N + 1):
        for q in range(0, N + 1):
            if p + q - 1 > N:
                continue
            for i in range(1, p + 1):
                comp[(p, q, i)] = LinMap(Space(1), Space(1), f,
                                         {(0, 0): f.one})
    return OperadData(spaces, comp, (f.one,), (f.one,), (f.one,), f, "pt")


def one_dimensional_comp_module(od, N):
    f = od.field
    spaces = [Space(1, "L%d" % n) for n in range(N + 1)]
    bullet = {}
    for p in range(0, od.N + 1):
        for n in range(N + 1):
            if n - p + 1 < 0 or n - p + 1 > N:
                continue
            for i in range(0, n + 2 - p):
                if p == 0 and i == 0:
                    continue
                bullet[(p, n, i)] = LinMap(Space(od.spaces[p].dim), Space(1),
                                           f, {(0, 0): f.one})
    t = {n: _idd(1, f) for n in range(N + 1)}
    return CompModuleData(od, spaces, bullet, t, f, "pt")
