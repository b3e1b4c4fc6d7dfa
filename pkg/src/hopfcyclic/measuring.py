"""Measurings between Hopf algebroids and between their coefficients.

A measuring is a coalgebra C together with compatible actions on the total
and base algebras of the source, valued in the target.  Comodule measurings
add a C-comodule D acting between SAYD coefficients; YD measurings act
between Yetter-Drinfeld module algebras over a fixed Hopf algebroid.
"""

from .exactlin import LinMap, Space, permute_factors, tensor_space
from .algcore import (
    CoalgebraData, ComoduleData, Report, check_comodule,
    check_sweedler_measuring, curry_left,
)
from .hopfalgebroid import SaydModuleData, YdAlgebraData


class MeasuringData:
    """(C, Psi, psi): C measures the source Hopf algebroid into the target.

    Psi : C (x) U -> U',  psi : C (x) A -> A'.
    """

    def __init__(self, C, src, dst, Psi, psi, label=""):
        self.C = C
        self.src = src
        self.dst = dst
        dc = C.space.dim
        assert Psi.dom.dim == dc * src.U.space.dim
        assert Psi.cod.dim == dst.U.space.dim
        assert psi.dom.dim == dc * src.A.space.dim
        assert psi.cod.dim == dst.A.space.dim
        self.Psi = Psi
        self.psi = psi
        self.label = label

    def Psi_of(self, xvec):
        return curry_left(self.Psi, xvec, self.C.space.dim)

    def psi_of(self, xvec):
        return curry_left(self.psi, xvec, self.C.space.dim)

    def induced_free(self, xvec, n):
        """Slotwise action through the iterated coproduct of x, on the free
        tensor power.  n = 0 gives the base-algebra action."""
        f = self.C.field
        if n == 0:
            return self.psi_of(xvec)
        terms = self.C.iterated_comul_vector(tuple(xvec), n)
        slices = [self.Psi_of(self.C.space.basis_vector(i, f))
                  for i in range(self.C.space.dim)]
        out = None
        for key, coeff in terms.items():
            m = slices[key[0]]
            for idx in key[1:]:
                m = m.tensor(slices[idx])
            m = m.scaled(coeff)
            out = m if out is None else out + m
        if out is None:
            du = self.src.U.space.dim
            out = LinMap.zero(Space(du ** n), Space(self.dst.U.space.dim ** n),
                              f)
        return out


def check_hopf_algebroid_measuring(m):
    rep = Report("measuring %s" % m.label)
    f = m.C.field
    src, dst = m.src, m.dst
    idc = LinMap.identity(m.C.space, f)
    rep.extend(check_sweedler_measuring(m.C, src.U, dst.U, m.Psi), "total.")
    rep.extend(check_sweedler_measuring(m.C, src.A, dst.A, m.psi), "base.")
    rep.check_map_equal("source_compatible",
                        m.Psi @ (idc.tensor(src.s_L)), dst.s_L @ m.psi)
    rep.check_map_equal("target_compatible",
                        m.Psi @ (idc.tensor(src.t_L)), dst.t_L @ m.psi)
    rep.check_map_equal("antipode_compatible",
                        m.Psi @ (idc.tensor(src.S)), dst.S @ m.Psi)
    rep.check_map_equal("counit_compatible",
                        m.psi @ (idc.tensor(src.eps_L)), dst.eps_L @ m.Psi)
    rep.check_map_equal("right_counit_compatible",
                        m.psi @ (idc.tensor(src.eps_R)), dst.eps_R @ m.Psi)
    lt2s, lt2d = src.ltower(2), dst.ltower(2)
    rt2s, rt2d = src.rtower(2), dst.rtower(2)
    ok_cop = True
    wit_cop = None
    ok_rel = True
    wit_rel = None
    for x in range(m.C.space.dim):
        xv = m.C.space.basis_vector(x, f)
        free2 = m.induced_free(xv, 2)
        lhs = lt2d.projection @ (m.dst.delta_lift @ m.Psi_of(xv))
        rhs = lt2d.projection @ (free2 @ src.delta_lift)
        if not (lhs - rhs).is_zero():
            ok_cop = False
            d = lhs - rhs
            j = d.nonzero_column_index()
            wit_cop = (x, j, d.column(j))
        for name, s_pres, d_pres in (("L", lt2s, lt2d), ("R", rt2s, rt2d)):
            bad = d_pres.projection @ (free2 @ s_pres.relations)
            if not bad.is_zero():
                ok_rel = False
                j = bad.nonzero_column_index()
                wit_rel = (x, name, j, bad.column(j))
    rep.add("coproduct_compatible", ok_cop, wit_cop)
    rep.add("relations_preserved", ok_rel, wit_rel)
    return rep


def compose_measurings(m1, m2, label=""):
    """Measuring on C1 (x) C2 from source of m1 to target of m2:
    (x (x) x')(u) = x'(x(u))."""
    assert m1.dst is m2.src or (
        m1.dst.U.space.dim == m2.src.U.space.dim
        and m1.dst.A.space.dim == m2.src.A.space.dim)
    f = m1.C.field
    C = m1.C.tensor_with(m2.C)
    d1, d2 = m1.C.space.dim, m2.C.space.dim
    du = m1.src.U.space.dim
    da = m1.src.A.space.dim
    Psi_entries = {}
    psi_entries = {}
    for i in range(d1):
        xi = m1.C.space.basis_vector(i, f)
        p1 = m1.Psi_of(xi)
        q1 = m1.psi_of(xi)
        for j in range(d2):
            xj = m2.C.space.basis_vector(j, f)
            op = m2.Psi_of(xj) @ p1
            qq = m2.psi_of(xj) @ q1
            base = (i * d2 + j)
            for (r, c), v in op.entries.items():
                Psi_entries[(r, base * du + c)] = v
            for (r, c), v in qq.entries.items():
                psi_entries[(r, base * da + c)] = v
    Psi = LinMap(Space(d1 * d2 * du), m2.dst.U.space, f, Psi_entries)
    psi = LinMap(Space(d1 * d2 * da), m2.dst.A.space, f, psi_entries)
    return MeasuringData(C, m1.src, m2.dst, Psi, psi,
                         label or "%s;%s" % (m1.label, m2.label))


class EnvelopingMeasuring:
    def __init__(self, C, Ae_src, Ae_dst, psi_e):
        self.C = C
        self.Ae_src = Ae_src
        self.Ae_dst = Ae_dst
        self.psi_e = psi_e


def enveloping_measuring(C, src_A, dst_A, psi):
    """psi^e(x)(a (x) b) = psi(x_(1))(a) (x) psi(x_(2))(b).

    Requires C cocommutative; raises ValueError otherwise.
    """
    if not C.is_cocommutative():
        raise ValueError("enveloping measuring needs a cocommutative coalgebra")
    f = C.field
    Ae_src = src_A.tensor_with(src_A.opposite())
    Ae_dst = dst_A.tensor_with(dst_A.opposite())
    da = src_A.space.dim
    idaa = LinMap.identity(Space(da * da), f)
    dc = C.space.dim
    perm = permute_factors([dc, dc, da, da], [0, 2, 1, 3], f)
    psi_e = (psi.tensor(psi)) @ (perm @ (C.comul.tensor(idaa)))
    psi_e = LinMap(Space(dc * da * da), Space(dst_A.space.dim ** 2), f,
                   psi_e.entries)
    return EnvelopingMeasuring(C, Ae_src, Ae_dst, psi_e)


def check_enveloping_measuring(env):
    return check_sweedler_measuring(env.C, env.Ae_src, env.Ae_dst, env.psi_e)


class ComoduleMeasuringData:
    """A comodule D over the measuring coalgebra acting between SAYD
    coefficients: Omega : D (x) P -> P'."""

    def __init__(self, base, D, src_p, dst_p, Omega, label=""):
        assert isinstance(base, MeasuringData)
        assert D.coalgebra is base.C or D.coalgebra.space.dim == base.C.space.dim
        assert D.side == "right"
        self.base = base
        self.D = D
        self.src_p = src_p
        self.dst_p = dst_p
        dd = D.space.dim
        assert Omega.dom.dim == dd * src_p.space.dim
        assert Omega.cod.dim == dst_p.space.dim
        self.Omega = Omega
        self.label = label

    def Omega_of(self, yvec):
        return curry_left(self.Omega, yvec, self.D.space.dim)

    def mixed_free(self, yvec):
        """y(u (x) p) = Psi(y_(1))(u) (x) Omega(y_(0))(p), on free lifts."""
        f = self.base.C.field
        terms = self.D.iterated_coaction_vector(tuple(yvec), 1)
        out = None
        for (d_idx, c_idx), coeff in terms.items():
            m = self.base.Psi_of(
                self.base.C.space.basis_vector(c_idx, f)).tensor(
                self.Omega_of(self.D.space.basis_vector(d_idx, f)))
            m = m.scaled(coeff)
            out = m if out is None else out + m
        if out is None:
            out = LinMap.zero(
                Space(self.base.src.U.space.dim * self.src_p.space.dim),
                Space(self.base.dst.U.space.dim * self.dst_p.space.dim), f)
        return out

    def induced_coeff_free(self, yvec, n, p_position):
        """Slotwise action Omega(y_(0)) (x) Psi(y_(1)) ... (x) Psi(y_(n)) on
        the free space, with the coefficient slot first ("front") or last
        ("back")."""
        f = self.base.C.field
        terms = self.D.iterated_coaction_vector(tuple(yvec), n)
        out = None
        for key, coeff in terms.items():
            om = self.Omega_of(self.D.space.basis_vector(key[0], f))
            psis = [self.base.Psi_of(self.base.C.space.basis_vector(i, f))
                    for i in key[1:]]
            if p_position == "front":
                m = om
                for p in psis:
                    m = m.tensor(p)
            else:
                m = None
                for p in psis:
                    m = p if m is None else m.tensor(p)
                m = om if m is None else m.tensor(om)
            m = m.scaled(coeff)
            out = m if out is None else out + m
        if out is None:
            du = self.base.src.U.space.dim
            dim_in = self.src_p.space.dim * du ** n
            dim_out = self.dst_p.space.dim * self.base.dst.U.space.dim ** n
            out = LinMap.zero(Space(dim_in), Space(dim_out), f)
        return out


def check_sayd_comodule_measuring(cm):
    rep = Report("comodule measuring %s" % cm.label)
    f = cm.base.C.field
    rep.extend(check_hopf_algebroid_measuring(cm.base), "base.")
    rep.extend(check_comodule(cm.D), "comodule.")
    rep.add("coalgebra_cocommutative", cm.base.C.is_cocommutative())
    src, dst = cm.base.src, cm.base.dst
    sp, dp = cm.src_p, cm.dst_p
    dd = cm.D.space.dim
    dpp = sp.space.dim
    du = src.U.space.dim
    idd = LinMap.identity(cm.D.space, f)
    # Omega(y)(p u) = Omega(y_(0))(p) Psi(y_(1))(u)
    lhs = cm.Omega @ (idd.tensor(sp.action))
    dc = cm.base.C.space.dim
    perm = permute_factors([dd, dc, dpp, du], [0, 2, 1, 3], f)
    step = perm @ (cm.D.coaction.tensor(
        LinMap.identity(Space(dpp * du), f)))
    rhs = dp.action @ ((cm.Omega.tensor(cm.base.Psi)) @ step)
    rep.check_map_equal("module_measuring",
                        LinMap(lhs.dom, lhs.cod, f, lhs.entries),
                        LinMap(lhs.dom, lhs.cod, f, rhs.entries))
    # enveloping-action measuring: Omega(y)(p s(a) t(b)) factors through psi^e
    da = src.A.space.dim
    act_s = _action_by_images(sp, src.s_L, f)
    act_t = _action_by_images(sp, src.t_L, f)
    act_s2 = _action_by_images(dp, dst.s_L, f)
    act_t2 = _action_by_images(dp, dst.t_L, f)
    ida = LinMap.identity(src.A.space, f)
    lhs2 = cm.Omega @ (idd.tensor(act_t @ (act_s.tensor(ida))))
    step2 = (cm.D.coaction.tensor(LinMap.identity(Space(dpp * da * da), f)))
    split = (idd.tensor(cm.base.C.comul)).tensor(
        LinMap.identity(Space(dpp * da * da), f))
    perm2 = permute_factors([dd, dc, dc, dpp, da, da], [0, 3, 1, 4, 2, 5], f)
    rhs2 = act_t2 @ ((act_s2.tensor(LinMap.identity(dst.A.space, f)))
                     @ ((cm.Omega.tensor(cm.base.psi.tensor(cm.base.psi)))
                        @ (perm2 @ (split @ step2))))
    rep.check_map_equal("enveloping_measuring",
                        LinMap(lhs2.dom, lhs2.cod, f, lhs2.entries),
                        LinMap(lhs2.dom, lhs2.cod, f, rhs2.entries))
    # coaction compatibility through the mixed map
    m2s, m2d = sp.mixed2(), dp.mixed2()
    ok = True
    wit = None
    ok_rel = True
    wit_rel = None
    for y in range(dd):
        yv = cm.D.space.basis_vector(y, f)
        mf = cm.mixed_free(yv)
        lhs = m2d.projection @ (dp.coact_lift @ cm.Omega_of(yv))
        rhs = m2d.projection @ (mf @ sp.coact_lift)
        if not (lhs - rhs).is_zero():
            ok = False
            d = lhs - rhs
            j = d.nonzero_column_index()
            wit = (y, j, d.column(j))
        bad = m2d.projection @ (mf @ m2s.relations)
        if not bad.is_zero():
            ok_rel = False
            j = bad.nonzero_column_index()
            wit_rel = (y, j, bad.column(j))
    rep.add("coaction_compatible", ok, wit)
    rep.add("mixed_map_well_defined", ok_rel, wit_rel)
    return rep


def _action_by_images(p, arrow, f):
    """From arrow : A -> U build P (x) A -> P through the module action."""
    da = arrow.dom.dim
    dp = p.space.dim
    entries = {}
    for a in range(da):
        op = p.act_by(arrow.column(a))
        for (i, j), v in op.entries.items():
            entries[(i, j * da + a)] = v
    return LinMap(Space(dp * da), p.space, f, entries)


def compose_comodule_measurings(cm1, cm2, label=""):
    base = compose_measurings(cm1.base, cm2.base)
    f = base.C.field
    D1, D2 = cm1.D, cm2.D
    dd1, dd2 = D1.space.dim, D2.space.dim
    dc1, dc2 = cm1.base.C.space.dim, cm2.base.C.space.dim
    perm = permute_factors([dd1, dc1, dd2, dc2], [0, 2, 1, 3], f)
    coaction = perm @ (D1.coaction.tensor(D2.coaction))
    D = ComoduleData(base.C, tensor_space(D1.space, D2.space),
                     LinMap(Space(dd1 * dd2),
                            Space(dd1 * dd2 * dc1 * dc2), f, coaction.entries),
                     "right", label="%sx%s" % (D1.label, D2.label))
    dp = cm1.src_p.space.dim
    entries = {}
    for i in range(dd1):
        o1 = cm1.Omega_of(D1.space.basis_vector(i, f))
        for j in range(dd2):
            op = cm2.Omega_of(D2.space.basis_vector(j, f)) @ o1
            base_idx = i * dd2 + j
            for (r, c), v in op.entries.items():
                entries[(r, base_idx * dp + c)] = v
    Omega = LinMap(Space(dd1 * dd2 * dp), cm2.dst_p.space, f, entries)
    return ComoduleMeasuringData(base, D, cm1.src_p, cm2.dst_p, Omega,
                                 label or "%s;%s" % (cm1.label, cm2.label))


class YdMeasuringData:
    """C-measuring between Yetter-Drinfeld module algebras over one fixed
    Hopf algebroid: psi : C (x) Z -> Z'."""

    def __init__(self, C, src_z, dst_z, psi, label=""):
        assert isinstance(src_z, YdAlgebraData)
        assert isinstance(dst_z, YdAlgebraData)
        assert src_z.h is dst_z.h
        self.C = C
        self.src_z = src_z
        self.dst_z = dst_z
        assert psi.dom.dim == C.space.dim * src_z.Z.space.dim
        assert psi.cod.dim == dst_z.Z.space.dim
        self.psi = psi
        self.label = label

    def psi_of(self, xvec):
        return curry_left(self.psi, xvec, self.C.space.dim)


def check_yd_measuring(ym):
    rep = Report("yd measuring %s" % ym.label)
    f = ym.C.field
    h = ym.src_z.h
    rep.extend(check_sweedler_measuring(ym.C, ym.src_z.Z, ym.dst_z.Z, ym.psi),
               "algebra.")
    idc = LinMap.identity(ym.C.space, f)
    idu = LinMap.identity(h.U.space, f)
    dc, du = ym.C.space.dim, h.U.space.dim
    dz = ym.src_z.Z.space.dim
    # x(u z) = u x(z)
    lhs = ym.psi @ (idc.tensor(ym.src_z.action))
    perm = permute_factors([dc, du, dz], [1, 0, 2], f)
    rhs = ym.dst_z.action @ ((idu.tensor(ym.psi)) @ perm)
    rep.check_map_equal("equivariance",
                        LinMap(lhs.dom, lhs.cod, f, lhs.entries),
                        LinMap(lhs.dom, lhs.cod, f, rhs.entries))
    # coaction: x(z)_(-1) (x) x(z)_(0) = z_(-1) (x) x(z_(0))
    m2s, m2d = ym.src_z.mixed2(), ym.dst_z.mixed2()
    ok = True
    wit = None
    ok_rel = True
    wit_rel = None
    for x in range(dc):
        xv = ym.C.space.basis_vector(x, f)
        px = ym.psi_of(xv)
        lhs = m2d.projection @ (ym.dst_z.coact_lift @ px)
        rhs = m2d.projection @ ((idu.tensor(px)) @ ym.src_z.coact_lift)
        if not (lhs - rhs).is_zero():
            ok = False
            d = lhs - rhs
            j = d.nonzero_column_index()
            wit = (x, j, d.column(j))
        bad = m2d.projection @ ((idu.tensor(px)) @ m2s.relations)
        if not bad.is_zero():
            ok_rel = False
            j = bad.nonzero_column_index()
            wit_rel = (x, j, bad.column(j))
    rep.add("coaction_compatible", ok, wit)
    rep.add("coaction_map_well_defined", ok_rel, wit_rel)
    return rep


# -- stock coalgebras and measurings used across the test suite ----------

def point_coalgebra(field, label="k"):
    sp = Space(1, label)
    return CoalgebraData(sp, LinMap(sp, Space(1), field, {(0, 0): field.one}),
                         LinMap(sp, Space(1), field, {(0, 0): field.one}),
                         field, label)


def primitive_pair_coalgebra(field, label="C(g,x)"):
    """span(g, x): g grouplike, x primitive over g; cocommutative."""
    sp = Space(2, label)
    comul = LinMap(sp, Space(4), field, {
        (0, 0): field.one,
        (1, 1): field.one,
        (2, 1): field.one,
    })
    counit = LinMap(sp, Space(1), field, {(0, 0): field.one})
    return CoalgebraData(sp, comul, counit, field, label)


def identity_measuring(h):
    """The point coalgebra acting by the identity."""
    f = h.field
    C = point_coalgebra(f)
    Psi = LinMap(Space(h.U.space.dim), h.U.space, f,
                 LinMap.identity(h.U.space, f).entries)
    psi = LinMap(Space(h.A.space.dim), h.A.space, f,
                 LinMap.identity(h.A.space, f).entries)
    return MeasuringData(C, h, h, Psi, psi, label="id(%s)" % h.label)


def derivation_pair_measuring(h, delta, label=""):
    """(g, x)-measuring of a pair algebroid by a base derivation:
    g acts as the identity, x as delta (x) 1 + 1 (x) delta."""
    f = h.field
    C = primitive_pair_coalgebra(f)
    da = h.A.space.dim
    ida = LinMap.identity(h.A.space, f)
    xs = delta.tensor(ida) + ida.tensor(delta)
    du = h.U.space.dim
    entries = {}
    for (i, j), v in LinMap.identity(h.U.space, f).entries.items():
        entries[(i, 0 * du + j)] = v
    for (i, j), v in xs.entries.items():
        entries[(i, 1 * du + j)] = v
    Psi = LinMap(Space(2 * du), h.U.space, f, entries)
    pentries = {}
    for (i, j), v in ida.entries.items():
        pentries[(i, 0 * da + j)] = v
    for (i, j), v in delta.entries.items():
        pentries[(i, 1 * da + j)] = v
    psi = LinMap(Space(2 * da), h.A.space, f, pentries)
    return MeasuringData(C, h, h, Psi, psi,
                         label or "deriv(%s)" % h.label)


def zero_primitive_measuring(h, label=""):
    """(g, x)-measuring with x acting by zero; valid for any Hopf algebroid."""
    f = h.field
    C = primitive_pair_coalgebra(f)
    du, da = h.U.space.dim, h.A.space.dim
    entries = {(i, j): v
               for (i, j), v in LinMap.identity(h.U.space, f).entries.items()}
    Psi = LinMap(Space(2 * du), h.U.space, f,
                 {(i, 0 * du + j): v for (i, j), v in entries.items()})
    psi = LinMap(Space(2 * da), h.A.space, f,
                 {(i, 0 * da + j): v
                  for (i, j), v in LinMap.identity(h.A.space, f).entries.items()})
    return MeasuringData(C, h, h, Psi, psi, label or "prim0(%s)" % h.label)


def euler_derivation(A, nilpotent_index=1):
    """The Euler derivation on the dual numbers: 1 -> 0, e -> e."""
    f = A.field
    return LinMap(A.space, A.space, f, {(1, 1): f.one})


def self_comodule(C):
    """C as a right comodule over itself through the coproduct."""
    return ComoduleData(C, C.space, C.comul, "right", label=C.label + ".D")


def derivation_pair_comodule_measuring(m, p, label=""):
    """Comodule measuring over a (g, x) pair measuring: D = C,
    Omega(g) = id, Omega(x) = the base derivation on P = A."""
    f = m.C.field
    D = self_comodule(m.C)
    dp = p.space.dim
    delta = m.psi_of((f.zero, f.one))
    ident = m.psi_of((f.one, f.zero))
    entries = {}
    for (i, j), v in ident.entries.items():
        entries[(i, 0 * dp + j)] = v
    for (i, j), v in delta.entries.items():
        entries[(i, 1 * dp + j)] = v
    Omega = LinMap(Space(2 * dp), p.space, f, entries)
    return ComoduleMeasuringData(m, D, p, p, Omega,
                                 label or "deriv.coeff(%s)" % m.label)


def zero_primitive_comodule_measuring(m, p, label=""):
    """Comodule measuring over a (g, x) measuring with both x-slices zero."""
    f = m.C.field
    D = self_comodule(m.C)
    dp = p.space.dim
    entries = {}
    for (i, j), v in LinMap.identity(p.space, f).entries.items():
        entries[(i, 0 * dp + j)] = v
    Omega = LinMap(Space(2 * dp), p.space, f, entries)
    return ComoduleMeasuringData(m, D, p, p, Omega,
                                 label or "prim0.coeff(%s)" % m.label)


def identity_comodule_measuring(h, p, label=""):
    m = identity_measuring(h)
    f = h.field
    D = self_comodule(m.C)
    Omega = LinMap(Space(p.space.dim), p.space, f,
                   LinMap.identity(p.space, f).entries)
    return ComoduleMeasuringData(m, D, p, p, Omega,
                                 label or "id.coeff(%s)" % h.label)
