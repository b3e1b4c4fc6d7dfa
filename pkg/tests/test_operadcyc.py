from fractions import Fraction

import pytest

from hopfcyclic.exactlin import QQ, LinMap, Space
from hopfcyclic.hopfalgebroid import (
    SaydModuleData, group_hopf_algebroid, scalar_sayd, scalar_yd_algebra,
    trivial_hopf_algebroid,
)
from hopfcyclic.measuring import (
    YdMeasuringData, check_yd_measuring, point_coalgebra,
    primitive_pair_coalgebra,
)
from hopfcyclic.cyclichom import (
    check_cyclic_module, cyclic_homology_char0, hochschild_homology,
)
from hopfcyclic.operadcyc import (
    CertificateFailure, StabilityFailure, build_ayd_coefficient,
    build_yd_comp_module, build_yd_operad, check_comp_comodule_measuring,
    check_comp_module, check_operad, check_operad_measuring,
    comp_cyclic_module, induce_from_yd, induced_comp_map,
    one_dimensional_comp_module, one_dimensional_operad,
)


@pytest.fixture(scope="module")
def c2():
    h = group_hopf_algebroid(2, QQ)
    z = scalar_yd_algebra(h)
    od = build_yd_operad(h, z, 3)
    return h, z, od


@pytest.fixture(scope="module")
def c2_module(c2):
    h, z, od = c2
    l = scalar_sayd(h)
    return l, build_yd_comp_module(h, l, z, od, 3)


def test_one_dimensional_operad():
    od = one_dimensional_operad(QQ, 4)
    rep = check_operad(od)
    assert rep.ok, rep.failures()
    cm = one_dimensional_comp_module(od, 4)
    rep = check_comp_module(cm)
    assert rep.ok, rep.failures()


def test_one_dimensional_cyclic_module_is_point():
    od = one_dimensional_operad(QQ, 4)
    cm = one_dimensional_comp_module(od, 4)
    cyc = comp_cyclic_module(cm)
    rep = check_cyclic_module(cyc)
    assert rep.ok, rep.failures()
    assert hochschild_homology(cyc).dims == [1, 0, 0, 0]
    assert cyclic_homology_char0(cyc).dims == [1, 0, 1, 0]


def test_yd_operad_over_point():
    h = trivial_hopf_algebroid(QQ)
    od = build_yd_operad(h, scalar_yd_algebra(h), 3)
    assert [sp.dim for sp in od.spaces] == [1, 1, 1, 1]
    rep = check_operad(od)
    assert rep.ok, rep.failures()


def test_yd_operad_group(c2):
    _h, _z, od = c2
    assert [sp.dim for sp in od.spaces] == [1, 2, 4, 8]
    rep = check_operad(od)
    assert rep.ok, rep.failures()


def test_perturbed_operad_detected(c2):
    h, z, od = c2
    from hopfcyclic.operadcyc import OperadData
    comp = dict(od.comp)
    bad = LinMap(comp[(2, 2, 1)].dom, comp[(2, 2, 1)].cod, QQ,
                 dict(comp[(2, 2, 1)].entries))
    bad.entries[(0, 0)] = QQ.add(bad.entries.get((0, 0), QQ.zero), QQ.one)
    comp[(2, 2, 1)] = bad
    od2 = OperadData(od.spaces, comp, od.one, od.m, od.e, QQ, "perturbed")
    rep = check_operad(od2)
    assert not rep.ok
    fails = [r for r in rep.results if not r.passed]
    assert any(r.witness is not None for r in fails)


def test_yd_comp_module(c2, c2_module):
    _l, cm = c2_module
    assert [sp.dim for sp in cm.spaces] == [1, 2, 4, 8]
    rep = check_comp_module(cm)
    assert rep.ok, rep.failures()


def test_comp_cyclic_module_axioms(c2_module):
    _l, cm = c2_module
    cyc = comp_cyclic_module(cm)
    rep = check_cyclic_module(cyc)
    assert rep.ok, rep.failures()


def test_unstable_coefficient_rejected():
    h = group_hopf_algebroid(2, QQ)
    z = scalar_yd_algebra(h)
    # action by the sign character, coaction by the nontrivial group element
    act = LinMap(Space(2), Space(1), QQ,
                 {(0, 0): Fraction(1), (0, 1): Fraction(-1)})
    coact = LinMap(Space(1), Space(2), QQ, {(1, 0): Fraction(1)})
    bad = SaydModuleData(h, Space(1), act, coact, "sign")
    with pytest.raises(StabilityFailure):
        build_ayd_coefficient(h, bad, z)


def _identity_yd_measuring(h, z):
    C = point_coalgebra(QQ)
    psi = LinMap(Space(z.Z.space.dim), z.Z.space, QQ,
                 {(i, i): QQ.one for i in range(z.Z.space.dim)})
    return YdMeasuringData(C, z, z, psi, "id")


def test_induced_measurings_identity(c2, c2_module):
    h, z, od = c2
    l, cm = c2_module
    ym = _identity_yd_measuring(h, z)
    assert check_yd_measuring(ym).ok
    ident = LinMap.identity(l.space, QQ)
    om, ccm = induce_from_yd(ym, l, l, ident, od, od, cm, cm, 3)
    rep = check_operad_measuring(om)
    assert rep.ok, rep.failures()
    rep = check_comp_comodule_measuring(ccm)
    assert rep.ok, rep.failures()
    maps, cert = induced_comp_map(ccm, (QQ.one,))
    assert cert.ok, cert.failures()
    for n, mm in enumerate(maps):
        assert (mm - LinMap.identity(cm.spaces[n], QQ)).is_zero(), n


def test_primitive_gives_zero_map(c2, c2_module):
    h, z, od = c2
    l, cm = c2_module
    C = primitive_pair_coalgebra(QQ)
    # psi sends the grouplike to the identity and the primitive to zero
    psi = LinMap(Space(2), z.Z.space, QQ, {(0, 0): QQ.one})
    ym = YdMeasuringData(C, z, z, psi, "g,x")
    assert check_yd_measuring(ym).ok
    ident = LinMap.identity(l.space, QQ)
    om, ccm = induce_from_yd(ym, l, l, ident, od, od, cm, cm, 3)
    assert check_operad_measuring(om).ok
    assert check_comp_comodule_measuring(ccm).ok
    maps, cert = induced_comp_map(ccm, (QQ.zero, QQ.one))
    assert cert.ok, cert.failures()
    for mm in maps:
        assert mm.is_zero()


def test_broken_measuring_detected(c2, c2_module):
    h, z, od = c2
    l, cm = c2_module
    ym = _identity_yd_measuring(h, z)
    ident = LinMap.identity(l.space, QQ)
    om, _ccm = induce_from_yd(ym, l, l, ident, od, od, cm, cm, 3)
    om.Psi[2] = om.Psi[2].scaled(Fraction(2))
    rep = check_operad_measuring(om)
    assert not rep.ok


def test_bad_module_morphism_rejected(c2, c2_module):
    h, z, od = c2
    l, cm = c2_module
    # target with the sign action does not intertwine with the identity
    act = LinMap(Space(2), Space(1), QQ,
                 {(0, 0): Fraction(1), (0, 1): Fraction(-1)})
    coact = LinMap(Space(1), Space(2), QQ, {(0, 0): Fraction(1)})
    bad = SaydModuleData(h, Space(1), act, coact, "sign")
    ym = _identity_yd_measuring(h, z)
    ident = LinMap.identity(l.space, QQ)
    with pytest.raises(CertificateFailure):
        induce_from_yd(ym, l, bad, ident, od, od, cm, cm, 3)
