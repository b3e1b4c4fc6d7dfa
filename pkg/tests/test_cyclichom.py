import pytest

from hopfcyclic.exactlin import QQ, FieldSpec
from hopfcyclic.hopfalgebroid import gallery, group_hopf_algebroid, scalar_sayd
from hopfcyclic.measuring import (
    compose_measurings, derivation_pair_measuring, euler_derivation,
    identity_comodule_measuring, zero_primitive_comodule_measuring,
    zero_primitive_measuring,
)
from hopfcyclic.hopfalgebroid import dual_numbers
from hopfcyclic.cyclichom import (
    CharNotZero, build_cocyclic_CU, build_cocyclic_with_coeffs,
    build_cyclic_CU, build_cyclic_with_coeffs, check_chain_map,
    check_cyclic_module, check_hopf_galois_chain_map, check_mixed_complex,
    check_shuffle_measuring, check_shuffle_unital, cyclic_homology_char0,
    hochschild_homology, hopf_galois_chain_map, hopf_galois_square,
    induced_coeff_map, induced_cyclic_map, induced_on_homology, mixed_complex,
    transported_homology,
)


@pytest.fixture(scope="module")
def gal():
    return gallery()


@pytest.fixture(scope="module")
def euler(gal):
    h = gal["pair_dual"].hopf
    return derivation_pair_measuring(h, euler_derivation(dual_numbers(QQ)))


def test_cocyclic_CU_axioms(gal):
    for name in ("trivial", "group_c2", "pair_dual"):
        cm = build_cocyclic_CU(gal[name].hopf, 3)
        rep = check_cyclic_module(cm)
        assert rep.ok, (name, rep.failures())


def test_cyclic_CU_axioms(gal):
    for name in ("trivial", "group_c3", "pair_dual"):
        cm = build_cyclic_CU(gal[name].hopf, 3)
        rep = check_cyclic_module(cm)
        assert rep.ok, (name, rep.failures())


def test_cyclic_coeff_axioms(gal):
    for name in ("group_c2", "pair_dual"):
        e = gal[name]
        cm = build_cyclic_with_coeffs(e.hopf, e.sayd, 3)
        rep = check_cyclic_module(cm)
        assert rep.ok, (name, rep.failures())


def test_cocyclic_coeff_axioms(gal):
    for name in ("group_c2", "pair_dual"):
        e = gal[name]
        cm = build_cocyclic_with_coeffs(e.hopf, e.sayd, 3)
        rep = check_cyclic_module(cm)
        assert rep.ok, (name, rep.failures())


def test_point_module_homology(gal):
    h = gal["trivial"].hopf
    cm = build_cyclic_CU(h, 4)
    hh = hochschild_homology(cm)
    assert hh.dims == [1, 0, 0, 0]
    hc = cyclic_homology_char0(cm)
    assert hc.dims == [1, 0, 1, 0]


def test_point_cocyclic_homology(gal):
    h = gal["trivial"].hopf
    cm = build_cocyclic_CU(h, 4)
    assert hochschild_homology(cm).dims == [1, 0, 0, 0]
    assert cyclic_homology_char0(cm).dims == [1, 0, 1, 0]


def test_normalized_matches_unnormalized(gal):
    for name in ("group_c2", "pair_dual"):
        cm = build_cyclic_CU(gal[name].hopf, 3)
        plain = hochschild_homology(cm)
        norm = hochschild_homology(cm, normalized=True)
        assert plain.dims == norm.dims, name


def test_char_p_cyclic_homology_raises():
    h = group_hopf_algebroid(2, FieldSpec(5))
    cm = build_cyclic_CU(h, 2)
    with pytest.raises(CharNotZero):
        cyclic_homology_char0(cm)


def test_hopf_galois_chain_map_bijective(gal):
    for name, entry in gal.items():
        rep = check_hopf_galois_chain_map(entry.hopf, 3)
        assert rep.ok, (name, rep.failures())
        rep = check_hopf_galois_chain_map(entry.hopf, 2, entry.sayd)
        assert rep.ok, (name, rep.failures())


def test_transported_homology_agrees(gal):
    h = gal["group_c2"].hopf
    cm = build_cyclic_CU(h, 3)
    xs = hopf_galois_chain_map(h, 3)
    assert transported_homology(cm, xs).dims == hochschild_homology(cm).dims


def test_induced_chain_map_certificates(euler, gal):
    f = QQ
    xv = (f.zero, f.one)
    src = build_cyclic_CU(euler.src, 3)
    dst = build_cyclic_CU(euler.dst, 3)
    maps = induced_cyclic_map(euler, xv, 3, "cyclic")
    rep = check_chain_map(src, dst, maps)
    assert rep.ok, rep.failures()
    srcc = build_cocyclic_CU(euler.src, 3)
    dstc = build_cocyclic_CU(euler.dst, 3)
    mapsc = induced_cyclic_map(euler, xv, 3, "cocyclic")
    rep = check_chain_map(srcc, dstc, mapsc)
    assert rep.ok, rep.failures()


def test_induced_coeff_chain_map(gal):
    e = gal["group_c2"]
    m = zero_primitive_measuring(e.hopf)
    cmm = zero_primitive_comodule_measuring(m, e.sayd)
    f = QQ
    yv = (f.zero, f.one)  # the primitive element of the coacting coalgebra
    src = build_cyclic_with_coeffs(e.hopf, e.sayd, 3)
    maps = induced_coeff_map(cmm, yv, 3, "cyclic")
    rep = check_chain_map(src, src, maps)
    assert rep.ok, rep.failures()


def test_hopf_galois_square_plain(euler):
    f = QQ
    for xv in ((f.one, f.zero), (f.zero, f.one)):
        rep = hopf_galois_square(euler, xv, 3)
        assert rep.ok, rep.failures()


def test_hopf_galois_square_coeff(gal):
    e = gal["group_c2"]
    m = zero_primitive_measuring(e.hopf)
    cmm = zero_primitive_comodule_measuring(m, e.sayd)
    f = QQ
    for yv in ((f.one, f.zero), (f.zero, f.one)):
        rep = hopf_galois_square(m, yv, 2, coeff_measuring=cmm)
        assert rep.ok, rep.failures()


def test_mixed_complex(gal):
    for name in ("group_c2", "pair_dual"):
        cm = build_cyclic_CU(gal[name].hopf, 3)
        rep = check_mixed_complex(mixed_complex(cm))
        assert rep.ok, (name, rep.failures())


def test_shuffle_unit(gal):
    h = gal["pair_dual"].hopf
    for p in (1, 2, 3):
        rep = check_shuffle_unital(h, p)
        assert rep.ok, (p, rep.failures())


def test_shuffle_leibniz(euler):
    f = QQ
    xv = (f.zero, f.one)
    gv = (f.one, f.zero)
    for (p, q) in ((1, 1), (1, 2), (2, 1), (2, 2)):
        for vec in (xv, gv):
            rep = check_shuffle_measuring(euler, vec, p, q)
            assert rep.ok, ((p, q, vec), rep.failures())


def test_homology_functoriality(euler):
    f = QQ
    comp = compose_measurings(euler, euler)
    src = build_cyclic_CU(euler.src, 3)
    dst = build_cyclic_CU(euler.dst, 3)
    xv = (f.zero, f.one)
    gv = (f.one, f.zero)
    # x (x) g acts as u -> g(x(u)) = x(u)
    zv = [f.zero] * 4
    zv[1 * 2 + 0] = f.one
    m1 = induced_cyclic_map(euler, xv, 3, "cyclic")
    m2 = induced_cyclic_map(euler, gv, 3, "cyclic")
    mz = induced_cyclic_map(comp, tuple(zv), 3, "cyclic")
    for n in (0, 1, 2):
        a1 = induced_on_homology(src, dst, m1, n)
        a2 = induced_on_homology(dst, dst, m2, n)
        az = induced_on_homology(src, dst, mz, n)
        assert (a2 @ a1 - az).is_zero(), n
