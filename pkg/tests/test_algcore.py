from fractions import Fraction

from hopfcyclic.exactlin import QQ, LinMap, Space, tensor_space
from hopfcyclic.algcore import (
    AlgebraData, CoalgebraData, ComoduleData, ModuleActionData,
    balanced_tensor, check_algebra, check_coalgebra, check_comodule,
    check_module, check_sweedler_measuring, iterated_balanced_tensor,
    swap_map,
)
from hopfcyclic.exactlin import QuotientPresentation
from hopfcyclic.hopfalgebroid import (
    dual_numbers, group_algebra, scalar_algebra, split_pair_algebra,
)


def test_check_algebra_gallery():
    assert check_algebra(scalar_algebra(QQ)).ok
    assert check_algebra(group_algebra(3, QQ), commutative=True).ok
    assert check_algebra(dual_numbers(QQ), commutative=True).ok
    assert check_algebra(split_pair_algebra(QQ), commutative=True).ok


def test_check_algebra_detects_broken_associativity():
    a = dual_numbers(QQ)
    bad_entries = dict(a.mul.entries)
    bad_entries[(0, 2)] = Fraction(1)  # e * 1 = e + 1 breaks the right unit law
    bad = AlgebraData(a.space, LinMap(a.mul.dom, a.mul.cod, QQ, bad_entries),
                      a.unit, QQ)
    rep = check_algebra(bad)
    assert not rep.ok
    assert rep.failures()[0].witness is not None


def group_coalgebra(n):
    alg = group_algebra(n, QQ)
    comul = LinMap(alg.space, Space(n * n), QQ,
                   {(i * n + i, i): Fraction(1) for i in range(n)})
    counit = LinMap(alg.space, Space(1), QQ,
                    {(0, i): Fraction(1) for i in range(n)})
    return CoalgebraData(alg.space, comul, counit, QQ, "C%d" % n)


def primitive_coalgebra():
    """span(g, x): g grouplike, x primitive over g."""
    sp = Space(2, "C")
    comul = LinMap(sp, Space(4), QQ, {
        (0, 0): Fraction(1),            # g -> g (x) g
        (1, 1): Fraction(1),            # x -> x (x) g + g (x) x
        (2, 1): Fraction(1),
    })
    counit = LinMap(sp, Space(1), QQ, {(0, 0): Fraction(1)})
    return CoalgebraData(sp, comul, counit, QQ, "C")


def test_check_coalgebra():
    assert check_coalgebra(group_coalgebra(3), cocommutative=True).ok
    assert check_coalgebra(primitive_coalgebra(), cocommutative=True).ok


def test_iterated_comul():
    c = primitive_coalgebra()
    x = (Fraction(0), Fraction(1))
    terms = c.iterated_comul_vector(x, 3)
    # Delta^2(x) = x g g + g x g + g g x
    assert terms == {(1, 0, 0): Fraction(1), (0, 1, 0): Fraction(1),
                     (0, 0, 1): Fraction(1)}
    assert c.iterated_comul_vector(x, 0) == {}
    g = (Fraction(1), Fraction(0))
    assert c.iterated_comul_vector(g, 0) == {(): Fraction(1)}


def test_module_and_comodule_checks():
    a = group_algebra(2, QQ)
    act = LinMap(Space(2), Space(1), QQ,
                 {(0, 0): Fraction(1), (0, 1): Fraction(1)})
    m = ModuleActionData(a, Space(1), act, "left", "triv")
    assert check_module(m).ok
    bad = ModuleActionData(a, Space(1),
                           LinMap(Space(2), Space(1), QQ,
                                  {(0, 0): Fraction(1), (0, 1): Fraction(2)}),
                           "left", "bad")
    assert not check_module(bad).ok

    c = group_coalgebra(2)
    co = ComoduleData(c, Space(1),
                      LinMap(Space(1), Space(2), QQ, {(0, 0): Fraction(1)}),
                      "right", "triv")
    assert check_comodule(co).ok


def test_comodule_iterated_coaction():
    c = primitive_coalgebra()
    # D = C coacting on itself by the coproduct (right comodule)
    co = ComoduleData(c, c.space, c.comul, "right", "D")
    assert check_comodule(co).ok
    x = (Fraction(0), Fraction(1))
    terms = co.iterated_coaction_vector(x, 2)
    assert terms == {(1, 0, 0): Fraction(1), (0, 1, 0): Fraction(1),
                     (0, 0, 1): Fraction(1)}


def test_balanced_tensor_pair_square():
    """A (x)_A A over the dual numbers collapses to A."""
    a = dual_numbers(QQ)
    triv = QuotientPresentation.trivial(a.space, QQ)
    ract = LinMap(Space(4), a.space, QQ, a.mul.entries)
    lact = LinMap(Space(4), a.space, QQ, a.mul.entries)
    pres = balanced_tensor(triv, triv, ract, lact, a.space, QQ)
    assert pres.quotient.dim == 2
    assert (pres.projection @ pres.relations).is_zero()


def test_iterated_balanced_tensor_dims():
    a = dual_numbers(QQ)
    triv = QuotientPresentation.trivial(a.space, QQ)
    ract = LinMap(Space(4), a.space, QQ, a.mul.entries)
    lact = LinMap(Space(4), a.space, QQ, a.mul.entries)
    towers = iterated_balanced_tensor(triv, ract, a.space, ract, lact,
                                      a.space, QQ, 3)
    assert [t.quotient.dim for t in towers] == [2, 2, 2, 2]


def test_sweedler_measuring_derivation():
    """x acts as d/de on k[e]/(e^2), g as the identity."""
    c = primitive_coalgebra()
    a = dual_numbers(QQ)
    # psi : C (x) A -> A, x acting as the Euler derivation e d/de
    psi = LinMap(Space(4), a.space, QQ, {
        (0, 0): Fraction(1), (1, 1): Fraction(1), (1, 3): Fraction(1),
    })
    assert check_sweedler_measuring(c, a, a, psi).ok
    bad = LinMap(Space(4), a.space, QQ, {
        (0, 0): Fraction(1), (1, 1): Fraction(1), (0, 2): Fraction(1),
    })
    assert not check_sweedler_measuring(c, a, a, bad).ok


def test_swap_map():
    sw = swap_map(Space(2), Space(3), QQ)
    v = [Fraction(0)] * 6
    v[1 * 3 + 2] = Fraction(1)
    out = sw.apply(tuple(v))
    assert out.index(Fraction(1)) == 2 * 2 + 1
