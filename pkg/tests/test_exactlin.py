from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfcyclic.exactlin import (
    QQ, FieldSpec, LinMap, Space, DescentFailure, NoSolution, NotInvertible,
    descend, invert, kernel, permute_factors, quotient_by, rank, rref, solve,
    tensor_space,
)


def mk(rows, field=QQ):
    rows = [[field.of_int(x) for x in r] for r in rows]
    return LinMap.from_rows(Space(len(rows[0])), Space(len(rows)), field, rows)


def test_rref_small_rational():
    # oracle: eliminated by hand
    m = mk([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    red, pivots, rk = rref(m)
    assert rk == 2
    assert pivots == (0, 1)
    assert red.rows() == [
        [Fraction(1), Fraction(0), Fraction(1)],
        [Fraction(0), Fraction(1), Fraction(1)],
        [Fraction(0), Fraction(0), Fraction(0)],
    ]


def test_rref_f2_hand_case():
    # oracle: eliminated by hand over F2
    f2 = FieldSpec(2)
    m = mk([[1, 1, 0], [1, 0, 1], [0, 1, 1]], f2)
    red, pivots, rk = rref(m)
    assert rk == 2
    assert pivots == (0, 1)
    assert kernel(m).dom.dim == 1
    assert kernel(m).column(0) == (1, 1, 1)


def test_kernel_columns_die():
    m = mk([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    k = kernel(m)
    assert (m @ k).is_zero()
    assert rank(k) == k.dom.dim == 1


def test_solve_and_no_solution():
    m = mk([[1, 1], [0, 1], [1, 2]])
    v = solve(m, (Fraction(3), Fraction(2), Fraction(5)))
    assert m.apply(v) == (Fraction(3), Fraction(2), Fraction(5))
    with pytest.raises(NoSolution):
        solve(m, (Fraction(1), Fraction(0), Fraction(0)))


def test_invert():
    m = mk([[2, 1], [1, 1]])
    inv = invert(m)
    assert inv @ m == LinMap.identity(m.dom, QQ)
    with pytest.raises(NotInvertible):
        invert(mk([[1, 2], [2, 4]]))


def test_tensor_index_order():
    # (a (x) b)(e_j1 (x) e_j2) with left-major flattening
    a = mk([[0, 1], [1, 0]])
    b = mk([[2, 0], [0, 3]])
    t = a.tensor(b)
    # basis vector e_0 (x) e_1 -> flat index 1
    v = [Fraction(0)] * 4
    v[1] = Fraction(1)
    out = t.apply(tuple(v))
    # a(e_0) = e_1, b(e_1) = 3 e_1 -> 3 * e_{1*2+1}
    assert out == (Fraction(0), Fraction(0), Fraction(0), Fraction(3))


def test_permute_factors_roundtrip():
    perm = [2, 0, 1]
    p = permute_factors([2, 3, 2], perm, QQ)
    # source basis (i0, i1, i2) = (1, 2, 0) -> flat 1*6 + 2*2 + 0 = 10
    src = [Fraction(0)] * 12
    src[10] = Fraction(1)
    out = p.apply(tuple(src))
    # target tuple (i2, i0, i1) = (0, 1, 2) with dims (2, 2, 3): 0*6 + 1*3 + 2
    assert out.index(Fraction(1)) == 5


def test_quotient_presentation_invariants():
    amb = Space(4)
    rel = LinMap.from_columns(Space(2), amb, QQ, [
        [Fraction(1), Fraction(-1), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(1), Fraction(1)],
    ])
    pres = quotient_by(amb, rel, QQ)
    assert pres.quotient.dim == 2
    ident = LinMap.identity(pres.quotient, QQ)
    assert pres.projection @ pres.section == ident
    assert (pres.projection @ rel).is_zero()
    assert rank(pres.projection) == 2


def test_descend_failure_witness():
    amb = Space(2)
    rel = LinMap.from_columns(Space(1), amb, QQ,
                              [[Fraction(1), Fraction(-1)]])
    pres = quotient_by(amb, rel, QQ)
    ident_pres = quotient_by(amb, LinMap.zero(Space(0), amb, QQ), QQ)
    bad = mk([[1, 0], [0, 2]])
    with pytest.raises(DescentFailure) as exc:
        descend(bad, pres, ident_pres)
    assert exc.value.witness is not None
    good = mk([[1, 1], [0, 0]])
    d = descend(good, pres, ident_pres)
    assert d.dom.dim == 1 and d.cod.dim == 2


small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.integers(min_value=1, max_value=4).flatmap(
        lambda m: st.lists(
            st.lists(st.integers(min_value=-4, max_value=4),
                     min_size=m, max_size=m),
            min_size=n, max_size=n)))


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_rank_nullity(rows):
    m = mk(rows)
    assert rank(m) + kernel(m).dom.dim == m.dom.dim


@settings(max_examples=60, deadline=None)
@given(small_matrices, st.lists(st.integers(min_value=-3, max_value=3),
                                min_size=4, max_size=4))
def test_solve_consistent_systems(rows, vec):
    m = mk(rows)
    v = tuple(Fraction(x) for x in vec[:m.dom.dim])
    target = m.apply(v)
    sol = solve(m, target)
    assert m.apply(sol) == target


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_quotient_dims(rows):
    m = mk(rows)
    pres = quotient_by(m.cod, m, QQ)
    assert pres.quotient.dim == m.cod.dim - rank(m)
    assert pres.projection @ pres.section == LinMap.identity(pres.quotient, QQ)
    assert (pres.projection @ pres.relations).is_zero()


def test_fp_field_arithmetic():
    f5 = FieldSpec(5)
    assert f5.of_int(3, 2) == 4  # 3 * inv(2) = 3 * 3 = 9 = 4
    assert f5.parse("-1/2") == f5.of_int(-1, 2)
    assert f5.add(4, 3) == 2
    assert f5.inv(4) == 4
