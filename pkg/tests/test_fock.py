from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbivertex.fock import (
    FockVector, NakajimaLabel, S, bilinear_EE, class_pairing, classical_divisor_matrix,
    divisor_class_vector, divisor_eigenvalue, fixed_point_norm, fixed_point_vector,
    fundamental_class, gram_matrix, level_basis, nakajima_apply, nakajima_basis_vector,
    poincare_pairing,
)
from orbivertex.partitions import (
    ColoredPartition, add_border_strip, dimension, enum_partitions, from_quotient,
    partition_tuples, quotient_core, z_factor,
)
from orbivertex.ring import RFunc, rf_eq


def classes(n, with_omega=True):
    out = [("1", None), ("pt", None)]
    for i in range(1, n + 1):
        out.append(("E", i))
        if with_omega:
            out.append(("omega", i))
    return out


def const(x):
    return RFunc.const_of(Fraction(x))


def test_level_bases():
    assert level_basis(3, 0) == ((),)
    assert set(level_basis(1, 1)) == {(2,), (1, 1)}
    assert len(level_basis(1, 2)) == 5
    for n in range(3):
        for m in range(4):
            assert len(level_basis(n, m)) == sum(1 for _ in partition_tuples(m, n + 1))


def test_bilinear_examples():
    vac = FockVector.vacuum(1)
    assert bilinear_EE(1, 1, 0, vac).is_zero()
    for lam in level_basis(1, 2):
        v = FockVector.basis(1, lam)
        lhs = bilinear_EE(1, 2, 0, bilinear_EE(2, 1, 0, v)) - bilinear_EE(2, 1, 0, bilinear_EE(1, 2, 0, v))
        rhs = bilinear_EE(1, 1, 0, v) - bilinear_EE(2, 2, 0, v)
        assert lhs.equals(rhs)
        assert bilinear_EE(1, 2, 5, v).is_zero()
    with pytest.raises(ValueError):
        bilinear_EE(0, 1, 0, vac)


states = st.sampled_from([lam for lam in enum_partitions(5)])


@given(st.integers(1, 2), states, st.data())
def test_affine_relations(n, lam, data):
    k1 = n + 1
    a, b, c, d = (data.draw(st.integers(1, k1)) for _ in range(4))
    k, l = data.draw(st.integers(-2, 2)), data.draw(st.integers(-2, 2))
    e = FockVector.basis(n, lam)
    lhs = bilinear_EE(a, b, k, bilinear_EE(c, d, l, e)) - bilinear_EE(c, d, l, bilinear_EE(a, b, k, e))
    rhs = FockVector(n)
    if b == c:
        rhs = rhs + bilinear_EE(a, d, k + l, e)
    if d == a:
        rhs = rhs - bilinear_EE(c, b, k + l, e)
    if k + l == 0 and a == d and b == c:
        rhs = rhs + e.scale(k)
    assert lhs.equals(rhs)


def test_nakajima_examples():
    v = nakajima_apply(NakajimaLabel(-1, "1"), FockVector.vacuum(1))
    assert set(v.c) == {(2,), (1, 1)}
    assert {abs(c.const_value()) for c in v.c.values()} == {1}
    vac = FockVector.vacuum(2)
    comm = (nakajima_apply(NakajimaLabel(1, "pt"), nakajima_apply(NakajimaLabel(-1, "1"), vac))
            - nakajima_apply(NakajimaLabel(-1, "1"), nakajima_apply(NakajimaLabel(1, "pt"), vac)))
    assert comm.equals(vac.scale(-1))
    for k in (1, 2):
        for cl in classes(2):
            assert nakajima_apply(NakajimaLabel(k, *cl), vac).is_zero()
    with pytest.raises(ValueError):
        NakajimaLabel(0, "1")


def test_fundamental_class_normalization():
    assert z_factor((1, 1, 1)) == 6 and z_factor((2, 2, 1)) == 8
    u = fundamental_class(1, 1)
    assert u.equals(nakajima_apply(NakajimaLabel(-1, "1"), FockVector.vacuum(1)))


@pytest.mark.parametrize("n", [1, 2])
def test_heisenberg_relations(n):
    for m in range(3):
        for k in (1, 2, 3):
            for al in classes(n):
                for be in classes(n):
                    want = class_pairing(n, al, be) * (-k)
                    for lam in level_basis(n, m):
                        e = FockVector.basis(n, lam)
                        x, y = NakajimaLabel(k, *al), NakajimaLabel(-k, *be)
                        got = nakajima_apply(x, nakajima_apply(y, e)) - nakajima_apply(y, nakajima_apply(x, e))
                        assert got.equals(e.scale(want))


def test_pairing_examples():
    for m in range(1, 4):
        pt = nakajima_basis_vector((1,) * m, [("pt", None)] * m, 1)
        one = nakajima_basis_vector((1,) * m, [("1", None)] * m, 1)
        assert rf_eq(poincare_pairing(pt, one), const(Fraction(1, z_factor((1,) * m))))
    pt2 = nakajima_basis_vector((2,), [("pt", None)], 1)
    one2 = nakajima_basis_vector((2,), [("1", None)], 1)
    assert rf_eq(poincare_pairing(pt2, one2), const(Fraction(-1, 2)))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_adjointness(n):
    for m in range(2):
        for k in (1, 2):
            for cl in classes(n):
                for u in level_basis(n, m + k):
                    for v in level_basis(n, m):
                        uu, vv = FockVector.basis(n, u), FockVector.basis(n, v)
                        lhs = poincare_pairing(nakajima_apply(NakajimaLabel(k, *cl), uu), vv)
                        rhs = poincare_pairing(uu, nakajima_apply(NakajimaLabel(-k, *cl), vv)) * ((-1) ** k)
                        assert rf_eq(lhs, rhs)


def test_gram_is_symmetric():
    for n in range(3):
        for m in range(3):
            assert gram_matrix(n, m).is_symmetric()


@pytest.mark.parametrize("n", [0, 1, 2])
def test_fixed_points_are_orthogonal(n):
    for m in range(3):
        basis = level_basis(n, m)
        vecs = {lam: fixed_point_vector(lam, n) for lam in basis}
        for a in basis:
            for b in basis:
                got = poincare_pairing(vecs[a], vecs[b])
                if a == b:
                    assert rf_eq(got, fixed_point_norm(a, n))
                else:
                    assert got.is_zero() or rf_eq(got, RFunc.zero())
    for lam in level_basis(n, 1):
        assert rf_eq(fixed_point_norm(lam, n), S * S * (-(n + 1) ** 2))


def test_empty_fixed_point_is_vacuum():
    assert fixed_point_vector((), 2).equals(FockVector.vacuum(2))


def test_classical_divisor_examples():
    assert classical_divisor_matrix(("V", 0), 1, 0).is_zero()
    mat = classical_divisor_matrix(("V", 1), 1, 1)
    for lam, want in (((2,), S), ((1, 1), -S)):
        v = fixed_point_vector(lam, 1)
        assert mat.apply(v).equals(v.scale(want))
    for n in range(3):
        for m in range(3):
            for div in [("V", i) for i in range(n + 1)] + [("D", i) for i in range(1, n + 1)]:
                mat = classical_divisor_matrix(div, n, m)
                trace = sum((mat.rows[i][i] for i in range(len(mat))), RFunc.zero())
                eig = sum((divisor_eigenvalue(lam, n, div) for lam in level_basis(n, m)), RFunc.zero())
                assert rf_eq(trace, eig)


def test_divisor_classes_are_images_of_the_fundamental_class():
    for n in range(3):
        for m in range(1, 3):
            u = fundamental_class(n, m)
            for div in [("V", i) for i in range(n + 1)] + [("D", i) for i in range(1, n + 1)]:
                assert classical_divisor_matrix(div, n, m).apply(u).equals(divisor_class_vector(div, n, m))


def _changed_rows(lam, mu):
    return sum(1 for i in range(len(mu)) if mu[i] != (lam[i] if i < len(lam) else 0))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_diagonal_currents_add_signed_border_strips(n):
    k = n + 1
    for total in range(8 // k + 1):
        for t in partition_tuples(total, k):
            lam = from_quotient(t).parts
            for j in range(1, k + 1):
                got = {s: c.const_value() for s, c in bilinear_EE(j, j, -1, FockVector.basis(n, lam)).c.items()}
                want = {s.parts: (-1) ** (_changed_rows(lam, s.parts) - 1)
                        for s in add_border_strip(ColoredPartition(lam, k), j % k)}
                assert got == want


@pytest.mark.parametrize("n", [1, 2])
def test_point_creators_act_by_pieri_on_fixed_points(n):
    k = n + 1
    for m in range(3):
        for lam in level_basis(n, m):
            _, quot = quotient_core(ColoredPartition(lam, k))
            for j in range(1, k + 1):
                slot = j % k
                got = nakajima_apply(NakajimaLabel(-1, "p", j), fixed_point_vector(lam, n))
                want = FockVector(n)
                q = quot[slot]
                for i in range(len(q) + 1):
                    new = list(q) + [0]
                    new[i] += 1
                    if i and new[i] > new[i - 1]:
                        continue
                    new = tuple(x for x in new if x)
                    bigger = list(quot)
                    bigger[slot] = new
                    mu = from_quotient(tuple(bigger)).parts
                    coeff = -Fraction(dimension(new), sum(new) * dimension(q))
                    want = want + fixed_point_vector(mu, n).scale(coeff)
                assert got.equals(want)
