import random
from fractions import Fraction

import pytest

from twistlab.scalars import CyclotomicField
from twistlab.groups import make_cyclic, abelian_group, symmetric
from twistlab.algebra import (
    TensorElement, AlgebraError, algebra_invert, regular_trace,
)
from twistlab.twists import (
    TwistError, first_difference, check_twist, verify_twist, identity_twist,
    gauge_transform, r_matrix, twisted_coproduct, coassociativity_ok,
    twisted_antipode, drinfeld_element, r_u, check_triangular,
    verify_triangular, leg_span_rank, verify_minimal, GroupAlgebraMap,
)

Q = CyclotomicField()
HALF = Q.from_fraction(Fraction(1, 2))


def klein_twist():
    """J = (1/2)(1 (x) 1 + 1 (x) g + b (x) 1 - b (x) g) on Z/2 x Z/2.

    Here b = (1,0) (index 2) and g = (0,1) (index 1); identity has index 0.
    """
    H = abelian_group((2, 2))
    J = TensorElement(H, 2, Q, {
        (0, 0): HALF, (0, 1): HALF, (2, 0): HALF, (2, 1): -HALF})
    return H, J


def plain_structure(group, field):
    """Coproduct and antipode of the untwisted group algebra."""
    coproduct = lambda g: TensorElement.basis(group, (g, g), field)
    antipode = GroupAlgebraMap(group, field, [
        TensorElement.basis(group, (group.inv[g],), field)
        for g in range(group.order)])
    return coproduct, antipode


def rand_invertible(rng, group, field=Q):
    while True:
        coeffs = {}
        for _ in range(3):
            coeffs[(rng.randrange(group.order),)] = field.from_fraction(
                Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
        x = TensorElement(group, 1, field, coeffs)
        if not x:
            continue
        try:
            algebra_invert(x)
            return x
        except AlgebraError:
            continue


def test_identity_twist_and_counit_failure():
    G = make_cyclic(3)
    t = identity_twist(G, Q)
    assert t.J == TensorElement.unit(G, 2, Q)
    # 1 (x) 1 + e (x) g fails the counit identity
    bad = TensorElement(G, 2, Q, {(0, 0): Q.one(), (0, 1): Q.one()})
    report = check_twist(bad)
    assert not report.ok
    names = [n for n, _ in report.failures()]
    assert "counit left leg" in names or "counit right leg" in names
    with pytest.raises(TwistError):
        verify_twist(bad)


def test_klein_twist_is_valid():
    H, J = klein_twist()
    t = verify_twist(J)
    assert t.J * t.j_inv == TensorElement.unit(H, 2, Q)
    assert coassociativity_ok(t)
    # a non-symmetric twist: swapping legs changes it
    assert not t.is_symmetric()


def test_klein_twist_r_matrix_triangular_and_minimal():
    H, J = klein_twist()
    t = verify_twist(J)
    r = r_matrix(t)
    report = verify_triangular(H, t.coproduct_basis, r)
    assert report.ok
    # the R-matrix legs span all of k[H]
    assert leg_span_rank(H, r) == 4
    assert verify_minimal(H, r)
    # R = 1 (x) 1 spans only a line
    assert not verify_minimal(H, TensorElement.unit(H, 2, Q))


def test_klein_twist_drinfeld_element_is_identity():
    H, J = klein_twist()
    t = verify_twist(J)
    r = r_matrix(t)
    s = twisted_antipode(t)
    u = drinfeld_element(r, s, t.coproduct_basis)
    assert u == TensorElement.unit(H, 1, Q)
    # regular trace of left multiplication by u equals dim k[H]
    assert regular_trace(u) == Q.from_int(4)


def test_twisted_coproduct_on_abelian_base():
    H, J = klein_twist()
    t = verify_twist(J)
    # on an abelian group conjugation by J is trivial; check against the
    # honest product J^{-1}(g (x) g)J
    for g in range(4):
        gg = TensorElement.basis(H, (g, g), Q)
        honest = t.j_inv * gg * t.J
        assert t.coproduct_basis(g) == honest
        assert t.coproduct_basis(g) == gg
    x = TensorElement(H, 1, Q, {(1,): Q.from_int(2), (3,): Q.from_int(-1)})
    dx = twisted_coproduct(t, x)
    assert dx == TensorElement(H, 2, Q, {
        (1, 1): Q.from_int(2), (3, 3): Q.from_int(-1)})


def test_gauge_transform_properties():
    rng = random.Random(41)
    H, J = klein_twist()
    t = verify_twist(J)
    e = TensorElement.unit(H, 1, Q)
    assert gauge_transform(t, e).J == t.J
    for _ in range(5):
        x = rand_invertible(rng, H)
        y = rand_invertible(rng, H)
        tx = gauge_transform(t, x)
        txy = gauge_transform(tx, y)
        yx = y * x
        assert txy.J == gauge_transform(t, yx).J
    with pytest.raises(TwistError):
        gauge_transform(t, TensorElement(H, 1, Q, {
            (0,): Q.one(), (1,): -Q.one()}))  # counit zero


def test_gauge_of_identity_is_symmetric():
    rng = random.Random(17)
    G = make_cyclic(4)
    t = identity_twist(G, Q)
    x = rand_invertible(rng, G)
    tx = gauge_transform(t, x)
    assert tx.is_symmetric()
    # symmetric twists have trivial R-matrix
    assert r_matrix(tx) == TensorElement.unit(G, 2, Q)


def test_gauge_conjugates_r_matrix_and_preserves_minimality():
    rng = random.Random(29)
    H, J = klein_twist()
    t = verify_twist(J)
    r = r_matrix(t)
    x = rand_invertible(rng, H)
    from twistlab.algebra import hopf_counit
    x = x.scale(hopf_counit(x).inverse())
    tx = gauge_transform(t, x)
    xx = x.outer(x)
    xinv = algebra_invert(x)
    assert r_matrix(tx) == xx * r * xinv.outer(xinv)
    assert verify_minimal(H, r_matrix(tx)) == verify_minimal(H, r)


def test_nonabelian_symmetric_twist():
    rng = random.Random(7)
    G = symmetric(3)
    t0 = identity_twist(G, Q)
    x = rand_invertible(rng, G)
    t = gauge_transform(t0, x)
    assert t.is_symmetric()
    assert coassociativity_ok(t)
    # twisted coproduct genuinely differs from the group coproduct here
    assert any(t.coproduct_basis(g)
               != TensorElement.basis(G, (g, g), Q) for g in range(6))
    s = twisted_antipode(t)
    r = TensorElement.unit(G, 2, Q)
    assert verify_triangular(G, t.coproduct_basis, r).ok
    u = drinfeld_element(r, s, t.coproduct_basis)
    assert u == TensorElement.unit(G, 1, Q)


def test_r_u_structure():
    G = make_cyclic(2)
    assert r_u(G, Q, 0) == TensorElement.unit(G, 2, Q)
    ru = r_u(G, Q, 1)
    assert ru == TensorElement(G, 2, Q, {
        (0, 0): HALF, (0, 1): HALF, (1, 0): HALF, (1, 1): -HALF})
    assert ru.swap() * ru == TensorElement.unit(G, 2, Q)
    assert ru * ru == TensorElement.unit(G, 2, Q)
    coproduct, antipode = plain_structure(G, Q)
    assert verify_triangular(G, coproduct, ru).ok
    # drinfeld element of (k[Z/2], R_u) is the generator
    u = drinfeld_element(ru, antipode, coproduct)
    assert u == TensorElement.basis(G, (1,), Q)
    assert regular_trace(u) == Q.zero()


def test_r_u_rejects_bad_elements():
    G = make_cyclic(4)
    with pytest.raises(TwistError):
        r_u(G, Q, 1)  # order 4
    S3 = symmetric(3)
    transposition = next(g for g in range(6) if S3.element_order(g) == 2)
    with pytest.raises(TwistError):
        r_u(S3, Q, transposition)  # involution but not central


def test_triangular_failure_cases():
    G = make_cyclic(2)
    coproduct, antipode = plain_structure(G, Q)
    bad = TensorElement.basis(G, (0, 1), Q)
    report = check_triangular(G, coproduct, bad)
    assert not report.ok
    failed = [n for n, _ in report.failures()]
    assert any("hexagon" in n for n in failed)
    with pytest.raises(TwistError):
        verify_triangular(G, coproduct, bad)
    assert "FAIL" in report.summary()


def test_first_difference_reports_witness():
    G = make_cyclic(2)
    a = TensorElement.unit(G, 2, Q)
    b = TensorElement(G, 2, Q, {(0, 0): Q.one(), (1, 1): Q.one()})
    key, va, vb = first_difference(a, b)
    assert key == (1, 1)
    assert va == Q.zero() and vb == Q.one()
    assert first_difference(a, a) is None
