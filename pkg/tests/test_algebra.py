import random
from fractions import Fraction

import pytest

from twistlab.scalars import CyclotomicField, PrimeField
from twistlab.groups import make_cyclic, abelian_group, symmetric, dihedral
from twistlab.algebra import (
    AlgebraError, TensorElement, hopf_coproduct, hopf_counit, hopf_antipode,
    regular_trace, support_subgroup, algebra_invert, left_regular_matrix,
    mat_rref, mat_rank, mat_nullspace, mat_solve, mat_inverse, mat_mul,
    mat_vec, StructureConstantAlgebra, dualize_coalgebra,
)

Q = CyclotomicField()


def rand_scalar(rng, field=Q):
    return field.from_fraction(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))


def rand_tensor(rng, group, rank, nterms, field=Q):
    coeffs = {}
    for _ in range(nterms):
        key = tuple(rng.randrange(group.order) for _ in range(rank))
        coeffs[key] = rand_scalar(rng, field)
    return TensorElement(group, rank, field, coeffs)


def test_tensor_ring_axioms():
    rng = random.Random(11)
    G = abelian_group((2, 4))
    for _ in range(25):
        a = rand_tensor(rng, G, 2, 3)
        b = rand_tensor(rng, G, 2, 3)
        c = rand_tensor(rng, G, 2, 3)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) - b == a
        unit = TensorElement.unit(G, 2, Q)
        assert a * unit == a and unit * a == a
    assert a + (-a) == TensorElement.zero(G, 2, Q)


def test_leg_operations():
    G = make_cyclic(6)
    a = TensorElement.basis(G, (2, 5), Q)
    assert a.swap() == TensorElement.basis(G, (5, 2), Q)
    assert a.embed((1, 2), 3) == TensorElement.basis(G, (2, 5, 0), Q)
    assert a.embed((2, 3), 3) == TensorElement.basis(G, (0, 2, 5), Q)
    assert a.embed((1, 3), 3) == TensorElement.basis(G, (2, 0, 5), Q)
    assert a.coproduct_leg(0) == TensorElement.basis(G, (2, 2, 5), Q)
    assert a.counit_leg(1) == TensorElement.basis(G, (2,), Q)
    assert a.antipode_leg(0) == TensorElement.basis(G, (4, 5), Q)
    # merging legs multiplies in the group
    assert a.merge_legs(0, 1) == TensorElement.basis(G, (1,), Q)
    b = TensorElement.basis(G, (3,), Q)
    assert a.outer(b) == TensorElement.basis(G, (2, 5, 3), Q)


def test_group_hopf_axioms():
    rng = random.Random(23)
    G = symmetric(3)
    unit = TensorElement.unit(G, 1, Q)
    for _ in range(20):
        x = rand_tensor(rng, G, 1, 3)
        dx = hopf_coproduct(x)
        # counit laws
        assert dx.counit_leg(0) == x
        assert dx.counit_leg(1) == x
        # antipode laws: m(S (x) I)Delta = m(I (x) S)Delta = eps * 1
        eps = hopf_counit(x)
        assert dx.antipode_leg(0).merge_legs(0, 1) == unit.scale(eps)
        assert dx.antipode_leg(1).merge_legs(0, 1) == unit.scale(eps)
        y = rand_tensor(rng, G, 1, 3)
        # Delta and S are algebra (anti)morphisms
        assert hopf_coproduct(x * y) == dx * hopf_coproduct(y)
        assert hopf_antipode(x * y) == hopf_antipode(y) * hopf_antipode(x)


def test_regular_trace_matches_dense_matrix():
    rng = random.Random(5)
    G = symmetric(3)
    for _ in range(6):
        x = rand_tensor(rng, G, 1, 4)
        full = [(g,) for g in range(G.order)]
        mat, _ = left_regular_matrix(x, full)
        tr = Q.zero()
        for i in range(G.order):
            tr = tr + mat[i][i]
        assert tr == regular_trace(x)


def test_support_subgroup_closure():
    G = make_cyclic(12)
    t = TensorElement(G, 2, Q, {(4, 0): Q.one(), (0, 6): Q.one()})
    S = support_subgroup(t)
    # generated subgroup is <4> x <6> inside Z12 x Z12
    assert len(S) == 6
    assert (0, 0) in S and (8, 6) in S


def test_invert_known_self_inverse():
    # (1/2)(1 (x) 1 + 1 (x) u + u (x) 1 - u (x) u) squares to the identity
    G = make_cyclic(2)
    half = Q.from_fraction(Fraction(1, 2))
    r = TensorElement(G, 2, Q, {
        (0, 0): half, (0, 1): half, (1, 0): half, (1, 1): -half})
    assert r * r == TensorElement.unit(G, 2, Q)
    assert algebra_invert(r) == r


def test_invert_zero_divisor_detected():
    G = make_cyclic(2)
    t = TensorElement(G, 1, Q, {(0,): Q.one(), (1,): Q.one()})
    with pytest.raises(AlgebraError):
        algebra_invert(t)
    with pytest.raises(AlgebraError):
        algebra_invert(TensorElement.zero(G, 1, Q))


def test_invert_against_dense_oracle():
    rng = random.Random(77)
    G = abelian_group((2, 3))
    unit1 = TensorElement.unit(G, 1, Q)
    checked = 0
    for _ in range(20):
        x = rand_tensor(rng, G, 1, 3)
        if not x:
            continue
        members = support_subgroup(x)
        mat, _ = left_regular_matrix(x, members)
        n = len(members)
        e_idx = members.index((G.identity,))
        rhs = [Q.zero()] * n
        rhs[e_idx] = Q.one()
        dense = mat_solve(mat, rhs, n, Q)
        if dense is None:
            with pytest.raises(AlgebraError):
                algebra_invert(x)
            continue
        inv = algebra_invert(x)
        assert x * inv == unit1
        expected = {members[i]: dense[i] for i in range(n) if dense[i]}
        assert inv.coeffs == expected
        checked += 1
    assert checked >= 5


def test_invert_nonabelian_support_against_dense_oracle():
    # S3 has trivial center (minimal polynomial route); D4 has a proper
    # center (character split route); both must agree with a dense solve
    rng = random.Random(9)
    for G in (symmetric(3), dihedral(4)):
        unit = TensorElement.unit(G, 1, Q)
        tab = G.table
        nonabelian_runs = 0
        for _ in range(25):
            x = rand_tensor(rng, G, 1, 3)
            if not x:
                continue
            members = support_subgroup(x)
            if any(tab[a[0]][b[0]] != tab[b[0]][a[0]]
                   for a in members for b in members):
                nonabelian_runs += 1
            mat, _ = left_regular_matrix(x, members)
            n = len(members)
            rhs = [Q.zero()] * n
            rhs[members.index((G.identity,))] = Q.one()
            dense = mat_solve(mat, rhs, n, Q)
            if dense is None:
                with pytest.raises(AlgebraError):
                    algebra_invert(x)
                continue
            inv = algebra_invert(x)
            assert x * inv == unit and inv * x == unit
            assert inv.coeffs == {members[i]: dense[i]
                                  for i in range(n) if dense[i]}
        assert nonabelian_runs >= 5


def test_invert_rank2_and_prime_field():
    rng = random.Random(3)
    G = make_cyclic(4)
    unit = TensorElement.unit(G, 2, Q)
    for _ in range(8):
        x = rand_tensor(rng, G, 2, 3)
        try:
            inv = algebra_invert(x)
        except AlgebraError:
            continue
        assert x * inv == unit and inv * x == unit
    F = PrimeField(7)
    t = TensorElement(G, 2, F, {(1, 0): F.from_int(2), (0, 1): F.from_int(3)})
    inv = algebra_invert(t)
    assert t * inv == TensorElement.unit(G, 2, F)


def test_matrix_routines():
    rng = random.Random(9)
    one, zero = Q.one(), Q.zero()
    a = [[one, one, zero], [zero, zero, one]]
    assert mat_rank(a, 3) == 2
    ns = mat_nullspace(a, 3, Q)
    assert len(ns) == 1
    for row in a:
        acc = zero
        for x, y in zip(row, ns[0]):
            acc = acc + x * y
        assert not acc
    for _ in range(6):
        m = [[rand_scalar(rng) for _ in range(3)] for _ in range(3)]
        if mat_rank(m, 3) < 3:
            with pytest.raises(AlgebraError):
                mat_inverse(m, Q)
            continue
        inv = mat_inverse(m, Q)
        prod = mat_mul(m, inv, Q)
        for i in range(3):
            for j in range(3):
                assert prod[i][j] == (one if i == j else zero)
        b = [rand_scalar(rng) for _ in range(3)]
        x = mat_solve(m, b, 3, Q)
        assert mat_vec(m, x, Q) == b
    # inconsistent system
    sing = [[one, one], [one, one]]
    assert mat_solve(sing, [one, zero], 2, Q) is None


def group_algebra_structure(G, field):
    one = field.one()
    m = [[{G.table[i][j]: one} for j in range(G.order)] for i in range(G.order)]
    return StructureConstantAlgebra(m, {G.identity: one}, field)


def test_structure_constants_group_algebras():
    A = group_algebra_structure(symmetric(3), Q)
    assert not A.is_commutative()
    # center of k[S3] is spanned by conjugacy class sums
    assert A.center_dimension() == 3
    # quotient by the commutator ideal is the algebra of the abelianization
    assert A.abelianization_dimension() == 2
    B = group_algebra_structure(make_cyclic(4), Q)
    assert B.is_commutative()
    assert B.center_dimension() == 4
    assert B.abelianization_dimension() == 4


def test_structure_constants_validation():
    one = Q.one()
    G = make_cyclic(3)
    m = [[{G.table[i][j]: one} for j in range(3)] for i in range(3)]
    m[1][2] = {1: one}
    with pytest.raises(AlgebraError):
        StructureConstantAlgebra(m, {0: one}, Q)
    with pytest.raises(AlgebraError):
        StructureConstantAlgebra([[{0: one}]], {}, Q)


def test_dualize_function_algebra():
    # dual of the group coalgebra Delta(g) = g (x) g is the function algebra
    G = make_cyclic(3)
    rows = [{(k, k): Q.one()} for k in range(3)]
    counit = [Q.one()] * 3
    A = dualize_coalgebra(rows, counit, Q)
    assert A.is_commutative()
    assert A.center_dimension() == 3
    e0 = {0: Q.one()}
    assert A.mult_vec(e0, e0) == e0
    assert A.mult_vec(e0, {1: Q.one()}) == {}


def test_dualize_comatrix_gives_matrix_algebra():
    # basis x_(i,j), Delta(x_(i,j)) = sum_l x_(i,l) (x) x_(l,j), eps = delta_ij
    n = 2
    idx = {(i, j): n * i + j for i in range(n) for j in range(n)}
    rows = []
    counit = []
    for i in range(n):
        for j in range(n):
            row = {}
            for l in range(n):
                row[(idx[(i, l)], idx[(l, j)])] = Q.one()
            rows.append(row)
            counit.append(Q.one() if i == j else Q.zero())
    A = dualize_coalgebra(rows, counit, Q)
    assert not A.is_commutative()
    assert A.center_dimension() == 1
    assert A.abelianization_dimension() == 0


def test_dualize_rejects_non_coassociative():
    # Delta(x0) = x0 (x) x1 fails the counit law on every side
    rows = [{(0, 1): Q.one()}, {(1, 1): Q.one()}]
    counit = [Q.one(), Q.one()]
    with pytest.raises(AlgebraError):
        dualize_coalgebra(rows, counit, Q)
