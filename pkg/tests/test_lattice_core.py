"""Unit tests for the exact integer lattice engine."""

import pytest

from g2sum.lattice_core import (
    IntLattice,
    LatticeError,
    Signature,
    delta_invariant,
    direct_sum,
    parse_lattice_expr,
    rescale,
    standard_lattice,
)

A2 = IntLattice(((2, 1), (1, 2)))


def mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def test_construction_rejects_bad_grams():
    with pytest.raises(LatticeError, match="square"):
        IntLattice(((2, 1), (1, 2), (0, 0)))
    with pytest.raises(LatticeError, match="symmetric"):
        IntLattice(((2, 1), (0, 2)))
    with pytest.raises(LatticeError, match="rank must be at least 1"):
        IntLattice(())


def test_gram_is_stored_immutably():
    lat = IntLattice([[2, 1], [1, 2]])
    assert lat.gram == ((2, 1), (1, 2))
    assert isinstance(lat.gram, tuple)
    assert lat.rank == 2


def test_a2_invariants():
    assert A2.determinant() == 3
    assert A2.signature() == Signature(2, 0)
    assert A2.is_even()
    disc = A2.discriminant()
    assert disc.invariant_factors == (3,)
    assert disc.order == 3
    assert disc.l == 1
    assert not disc.is_2_elementary
    assert disc.delta is None


def test_hyperbolic_plane():
    h = standard_lattice("H")
    assert h.gram == ((0, 1), (1, 0))
    assert h.determinant() == -1
    # zero diagonal exercises the congruence repair in the signature routine
    assert h.signature() == Signature(1, 1)
    assert h.discriminant().order == 1
    assert delta_invariant(h) == 0


def test_e8_negative_definite():
    e8 = standard_lattice("E8_NEG")
    assert e8.rank == 8
    assert e8.determinant() == 1
    assert e8.signature() == Signature(0, 8)
    assert e8.is_even()
    assert delta_invariant(e8) == 0


def test_k3_lattice():
    k3 = standard_lattice("K3")
    assert k3.rank == 22
    assert k3.signature() == Signature(3, 19)
    assert k3.determinant() == -1


def test_ambient_gluing_lattice():
    amb = standard_lattice("TWO_E8_TWO_H")
    assert amb.rank == 20
    assert amb.signature() == Signature(2, 18)
    assert amb.determinant() == 1


def test_named_invariant_lattices():
    l18 = standard_lattice("L_18_0_0")
    assert l18.rank == 18
    assert l18.signature() == Signature(1, 17)
    d = l18.discriminant()
    assert (d.l, d.is_2_elementary, d.delta) == (0, True, 0)

    l17 = standard_lattice("L_17_1_1")
    assert l17.rank == 17
    assert l17.signature() == Signature(1, 16)
    d = l17.discriminant()
    assert (d.l, d.is_2_elementary, d.delta) == (1, True, 1)


def test_rank_one_lattice():
    assert standard_lattice("RANK1", 6).gram == ((6,),)
    assert standard_lattice("RANK1", -2).signature() == Signature(0, 1)
    with pytest.raises(LatticeError, match="square k"):
        standard_lattice("RANK1")
    with pytest.raises(LatticeError, match="even and nonzero"):
        standard_lattice("RANK1", 0)
    with pytest.raises(LatticeError, match="no parameter"):
        standard_lattice("H", 3)
    with pytest.raises(LatticeError, match="unknown standard lattice"):
        standard_lattice("NOPE")


def test_root_lattice_determinants():
    assert parse_lattice_expr("E8").determinant() == 1
    assert parse_lattice_expr("E7").determinant() == 2
    for n in (3, 4, 6, 8, 12):
        dn = parse_lattice_expr(f"D{n}")
        assert dn.rank == n
        assert dn.determinant() == 4
        assert dn.signature() == Signature(n, 0)


def test_smith_normal_form_a2():
    snf = A2.smith_normal_form()
    assert mat_mul(mat_mul(snf.U, A2.gram), snf.V) == snf.S
    assert snf.S == ((1, 0), (0, 3))


def test_smith_normal_form_twisted_plane():
    u2 = rescale(standard_lattice("H"), 2)
    snf = u2.smith_normal_form()
    assert [snf.S[i][i] for i in range(2)] == [2, 2]
    d = u2.discriminant()
    assert d.invariant_factors == (2, 2)
    assert d.is_2_elementary
    assert d.delta == 0  # the (2,2,0) class


def test_smith_handles_singular_matrices():
    snf = IntLattice(((2, 2), (2, 2))).smith_normal_form()
    diag = [snf.S[i][i] for i in range(2)]
    assert diag == [2, 0]


def test_degenerate_gram_errors():
    degenerate = IntLattice(((2, 2), (2, 2)))
    assert degenerate.determinant() == 0
    with pytest.raises(LatticeError, match="degenerate"):
        degenerate.signature()
    with pytest.raises(LatticeError, match="degenerate"):
        degenerate.discriminant()


def test_delta_needs_2_elementary():
    with pytest.raises(LatticeError, match="2-elementary"):
        delta_invariant(A2)


def test_odd_gram_not_even():
    assert not IntLattice(((1,),)).is_even()


def test_rescale():
    assert rescale(standard_lattice("H"), 2).gram == ((0, 2), (2, 0))
    assert rescale(standard_lattice("E8_NEG"), -1).signature() == Signature(8, 0)
    assert rescale(A2, 3).determinant() == 3**2 * 3
    with pytest.raises(LatticeError, match="nonzero"):
        rescale(A2, 0)


def test_direct_sum():
    total = direct_sum(
        standard_lattice("H"), standard_lattice("E8_NEG"), standard_lattice("RANK1", 2)
    )
    assert total.rank == 11
    assert total.signature() == Signature(2, 9)
    assert total.determinant() == -1 * 1 * 2
    # off-diagonal blocks vanish
    assert total.gram[0][5] == 0 and total.gram[10][3] == 0


def test_parse_lattice_expr():
    l18 = parse_lattice_expr("U + 2*E8(-1)")
    assert l18.rank == 18
    assert l18.signature() == Signature(1, 17)
    assert parse_lattice_expr("U(2)").gram == ((0, 2), (2, 0))
    assert parse_lattice_expr("<2> + 3*<-2>").rank == 4
    assert parse_lattice_expr("D12(-1)").determinant() == 4
    assert parse_lattice_expr("H + A1").rank == 3
    mixed = parse_lattice_expr("U + D4(-1) + 7*<-2>")
    assert mixed.rank == 13
    d = mixed.discriminant()
    assert d.is_2_elementary and d.l == 9


def test_parse_lattice_expr_errors():
    with pytest.raises(LatticeError, match="empty term"):
        parse_lattice_expr("")
    with pytest.raises(LatticeError, match="cannot parse"):
        parse_lattice_expr("U + Q7")
    with pytest.raises(LatticeError, match="multiplicity"):
        parse_lattice_expr("0*E8")
    with pytest.raises(LatticeError, match="even and nonzero"):
        parse_lattice_expr("<0>")
    with pytest.raises(LatticeError, match="n >= 3"):
        parse_lattice_expr("D2")
