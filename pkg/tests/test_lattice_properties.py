"""Randomized property tests for the lattice engine.

The deterministic 500-matrix battery mirrors the acceptance suite; the
hypothesis properties below it explore the same invariants with shrinking.
"""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from g2sum.lattice_core import (
    IntLattice,
    Signature,
    delta_invariant,
    direct_sum,
    rescale,
    standard_lattice,
)

SEED = 0x67327375  # "g2su"


def det_exact(m):
    """Fraction Gaussian elimination; works for any square integer matrix."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    assert det.denominator == 1
    return int(det)


def mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


def transpose(m):
    return tuple(tuple(row[i] for row in m) for i in range(len(m)))


def random_even_gram(rng, max_rank=5, spread=4):
    """A random even symmetric Gram matrix, not necessarily nondegenerate."""
    n = rng.randint(1, max_rank)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2 * rng.randint(-spread, spread)
        for j in range(i):
            g[i][j] = g[j][i] = rng.randint(-spread, spread)
    return tuple(tuple(row) for row in g)


def random_unimodular(rng, n, steps=6):
    """Product of random elementary row operations applied to the identity."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        for col in range(n):
            m[i][col] += c * m[j][col]
    return tuple(tuple(row) for row in m)


def iter_nondegenerate_grams(count, seed=SEED):
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        gram = random_even_gram(rng)
        lat = IntLattice(gram)
        if lat.determinant() == 0:
            continue
        produced += 1
        yield rng, lat


def test_snf_battery_500():
    for rng, lat in iter_nondegenerate_grams(500):
        snf = lat.smith_normal_form()
        n = lat.rank

        assert mat_mul(mat_mul(snf.U, lat.gram), snf.V) == snf.S
        assert abs(det_exact(snf.U)) == 1
        assert abs(det_exact(snf.V)) == 1

        diag = [snf.S[i][i] for i in range(n)]
        assert all(d > 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0
        off = sum(
            abs(snf.S[i][j]) for i in range(n) for j in range(n) if i != j
        )
        assert off == 0

        product = 1
        for d in diag:
            product *= d
        assert abs(lat.determinant()) == product

        disc = lat.discriminant()
        assert disc.invariant_factors == tuple(d for d in diag if d != 1)
        assert disc.order == product

        # signature is a congruence invariant
        t = random_unimodular(rng, n)
        conjugated = IntLattice(mat_mul(mat_mul(transpose(t), lat.gram), t))
        assert conjugated.signature() == lat.signature()
        assert abs(conjugated.determinant()) == abs(lat.determinant())


def test_delta_of_named_lattices():
    assert delta_invariant(standard_lattice("L_18_0_0")) == 0
    assert delta_invariant(standard_lattice("L_17_1_1")) == 1


# --- hypothesis exploration ------------------------------------------------

even_grams = st.integers(1, 4).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-5, 5), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    ).map(
        lambda rows: tuple(
            tuple(
                2 * rows[i][i] if i == j else rows[min(i, j)][max(i, j)]
                for j in range(n)
            )
            for i in range(n)
        )
    )
)


@given(even_grams)
def test_every_symmetrized_gram_is_even(gram):
    lat = IntLattice(gram)
    assert lat.is_even()
    assert lat.gram == transpose(lat.gram)


@given(even_grams)
def test_determinant_matches_reference(gram):
    assert IntLattice(gram).determinant() == det_exact(gram)


@given(even_grams, even_grams)
@settings(max_examples=60)
def test_direct_sum_multiplicativity(g1, g2):
    a, b = IntLattice(g1), IntLattice(g2)
    total = direct_sum(a, b)
    assert total.rank == a.rank + b.rank
    assert total.determinant() == a.determinant() * b.determinant()


@given(even_grams, st.integers(-3, 3).filter(bool))
@settings(max_examples=60)
def test_rescale_determinant(gram, k):
    lat = IntLattice(gram)
    assert rescale(lat, k).determinant() == k**lat.rank * lat.determinant()


@given(even_grams)
@settings(max_examples=60)
def test_signature_counts_rank(gram):
    lat = IntLattice(gram)
    if lat.determinant() == 0:
        return
    sig = lat.signature()
    assert sig.t_plus + sig.t_minus == lat.rank
    assert rescale(lat, -1).signature() == Signature(sig.t_minus, sig.t_plus)
