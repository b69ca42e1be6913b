"""Exact arithmetic on nondegenerate integer lattices.

A lattice is described by its Gram matrix: a square symmetric matrix of
integers recording the pairwise products of a fixed basis.  Everything in
this module is computed exactly — signatures by symmetric Gaussian
elimination over the rationals, determinants by fraction-free (Bareiss)
elimination, discriminant groups via the integer Smith normal form with
unimodular transforms tracked.  No floating point anywhere.

Conventions
-----------
* ``H`` is the hyperbolic plane ``[[0, 1], [1, 0]]``.
* ``E8_NEG`` is the negative definite even unimodular rank-8 lattice,
  i.e. minus the E8 Cartan matrix (Dynkin tree with arms 1, 2, 4 from the
  trivalent node).
* ``RANK1(k)`` is the rank-one lattice spanned by a vector of square ``k``
  (``k`` even and nonzero, so the lattice is even).
* ``K3`` is ``2*E8_NEG + 3*H``: rank 22, signature (3, 19).

The discriminant group of a nondegenerate lattice ``N`` is the finite
abelian group ``N*/N``; its order is ``|det gram|`` and its minimal number
of generators ``l(N)`` is the number of nontrivial invariant factors.  A
lattice is 2-elementary when the group is ``(Z/2)^a``; for those we also
compute the parity invariant delta: 0 when every dual coset representative
``t`` has integral square ``t·t``, else 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterator, NamedTuple, Sequence

Matrix = tuple[tuple[int, ...], ...]


class LatticeError(ValueError):
    """Malformed Gram matrix or unsupported lattice query."""


class Signature(NamedTuple):
    """Counts of positive / negative directions of a nondegenerate form."""

    t_plus: int
    t_minus: int


def _freeze(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class SmithDecomposition:
    """Integer Smith normal form ``U @ gram @ V == S`` with unimodular U, V.

    The diagonal of ``S`` is nonnegative and satisfies the divisibility
    chain ``s_i | s_{i+1}``.
    """

    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i][i] for i in range(len(self.S)))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nontrivial invariant factors (entries equal to 1 dropped)."""
        return tuple(s for s in self.diagonal if s != 1)


@dataclass(frozen=True)
class DiscriminantInfo:
    """Shape of the discriminant group, with the parity invariant.

    ``delta`` is 0 or 1 for 2-elementary lattices and ``None`` (meaning
    "undefined") otherwise; use :func:`delta_invariant` for a strict
    accessor that raises instead.
    """

    invariant_factors: tuple[int, ...]
    order: int
    l: int
    is_2_elementary: bool
    delta: int | None


@dataclass(frozen=True)
class IntLattice:
    """A nondegenerate integer lattice given by its Gram matrix.

    >>> IntLattice([[0, 1], [1, 0]]).signature()
    Signature(t_plus=1, t_minus=1)
    """

    gram: Matrix

    def __post_init__(self) -> None:
        rows = self.gram
        if not rows:
            raise LatticeError("empty Gram matrix (rank must be at least 1)")
        frozen = _freeze(rows)
        n = len(frozen)
        for row in frozen:
            if len(row) != n:
                raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if frozen[i][j] != frozen[j][i]:
                    raise LatticeError(
                        f"Gram matrix must be symmetric (entries {(i, j)} and {(j, i)} differ)"
                    )
        object.__setattr__(self, "gram", frozen)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def is_even(self) -> bool:
        """True when every basis vector has even square."""
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def rescale(self, k: int) -> "IntLattice":
        """The same module with the form multiplied by ``k`` (nonzero)."""
        if k == 0:
            raise LatticeError("rescale factor must be nonzero")
        return IntLattice(tuple(tuple(k * x for x in row) for row in self.gram))

    def determinant(self) -> int:
        """Exact determinant of the Gram matrix (fraction-free elimination)."""
        n = self.rank
        a = [list(row) for row in self.gram]
        sign = 1
        prev = 1
        for t in range(n - 1):
            if a[t][t] == 0:
                swap = next((i for i in range(t + 1, n) if a[i][t] != 0), None)
                if swap is None:
                    return 0
                a[t], a[swap] = a[swap], a[t]
                sign = -sign
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) // prev
            prev = a[t][t]
        return sign * a[n - 1][n - 1]

    def signature(self) -> Signature:
        """Exact Sylvester signature; raises on a degenerate form.

        Symmetric Gaussian elimination over the rationals.  A zero pivot
        block with a nonzero off-diagonal entry a[i][j] is repaired by the
        congruence "add row j and column j to i", which makes the new
        diagonal entry 2*a[i][j] != 0.
        """
        n = self.rank
        a = [[Fraction(x) for x in row] for row in self.gram]
        pos = neg = 0
        for t in range(n):
            piv = next((i for i in range(t, n) if a[i][i] != 0), None)
            if piv is None:
                mix = next(
                    ((i, j) for i in range(t, n) for j in range(i + 1, n) if a[i][j] != 0),
                    None,
                )
                if mix is None:
                    raise LatticeError("degenerate Gram matrix (zero block remains)")
                i, j = mix
                for k in range(n):
                    a[i][k] += a[j][k]
                for k in range(n):
                    a[k][i] += a[k][j]
                piv = i
            if piv != t:
                a[t], a[piv] = a[piv], a[t]
                for row in a:
                    row[t], row[piv] = row[piv], row[t]
            p = a[t][t]
            if p > 0:
                pos += 1
            else:
                neg += 1
            # One-sided row reduction is the full congruence on the trailing
            # block: the column correction terms cancel because a[i][t] is
            # reduced to exactly f*p.
            factors = [(i, a[i][t] / p) for i in range(t + 1, n) if a[i][t] != 0]
            for i, f in factors:
                for j in range(t, n):
                    a[i][j] -= f * a[t][j]
            for i, f in factors:
                for j in range(t, n):
                    a[j][i] = a[i][j]
        return Signature(pos, neg)

    def smith_normal_form(self) -> SmithDecomposition:
        """Smith normal form over the integers with transforms tracked."""
        n = self.rank
        a = [list(row) for row in self.gram]
        u = _identity(n)
        v = _identity(n)

        def swap_rows(i: int, j: int) -> None:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

        def swap_cols(i: int, j: int) -> None:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

        def add_row(src: int, dst: int, c: int) -> None:
            a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

        def add_col(src: int, dst: int, c: int) -> None:
            for row in a:
                row[dst] += c * row[src]
            for row in v:
                row[dst] += c * row[src]

        def negate_row(i: int) -> None:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]

        for t in range(n):
            while True:
                # Move a least-|entry| pivot of the trailing block to (t, t).
                pivot = None
                for i in range(t, n):
                    for j in range(t, n):
                        x = a[i][j]
                        if x != 0 and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                            pivot = (i, j)
                if pivot is None:
                    break  # trailing block is zero
                if pivot[0] != t:
                    swap_rows(t, pivot[0])
                if pivot[1] != t:
                    swap_cols(t, pivot[1])
                if a[t][t] < 0:
                    negate_row(t)
                p = a[t][t]
                # Reduce column t and row t; any nonzero remainder is
                # strictly smaller than |p|, so the while loop terminates.
                dirty = False
                for i in range(t + 1, n):
                    if a[i][t] != 0:
                        add_row(t, i, -(a[i][t] // p))
                        dirty = dirty or a[i][t] != 0
                for j in range(t + 1, n):
                    if a[t][j] != 0:
                        add_col(t, j, -(a[t][j] // p))
                        dirty = dirty or a[t][j] != 0
                if dirty:
                    continue
                # Enforce the divisibility chain: drag any entry not
                # divisible by the pivot into row t and keep reducing.
                bad = next(
                    (i for i in range(t + 1, n) for j in range(t + 1, n) if a[i][j] % p != 0),
                    None,
                )
                if bad is None:
                    break
                add_row(bad, t, 1)
        return SmithDecomposition(U=_freeze(u), S=_freeze(a), V=_freeze(v))

    def discriminant(self) -> DiscriminantInfo:
        """Invariant factors, group order, l, 2-elementarity and delta.

        Requires an even nondegenerate lattice.  delta is computed only for
        2-elementary discriminant groups, by enumerating all ``2^l`` dual
        coset representatives ``t`` (columns of V over the factor-2 slots,
        halved) and testing whether every ``t·t`` is an integer; it is
        ``None`` ("undefined") otherwise.
        """
        if not self.is_even():
            raise LatticeError("discriminant data is defined here for even lattices only")
        snf = self.smith_normal_form()
        diag = snf.diagonal
        if any(s == 0 for s in diag):
            raise LatticeError("degenerate Gram matrix has no discriminant group")
        factors = snf.invariant_factors
        order = prod(factors) if factors else 1
        is_2_elementary = all(f == 2 for f in factors)
        delta: int | None = None
        if is_2_elementary:
            delta = self._delta_2_elementary(snf)
        return DiscriminantInfo(
            invariant_factors=factors,
            order=order,
            l=len(factors),
            is_2_elementary=is_2_elementary,
            delta=delta,
        )

    def _delta_2_elementary(self, snf: SmithDecomposition) -> int:
        """Parity invariant for a (Z/2)^l discriminant group.

        The dual lattice is spanned over the lattice by the columns of V
        sitting over invariant factor 2, divided by 2.  For a subset sum
        ``t = w/2`` the square ``t·t`` is integral iff ``w·gram·w`` is
        divisible by 4; precomputing the pairwise products makes the
        ``2^l`` subset scan cheap.
        """
        n = self.rank
        cols = [
            tuple(snf.V[r][i] for r in range(n))
            for i in range(n)
            if snf.S[i][i] == 2
        ]
        l = len(cols)
        pair = [
            [
                sum(ci[r] * self.gram[r][s] * cj[s] for r in range(n) for s in range(n))
                for cj in cols
            ]
            for ci in cols
        ]
        for mask in range(1, 1 << l):
            members = [i for i in range(l) if mask >> i & 1]
            square = sum(pair[i][j] for i in members for j in members)
            if square % 4 != 0:
                return 1
        return 0


def delta_invariant(lattice: IntLattice) -> int:
    """Strict accessor for delta; raises unless the lattice is 2-elementary."""
    info = lattice.discriminant()
    if not info.is_2_elementary:
        raise LatticeError(
            "delta is defined only for 2-elementary discriminant groups "
            f"(invariant factors {info.invariant_factors})"
        )
    assert info.delta is not None
    return info.delta


def direct_sum(first: IntLattice, *rest: IntLattice) -> IntLattice:
    """Block-diagonal sum; rank adds, determinant multiplies, signature adds."""
    parts = (first, *rest)
    total = sum(p.rank for p in parts)
    rows: list[list[int]] = [[0] * total for _ in range(total)]
    offset = 0
    for part in parts:
        for i in range(part.rank):
            for j in range(part.rank):
                rows[offset + i][offset + j] = part.gram[i][j]
        offset += part.rank
    return IntLattice(rows)


def rescale(lattice: IntLattice, k: int) -> IntLattice:
    """Module-level alias of :meth:`IntLattice.rescale`."""
    return lattice.rescale(k)


def _tree_gram(arms: tuple[int, ...]) -> list[list[int]]:
    """Positive definite Gram of the simply-laced Dynkin tree with the
    given arm lengths hanging off one central node."""
    n = 1 + sum(arms)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
    idx = 1
    for arm in arms:
        prev = 0
        for _ in range(arm):
            g[prev][idx] = g[idx][prev] = -1
            prev = idx
            idx += 1
    return g


_HYPERBOLIC = ((0, 1), (1, 0))


def _root_lattice(name: str) -> IntLattice:
    """Positive definite root lattice by Dynkin name (A1, Dn for n>=3, E7, E8)."""
    if name == "A1":
        return IntLattice(((2,),))
    if name == "E8":
        return IntLattice(_tree_gram((1, 2, 4)))
    if name == "E7":
        return IntLattice(_tree_gram((1, 2, 3)))
    m = re.fullmatch(r"D(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 3:
            raise LatticeError(f"D{n} is not a valid root lattice here (need n >= 3)")
        return IntLattice(_tree_gram((1, 1, n - 3)))
    raise LatticeError(f"unknown root lattice {name!r}")


_RANK1_NAME = re.compile(r"RANK1\((-?\d+)\)")


def standard_lattice(name: str, k: int | None = None) -> IntLattice:
    """Named lattices used throughout: E8_NEG, H, K3, TWO_E8_TWO_H,
    L_18_0_0, L_17_1_1, and RANK1(k) for even nonzero k.

    ``RANK1`` takes the parameter either inline (``"RANK1(2)"``) or via
    ``k``.
    """
    m = _RANK1_NAME.fullmatch(name)
    if m:
        name, k = "RANK1", int(m.group(1))
    if name == "RANK1":
        if k is None:
            raise LatticeError("RANK1 requires a square k")
        if k == 0 or k % 2 != 0:
            raise LatticeError(f"RANK1 square must be even and nonzero, got {k}")
        return IntLattice(((k,),))
    if k is not None:
        raise LatticeError(f"{name} takes no parameter")
    e8_neg = _root_lattice("E8").rescale(-1)
    h = IntLattice(_HYPERBOLIC)
    if name == "E8_NEG":
        return e8_neg
    if name == "H":
        return h
    if name == "K3":
        return direct_sum(e8_neg, e8_neg, h, h, h)
    if name == "TWO_E8_TWO_H":
        return direct_sum(e8_neg, e8_neg, h, h)
    if name == "L_18_0_0":
        return direct_sum(e8_neg, e8_neg, h)
    if name == "L_17_1_1":
        return direct_sum(e8_neg, e8_neg, IntLattice(((2,),)))
    raise LatticeError(f"unknown standard lattice {name!r}")


_EXPR_ROOT = re.compile(r"(?:(\d+)\*)?(U|H|A1|E7|E8|D\d+)(?:\((-?\d+)\))?")
_EXPR_RANK1 = re.compile(r"(?:(\d+)\*)?<(-?\d+)>")


def _expr_terms(text: str) -> Iterator[IntLattice]:
    for raw in text.split("+"):
        term = raw.strip()
        if not term:
            raise LatticeError(f"empty term in lattice expression {text!r}")
        m = _EXPR_RANK1.fullmatch(term)
        if m:
            count = int(m.group(1) or 1)
            base = standard_lattice("RANK1", int(m.group(2)))
            scale = None
        else:
            m = _EXPR_ROOT.fullmatch(term)
            if not m:
                raise LatticeError(f"cannot parse lattice term {term!r}")
            count = int(m.group(1) or 1)
            name = m.group(2)
            base = IntLattice(_HYPERBOLIC) if name in ("U", "H") else _root_lattice(name)
            scale = int(m.group(3)) if m.group(3) is not None else None
        if scale is not None:
            base = base.rescale(scale)
        if count < 1:
            raise LatticeError(f"term multiplicity must be positive in {term!r}")
        for _ in range(count):
            yield base


def parse_lattice_expr(text: str) -> IntLattice:
    """Build a lattice from a direct-sum expression.

    Grammar: ``term (+ term)*`` where a term is an optional positive
    multiplicity ``n*`` followed by ``U``/``H`` (hyperbolic plane), a root
    lattice name (``A1``, ``Dn``, ``E7``, ``E8``) with optional rescale
    suffix ``(s)``, or a rank-one lattice ``<k>``.

    >>> parse_lattice_expr("U + 2*E8(-1)").signature()
    Signature(t_plus=1, t_minus=17)
    """
    terms = list(_expr_terms(text))
    return direct_sum(*terms)
