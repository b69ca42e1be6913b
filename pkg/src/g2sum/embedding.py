"""Primitive-embedding sufficiency tests and matching certificates.

The numeric criterion is the classical one for primitively embedding an
even nondegenerate lattice ``N`` into an even unimodular indefinite
lattice ``E``: the signature of ``N`` must fit componentwise into that of
``E`` and ``l(N) + rk N < rk E`` must hold, where ``l(N)`` is the minimal
number of generators of the discriminant group.  When in addition
``l(N) + rk N < rk E - 2`` the embedding is unique up to isometry.  The
criterion is *sufficient only*: INCONCLUSIVE never proves non-existence.

On top of the numeric route there is a small registry of special-case
rules for block pairs that are known to embed even though the inequality
fails (mirror pairs of invariant lattices; the two rank-17/18 lattices
paired with any rank-one lattice).  The registry is data, not a branch
ladder, so further cases can be appended.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from itertools import product
from typing import Callable, Final, Iterable, Sequence, TYPE_CHECKING

from .lattice_core import IntLattice, LatticeError, Signature, standard_lattice

if TYPE_CHECKING:  # pragma: no cover - import cycle guard for type hints only
    from .building_blocks import BuildingBlock

log = logging.getLogger(__name__)

SUFFICIENT: Final = "SUFFICIENT"
SUFFICIENT_UNIQUE: Final = "SUFFICIENT_UNIQUE"
INCONCLUSIVE: Final = "INCONCLUSIVE"

COND_A: Final = "COND_A"
COND_B: Final = "COND_B"
BOTH: Final = "BOTH"
NONE: Final = "NONE"

NOT_FOUND_WITHIN_BOUND: Final = None


@dataclass(frozen=True)
class EmbeddingVerdict:
    """Outcome of a sufficiency test plus the rule that produced it."""

    status: str
    rule: str

    @property
    def sufficient(self) -> bool:
        return self.status in (SUFFICIENT, SUFFICIENT_UNIQUE)


@dataclass(frozen=True)
class MatchCertificate:
    """Which matching conditions a block pair is known to satisfy.

    ``condition`` is COND_A, COND_B, BOTH or NONE.  ``verdict_a`` explains
    the condition-A decision (numeric or special rule); ``rank_bound_b``
    records the max-rank <= 10 check.
    """

    condition: str
    verdict_a: EmbeddingVerdict
    rank_bound_b: bool

    @property
    def has_cond_a(self) -> bool:
        return self.condition in (COND_A, BOTH)

    @property
    def has_cond_b(self) -> bool:
        return self.condition in (COND_B, BOTH)


def nikulin_sufficient(
    sig_n: Signature, rk_n: int, l_n: int, sig_e: Signature, rk_e: int
) -> EmbeddingVerdict:
    """Numeric sufficiency test for a primitive embedding of N into E."""
    if rk_n < 1:
        raise LatticeError("embedded lattice must have positive rank")
    if l_n > rk_n:
        raise LatticeError(f"l(N) = {l_n} cannot exceed rk N = {rk_n}")
    fits = (
        sig_n.t_plus <= sig_e.t_plus
        and sig_n.t_minus <= sig_e.t_minus
        and l_n + rk_n < rk_e
    )
    if not fits:
        return EmbeddingVerdict(INCONCLUSIVE, "numeric")
    if l_n + rk_n < rk_e - 2:
        return EmbeddingVerdict(SUFFICIENT_UNIQUE, "numeric")
    return EmbeddingVerdict(SUFFICIENT, "numeric")


_AMBIENT_SIG: Signature | None = None
_orientation_divergence_warned = False


def _ambient_2e8_2h() -> tuple[Signature, int]:
    """Signature and rank of 2*E8_NEG + 2*H, computed once from the Gram."""
    global _AMBIENT_SIG
    if _AMBIENT_SIG is None:
        _AMBIENT_SIG = standard_lattice("TWO_E8_TWO_H").signature()
    return _AMBIENT_SIG, sum(_AMBIENT_SIG)


def embeds_in_2e8_2h(parts: Iterable[tuple[int, int, Signature]]) -> EmbeddingVerdict:
    """Numeric sufficiency for embedding a direct sum into 2*E8_NEG + 2*H.

    ``parts`` lists ``(rank, l_bound, signature)`` per summand; ranks,
    l-values and signatures are additive over a direct sum.  The signature
    gate is taken from the ambient Gram matrix itself (t+ <= 2,
    t- <= 18); if the transposed gate would change the outcome, a warning
    is logged (once per process, then at debug level).
    """
    rk_total = 0
    l_total = 0
    plus = minus = 0
    for rk, l, sig in parts:
        rk_total += rk
        l_total += l
        plus += sig.t_plus
        minus += sig.t_minus
    sig_n = Signature(plus, minus)
    sig_e, rk_e = _ambient_2e8_2h()
    verdict = nikulin_sufficient(sig_n, rk_total, l_total, sig_e, rk_e)
    _warn_if_orientation_sensitive(sig_n, rk_total, l_total, sig_e, rk_e, verdict)
    return verdict


def _warn_if_orientation_sensitive(
    sig_n: Signature,
    rk_n: int,
    l_n: int,
    sig_e: Signature,
    rk_e: int,
    verdict: EmbeddingVerdict,
) -> None:
    global _orientation_divergence_warned
    swapped = nikulin_sufficient(sig_n, rk_n, l_n, Signature(sig_e.t_minus, sig_e.t_plus), rk_e)
    if swapped.status == verdict.status:
        return
    message = (
        "signature gate orientation matters for N with signature %s: "
        "gate %s gives %s, transposed gate gives %s; trusting the Gram-derived gate"
    )
    args = (tuple(sig_n), tuple(sig_e), verdict.status, swapped.status)
    if _orientation_divergence_warned:
        log.debug(message, *args)
    else:
        log.warning(message, *args)
        _orientation_divergence_warned = True


def _is_fixed_point_free_type(block: "BuildingBlock") -> bool:
    t = block.triple
    return t is not None and (t.r, t.a, t.delta) == (10, 10, 0)


def _mirror_pair_rule(b1: "BuildingBlock", b2: "BuildingBlock") -> str | None:
    """Mirror pairs of invariant lattices embed with hyperbolic complements.

    Fires for two non-symplectic blocks with triples (r, a, d) and
    (20-r, a, d), excluding r+a = 22 and the (14,6,0) class.
    """
    t1, t2 = b1.triple, b2.triple
    if t1 is None or t2 is None:
        return None
    for first, second in ((t1, t2), (t2, t1)):
        if (
            second.r == 20 - first.r
            and second.a == first.a
            and second.delta == first.delta
            and first.r + first.a != 22
            and (first.r, first.a, first.delta) != (14, 6, 0)
            and (second.r, second.a, second.delta) != (14, 6, 0)
        ):
            return "mirror-pair"
    return None


def _large_rank_rank_one_rule(b1: "BuildingBlock", b2: "BuildingBlock") -> str | None:
    """The rank-18 and rank-17 lattices 2*E8_NEG + H and 2*E8_NEG + <2>
    embed into 2*E8_NEG + H; their sum with any even rank-one lattice
    therefore embeds into the full 2*E8_NEG + 2*H."""
    for big, small in ((b1, b2), (b2, b1)):
        t = big.triple
        if t is None:
            continue
        if (t.r, t.a, t.delta) in ((18, 0, 0), (17, 1, 1)) and small.rank == 1:
            return "large-rank-rank-one"
    return None


SpecialRule = Callable[["BuildingBlock", "BuildingBlock"], "str | None"]

SPECIAL_EMBEDDING_RULES: tuple[SpecialRule, ...] = (
    _mirror_pair_rule,
    _large_rank_rank_one_rule,
)


def matching_condition(b1: "BuildingBlock", b2: "BuildingBlock") -> MatchCertificate:
    """Certificate for the two known matching conditions of a block pair.

    Condition A holds when the two polarizing lattices (signatures
    (1, r-1), l bounded per block kind) numerically embed into
    2*E8_NEG + 2*H, or when a registered special-case rule fires.
    Condition B is the rank bound max(r1, r2) <= 10.  Blocks of the
    fixed-point-free non-symplectic class (10,10,0) are rejected.
    """
    for b in (b1, b2):
        if _is_fixed_point_free_type(b):
            raise LatticeError(
                "non-symplectic type (10,10,0) admits no building block (empty fixed locus)"
            )
    verdict = embeds_in_2e8_2h(
        (b.rank, b.l_bound, Signature(1, b.rank - 1)) for b in (b1, b2)
    )
    if not verdict.sufficient:
        for rule in SPECIAL_EMBEDDING_RULES:
            fired = rule(b1, b2)
            if fired is not None:
                verdict = EmbeddingVerdict(SUFFICIENT, fired)
                break
    cond_b = max(b1.rank, b2.rank) <= 10
    if verdict.sufficient and cond_b:
        condition = BOTH
    elif verdict.sufficient:
        condition = COND_A
    elif cond_b:
        condition = COND_B
    else:
        condition = NONE
    return MatchCertificate(condition=condition, verdict_a=verdict, rank_bound_b=cond_b)


def find_isotropic_primitive(
    lattice: IntLattice, bound: int
) -> tuple[int, ...] | None:
    """First primitive isotropic vector in the coordinate box, or None.

    Scans each coordinate from +bound down to -bound in lexicographic
    nesting and returns the first nonzero primitive vector of square zero
    — i.e. the lexicographically greatest witness in the box.  Returns
    ``None`` (alias NOT_FOUND_WITHIN_BOUND) when the box holds no witness;
    definite lattices are rejected since they can never hold one.
    """
    if bound < 1:
        raise LatticeError("search bound must be a positive integer")
    sig = lattice.signature()
    if sig.t_plus == 0 or sig.t_minus == 0:
        raise LatticeError("isotropic search requires an indefinite lattice")
    gram = lattice.gram
    n = lattice.rank
    for vec in product(range(bound, -bound - 1, -1), repeat=n):
        if all(x == 0 for x in vec):
            continue
        if gcd(*vec) != 1:
            continue
        total = 0
        for i in range(n):
            xi = vec[i]
            if xi:
                row = gram[i]
                total += xi * sum(row[j] * vec[j] for j in range(n))
        if total == 0:
            return vec
    return NOT_FOUND_WITHIN_BOUND
