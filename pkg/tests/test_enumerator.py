"""Enumeration modes, gluing, and the pair-counting conventions."""

import pytest

from g2sum.building_blocks import fano_block, involution_block, quartic_blowup_block
from g2sum.catalog import JoyceCatalog
from g2sum.enumerator import (
    EMB_A,
    EMB_B,
    EMB_C,
    LARGE_RANK,
    MIRROR,
    SEQ,
    UNVERIFIED,
    compare_joyce,
    count_matched_pairs,
    distinct_betti,
    enumerate_large_rank,
    enumerate_mirror,
    enumerate_seq,
    generic_record,
    glue_betti,
)
from g2sum.lattice_core import LatticeError

MIRROR_BETTI = [(4, 35), (6, 41), (8, 47), (10, 53), (12, 59), (14, 65),
                (16, 71), (18, 77), (20, 83), (22, 89), (24, 95)]

SEQ_BETTI = {
    3: sorted(list(range(70, 109, 2)) + [114, 116, 158]),
    5: list(range(64, 93, 4)),
    7: list(range(66, 95, 4)),
    9: list(range(68, 85, 4)),
    11: list(range(70, 83, 4)),
    13: list(range(72, 85, 4)),
    15: list(range(74, 87, 4)),
    17: [76],
}

LARGE_RANK_B18 = [73, 75, 77, 81, 85, 87, 91, 97, 101, 105, 115, 157]
LARGE_RANK_B20 = [75, 77, 79, 83, 87, 89, 91, 93, 99, 103, 107, 117, 159]


def by_b2(pairs):
    out = {}
    for b2, b3 in pairs:
        out.setdefault(b2, []).append(b3)
    return {k: sorted(v) for k, v in out.items()}


# --- gluing -------------------------------------------------------------------


def test_glue_two_p3_blocks(fano):
    p3 = fano_block(next(f for f in fano.families if f.id == "P3"))
    glue = glue_betti(p3, p3)
    assert glue.betti == (0, 155)
    assert glue.rank_condition_ok
    assert glue.flags == ()


def test_glue_large_rank_with_small(nikulin):
    b18 = involution_block(nikulin.find(18, 0, 0))
    b111 = involution_block(nikulin.find(1, 1, 1))
    assert glue_betti(b18, b111).betti == (22, 93)


def test_glue_offset_shifts_b2(fano):
    p3 = fano_block(next(f for f in fano.families if f.id == "P3"))
    base = glue_betti(p3, p3, 0)
    shifted = glue_betti(p3, p3, 2)
    assert shifted.b2 == base.b2 + 2
    assert shifted.b3 == base.b3 - 2  # b2 + b3 is independent of the twist
    with pytest.raises(LatticeError, match="must be >= 0"):
        glue_betti(p3, p3, -1)


def test_glue_rank_condition_violation(nikulin):
    b18 = involution_block(nikulin.find(18, 0, 0))
    glue = glue_betti(b18, b18)
    assert glue.betti == (40, 79)
    assert not glue.rank_condition_ok
    assert UNVERIFIED in glue.flags


def test_generic_record_carries_flags(nikulin):
    b18 = involution_block(nikulin.find(18, 0, 0))
    rec = generic_record(b18, b18, 0)
    assert rec.betti == (40, 79)
    assert UNVERIFIED in rec.flags
    assert not rec.verified
    ok = generic_record(involution_block(nikulin.find(2, 0, 0)), b18, 0)
    assert ok.verified and ok.flags == ()


# --- mirror mode ----------------------------------------------------------------


def test_mirror_records(nikulin):
    records = enumerate_mirror(nikulin)
    assert len(records) == 36
    assert all(r.mode == MIRROR for r in records)
    assert all(r.b3 == 3 * r.b2 + 23 for r in records)
    assert all(r.certificate.has_cond_a for r in records)
    assert list(distinct_betti(records)) == MIRROR_BETTI


def test_mirror_every_record_verified(nikulin):
    for r in enumerate_mirror(nikulin):
        assert r.verified
        assert r.flags == ()
        assert r.simply_connected


# --- large-rank mode -------------------------------------------------------------


def test_large_rank_census(nikulin, fano):
    records = enumerate_large_rank(fano, nikulin)
    assert len(records) == 38
    assert all(r.mode == LARGE_RANK for r in records)
    pairs = distinct_betti(records)
    assert len(pairs) == 28
    for special in ((21, 76), (22, 93), (23, 78)):
        assert special in pairs
    rows = by_b2(pairs)
    assert rows[18] == LARGE_RANK_B18
    assert rows[20] == LARGE_RANK_B20
    assert sorted(rows) == [18, 20, 21, 22, 23]


def test_large_rank_requires_anchor_triples(fano, nikulin):
    from g2sum.catalog import CatalogError, NikulinCatalog

    thin = NikulinCatalog(
        triples=tuple(t for t in nikulin.triples if t.key != (18, 0, 0)),
        complete=False,
    )
    with pytest.raises(CatalogError, match=r"needs triple \(18, 0, 0\)"):
        enumerate_large_rank(fano, thin)


# --- blow-up sequence mode --------------------------------------------------------


def test_seq_census(nikulin, fano):
    records = enumerate_seq(fano, nikulin)
    assert len(records) == 142
    assert all(r.mode == SEQ for r in records)
    pairs = distinct_betti(records)
    assert len(pairs) == 57
    assert by_b2(pairs) == SEQ_BETTI


def test_seq_quartic_block_on_every_record(nikulin, fano):
    q_label = quartic_blowup_block().label
    for r in enumerate_seq(fano, nikulin):
        assert q_label in [b.label for b in r.blocks]


# --- matched-pair mode -------------------------------------------------------------


def test_emb_census_104_families(emb_records_104):
    counts = count_matched_pairs(emb_records_104)
    assert counts.unordered_with_self == len(emb_records_104) == 8094
    assert (counts.clause_a, counts.clause_b, counts.clause_c) == (5098, 2771, 225)
    assert counts.diagonal == 106
    assert counts.ordered == 16082
    assert counts.unordered_no_self == 7988
    assert len(distinct_betti(emb_records_104)) == 302


def test_emb_census_full_catalog(emb_records):
    counts = count_matched_pairs(emb_records)
    assert counts.unordered_with_self == len(emb_records) == 8211
    assert (counts.clause_a, counts.clause_b, counts.clause_c) == (5198, 2788, 225)
    assert counts.diagonal == 107
    assert counts.ordered == 16315
    assert counts.unordered_no_self == 8104
    assert len(distinct_betti(emb_records)) == 302


def test_emb_modes_partition_records(emb_records):
    modes = {r.mode for r in emb_records}
    assert modes == {EMB_A, EMB_B, EMB_C}
    counts = count_matched_pairs(emb_records)
    assert counts.clause_a == sum(1 for r in emb_records if r.mode == EMB_A)
    assert counts.clause_b == sum(1 for r in emb_records if r.mode == EMB_B)
    assert counts.clause_c == sum(1 for r in emb_records if r.mode == EMB_C)


def test_emb_diagonal_means_equal_blocks(emb_records):
    diag = [r for r in emb_records if r.blocks[0] == r.blocks[1]]
    assert len(diag) == count_matched_pairs(emb_records).diagonal


def test_emb_certificates_all_condition_a(emb_records):
    assert all(r.certificate.has_cond_a for r in emb_records)
    assert all(r.verified for r in emb_records)


def test_emb_b2_zero_row(emb_records):
    rows = by_b2(distinct_betti(emb_records))
    expected = sorted(list(range(67, 148, 2)) + list(range(151, 190, 2)) + [195, 197, 239])
    assert rows[0] == expected
    assert len(rows[0]) == 64
    assert rows[18] == [93]


def test_distinct_betti_is_sorted_and_unique(emb_records):
    pairs = distinct_betti(emb_records)
    assert list(pairs) == sorted(set(pairs))


def test_table_rows_identical_between_conventions(emb_records, emb_records_104):
    # the erratum family only adds pairs whose Betti values already occur
    assert distinct_betti(emb_records) == distinct_betti(emb_records_104)


# --- record hygiene across every mode -----------------------------------------------


def all_mode_records(nikulin, fano):
    return (
        enumerate_mirror(nikulin)
        + enumerate_large_rank(fano, nikulin)
        + enumerate_seq(fano, nikulin)
    )


def test_bounds_and_sorting_all_modes(nikulin, fano, emb_records):
    per_mode = (
        enumerate_mirror(nikulin),
        enumerate_large_rank(fano, nikulin),
        enumerate_seq(fano, nikulin),
        emb_records,
    )
    for records in per_mode:
        keyed = [(r.b2, r.b3, r.mode, r.blocks[0].label, r.blocks[1].label) for r in records]
        assert keyed == sorted(keyed)
        for r in records:
            assert 0 <= r.b2 <= 24
            assert 35 <= r.b3 <= 239


def test_parity_all_modes(nikulin, fano, emb_records):
    for r in emb_records:
        assert r.b2 % 2 == 0 and r.b3 % 2 == 1
    for r in enumerate_mirror(nikulin):
        assert r.b2 % 2 == 0 and r.b3 % 2 == 1
    for r in enumerate_seq(fano, nikulin):
        assert r.b2 % 2 == 1 and r.b3 % 2 == 0
    # large-rank pairs flip parity exactly when the quartic block joins in:
    # its d is odd, every involution/fano block has even d
    q_label = quartic_blowup_block().label
    for r in enumerate_large_rank(fano, nikulin):
        with_quartic = q_label in [b.label for b in r.blocks]
        if with_quartic:
            assert r.b2 % 2 == 1 and r.b3 % 2 == 0, r
        else:
            assert r.b2 % 2 == 0 and r.b3 % 2 == 1, r


# --- comparison set -----------------------------------------------------------------


def test_compare_joyce_none_when_absent(emb_records):
    assert compare_joyce(emb_records, None) is None


def test_compare_joyce_overlap_semantics(nikulin):
    records = enumerate_mirror(nikulin)
    joyce = JoyceCatalog(pairs=((4, 35), (6, 41), (1, 1)), complete=False)
    cmp = compare_joyce(records, joyce)
    assert cmp.overlap_count == 2
    assert cmp.new_count == 9  # 11 distinct mirror pairs minus the 2 shared
    # every mirror record has b2 + b3 = 4*b2 + 23 = 3 mod 4
    assert cmp.mod4_violations == 0


def test_compare_joyce_counts_violations_per_record(fano):
    families = {f.id: f for f in fano.families}
    p3 = fano_block(families["P3"])
    q3 = fano_block(families["Q3"])
    good = generic_record(p3, p3, 0)  # (0, 155): sum 155 = 3 mod 4
    bad = generic_record(p3, q3, 0)  # sum 145 = 1 mod 4
    assert (bad.b2 + bad.b3) % 4 == 1
    records = [good, bad, bad]
    joyce = JoyceCatalog(pairs=(good.betti,), complete=False)
    cmp = compare_joyce(records, joyce)
    assert cmp.mod4_violations == 2  # per record, not per distinct pair
    assert cmp.overlap_count == 1
    assert cmp.new_count == 1
