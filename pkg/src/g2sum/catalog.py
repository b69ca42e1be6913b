"""Catalog ingestion and validation.

Three CSV catalogs drive the enumerations:

* ``nikulin.csv`` — the classified invariant-lattice triples (r, a, delta)
  of non-symplectic involutions, one row each, with a model-lattice
  expression in the ``source`` column.  Pragma ``#complete`` asserts the
  full 75-row classification is present.
* ``fano.csv`` — deformation families of Fano threefolds with the three
  invariants (b2, b3, -K^3).  Pragma ``#complete-rank-1`` asserts all 17
  families with b2 = 1 are present.
* ``joyce.csv`` — optional comparison set of (b2, b3) pairs from the
  earlier construction; pragma ``#complete`` asserts the full 252-row set
  (239 of which satisfy b2+b3 = 3 mod 4).

Validation is strict: any malformed row rejects the whole file with a
``path:line`` diagnostic.  Loaded catalogs are immutable.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

NIKULIN_FILENAME = "nikulin.csv"
FANO_FILENAME = "fano.csv"
JOYCE_FILENAME = "joyce.csv"

EMPTY = "EMPTY"
TWO_ELLIPTIC_CURVES = "TWO_ELLIPTIC_CURVES"
GENERIC = "GENERIC"


class CatalogError(ValueError):
    """A catalog file failed validation; the message carries path:line."""


@dataclass(frozen=True)
class NikulinTriple:
    """One isomorphism class of invariant lattices, keyed by (r, a, delta)."""

    r: int
    a: int
    delta: int
    source: str = field(default="", compare=False)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.r, self.a, self.delta)


@dataclass(frozen=True)
class FanoFamily:
    """One deformation family of Fano threefolds."""

    id: str
    b2: int
    b3: int
    minus_k3: int
    source: str = field(default="", compare=False)

    @property
    def g(self) -> int:
        """The combination b3 + (-K^3) that enters every glued b3 formula."""
        return self.b3 + self.minus_k3


@dataclass(frozen=True)
class FixedLocus:
    """Fixed locus of the involution on the quotient surface.

    ``GENERIC`` means one curve of genus ``genus`` plus ``rational_curves``
    rational curves; the two exceptional classes are EMPTY and
    TWO_ELLIPTIC_CURVES.
    """

    kind: str
    genus: int | None = None
    rational_curves: int | None = None

    @property
    def curve_count(self) -> int:
        if self.kind == EMPTY:
            return 0
        if self.kind == TWO_ELLIPTIC_CURVES:
            return 2
        assert self.rational_curves is not None
        return self.rational_curves + 1

    @property
    def euler_sum(self) -> int:
        """Total Euler characteristic of the fixed curves."""
        if self.kind == EMPTY or self.kind == TWO_ELLIPTIC_CURVES:
            return 0
        assert self.genus is not None and self.rational_curves is not None
        return (2 - 2 * self.genus) + 2 * self.rational_curves


@dataclass(frozen=True)
class NikulinCatalog(Sequence):
    triples: tuple[NikulinTriple, ...]
    complete: bool

    def __iter__(self) -> Iterator[NikulinTriple]:
        return iter(self.triples)

    def __len__(self) -> int:
        return len(self.triples)

    def __getitem__(self, i):  # type: ignore[override]
        return self.triples[i]

    def find(self, r: int, a: int, delta: int) -> NikulinTriple | None:
        for t in self.triples:
            if t.key == (r, a, delta):
                return t
        return None


@dataclass(frozen=True)
class FanoCatalog(Sequence):
    families: tuple[FanoFamily, ...]
    complete_rank_1: bool

    def __iter__(self) -> Iterator[FanoFamily]:
        return iter(self.families)

    def __len__(self) -> int:
        return len(self.families)

    def __getitem__(self, i):  # type: ignore[override]
        return self.families[i]

    def rank_one(self) -> tuple[FanoFamily, ...]:
        return tuple(f for f in self.families if f.b2 == 1)

    def without(self, *ids: str) -> "FanoCatalog":
        """A copy with the given family ids removed (for count reconciliations)."""
        drop = set(ids)
        missing = drop - {f.id for f in self.families}
        if missing:
            raise CatalogError(f"cannot drop unknown family ids {sorted(missing)}")
        return FanoCatalog(
            families=tuple(f for f in self.families if f.id not in drop),
            complete_rank_1=self.complete_rank_1,
        )


@dataclass(frozen=True)
class JoyceCatalog(Sequence):
    pairs: tuple[tuple[int, int], ...]
    complete: bool

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __getitem__(self, i):  # type: ignore[override]
        return self.pairs[i]


def default_data_dir() -> Path:
    """Catalog directory: $G2SUM_DATA_DIR if set, else the packaged assets."""
    env = os.environ.get("G2SUM_DATA_DIR")
    if env:
        return Path(env)
    return Path(__file__).parent / "data"


def _read_rows(
    path: Path, expected_header: Sequence[str]
) -> tuple[set[str], list[tuple[int, list[str]]]]:
    """Parse a catalog file into (pragmas, [(lineno, fields), ...]).

    Lines starting with ``#`` are comments; those spelling out a known
    pragma are collected.  The first data line must be the exact header.
    """
    pragmas: set[str] = set()
    rows: list[tuple[int, list[str]]] = []
    header_seen = False
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CatalogError(f"{path}: cannot read catalog: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            pragma = line.lstrip("#").strip()
            if pragma in ("complete", "complete-rank-1"):
                pragmas.add(pragma)
            continue
        fields = next(csv.reader([line]))
        if not header_seen:
            if [f.strip() for f in fields] != list(expected_header):
                raise CatalogError(
                    f"{path}:{lineno}: expected header {','.join(expected_header)!r}, "
                    f"got {line!r}"
                )
            header_seen = True
            continue
        rows.append((lineno, fields))
    if not header_seen:
        raise CatalogError(f"{path}: missing header line")
    return pragmas, rows


def _int_field(path: Path, lineno: int, name: str, value: str) -> int:
    try:
        return int(value.strip())
    except ValueError:
        raise CatalogError(f"{path}:{lineno}: field {name!r} must be an integer, got {value!r}")


def load_nikulin(path: str | Path | None = None) -> NikulinCatalog:
    """Load and strictly validate the invariant-lattice triple catalog.

    Row rules: 1 <= r <= 20, 0 <= a <= 11, r - a >= 0 and even, delta in
    {0, 1}; duplicate (r, a, delta) rejected.  Under the ``#complete``
    pragma the row count must be exactly 75.
    """
    p = Path(path) if path is not None else default_data_dir() / NIKULIN_FILENAME
    pragmas, rows = _read_rows(p, ("r", "a", "delta", "source"))
    triples: list[NikulinTriple] = []
    seen: set[tuple[int, int, int]] = set()
    for lineno, fields in rows:
        if len(fields) != 4:
            raise CatalogError(f"{p}:{lineno}: expected 4 fields, got {len(fields)}")
        r = _int_field(p, lineno, "r", fields[0])
        a = _int_field(p, lineno, "a", fields[1])
        delta = _int_field(p, lineno, "delta", fields[2])
        source = fields[3].strip()
        if not 1 <= r <= 20:
            raise CatalogError(f"{p}:{lineno}: r must be in 1..20, got {r}")
        if not 0 <= a <= 11:
            raise CatalogError(f"{p}:{lineno}: a must be in 0..11, got {a}")
        if r - a < 0:
            raise CatalogError(f"{p}:{lineno}: r - a must be nonnegative, got r={r}, a={a}")
        if (r - a) % 2 != 0:
            raise CatalogError(f"{p}:{lineno}: r - a must be even, got r={r}, a={a}")
        if delta not in (0, 1):
            raise CatalogError(f"{p}:{lineno}: delta must be 0 or 1, got {delta}")
        if (r, a, delta) in seen:
            raise CatalogError(f"{p}:{lineno}: duplicate triple ({r},{a},{delta})")
        seen.add((r, a, delta))
        triples.append(NikulinTriple(r, a, delta, source))
    complete = "complete" in pragmas
    if complete and len(triples) != 75:
        raise CatalogError(
            f"{p}: file declares itself complete but has {len(triples)} rows, expected 75"
        )
    return NikulinCatalog(triples=tuple(triples), complete=complete)


def load_fano(path: str | Path | None = None) -> FanoCatalog:
    """Load and strictly validate the Fano family catalog.

    Row rules: nonempty unique id, b2 >= 1, b3 even and >= 0, -K^3 even
    and positive.  Under ``#complete-rank-1`` exactly 17 rows must have
    b2 = 1.
    """
    p = Path(path) if path is not None else default_data_dir() / FANO_FILENAME
    pragmas, rows = _read_rows(p, ("id", "b2", "b3", "minus_k3", "source"))
    families: list[FanoFamily] = []
    seen_ids: set[str] = set()
    for lineno, fields in rows:
        if len(fields) != 5:
            raise CatalogError(f"{p}:{lineno}: expected 5 fields, got {len(fields)}")
        fid = fields[0].strip()
        if not fid:
            raise CatalogError(f"{p}:{lineno}: family id must be nonempty")
        b2 = _int_field(p, lineno, "b2", fields[1])
        b3 = _int_field(p, lineno, "b3", fields[2])
        minus_k3 = _int_field(p, lineno, "minus_k3", fields[3])
        source = fields[4].strip()
        if b2 < 1:
            raise CatalogError(f"{p}:{lineno}: b2 must be >= 1, got {b2}")
        if b3 < 0 or b3 % 2 != 0:
            raise CatalogError(f"{p}:{lineno}: b3 must be even and >= 0, got {b3}")
        if minus_k3 <= 0 or minus_k3 % 2 != 0:
            raise CatalogError(
                f"{p}:{lineno}: -K^3 must be even and positive, got {minus_k3}"
            )
        if fid in seen_ids:
            raise CatalogError(f"{p}:{lineno}: duplicate family id {fid!r}")
        seen_ids.add(fid)
        families.append(FanoFamily(fid, b2, b3, minus_k3, source))
    complete_rank_1 = "complete-rank-1" in pragmas
    if complete_rank_1:
        n1 = sum(1 for f in families if f.b2 == 1)
        if n1 != 17:
            raise CatalogError(
                f"{p}: file declares rank-1 completeness but has {n1} rows with b2=1, "
                "expected 17"
            )
    return FanoCatalog(families=tuple(families), complete_rank_1=complete_rank_1)


def load_joyce(path: str | Path | None = None) -> JoyceCatalog | None:
    """Load the optional comparison catalog; None when the file is absent.

    Under ``#complete`` the set must have 252 rows, 239 of them satisfying
    b2 + b3 = 3 (mod 4).
    """
    p = Path(path) if path is not None else default_data_dir() / JOYCE_FILENAME
    if not p.exists():
        return None
    pragmas, rows = _read_rows(p, ("b2", "b3"))
    pairs: list[tuple[int, int]] = []
    for lineno, fields in rows:
        if len(fields) != 2:
            raise CatalogError(f"{p}:{lineno}: expected 2 fields, got {len(fields)}")
        b2 = _int_field(p, lineno, "b2", fields[0])
        b3 = _int_field(p, lineno, "b3", fields[1])
        if b2 < 0 or b3 < 0:
            raise CatalogError(f"{p}:{lineno}: Betti numbers must be nonnegative")
        pairs.append((b2, b3))
    complete = "complete" in pragmas
    if complete:
        if len(pairs) != 252:
            raise CatalogError(
                f"{p}: file declares itself complete but has {len(pairs)} rows, expected 252"
            )
        mod4 = sum(1 for b2, b3 in pairs if (b2 + b3) % 4 == 3)
        if mod4 != 239:
            raise CatalogError(
                f"{p}: complete set must have 239 rows with b2+b3 = 3 mod 4, got {mod4}"
            )
    return JoyceCatalog(pairs=tuple(pairs), complete=complete)


def fixed_locus(t: NikulinTriple) -> FixedLocus:
    """Fixed locus of the involution class (r, a, delta).

    Empty for (10,10,0); two elliptic curves for (10,8,0); otherwise one
    curve of genus (22-r-a)/2 plus (r-a)/2 rational curves.
    """
    if t.key == (10, 10, 0):
        return FixedLocus(kind=EMPTY)
    if t.key == (10, 8, 0):
        return FixedLocus(kind=TWO_ELLIPTIC_CURVES)
    genus = (22 - t.r - t.a) // 2
    rational = (t.r - t.a) // 2
    return FixedLocus(kind=GENERIC, genus=genus, rational_curves=rational)


def mirror_partner(t: NikulinTriple, catalog: NikulinCatalog) -> NikulinTriple | None:
    """The partner (20-r, a, delta) when the mirror relation applies.

    Returns None when r + a = 22, for the (14,6,0) class, for (10,10,0)
    (its formal self-partner is unusable: empty fixed locus), or when the
    partner triple is not in the catalog.
    """
    if t.r + t.a == 22:
        return None
    if t.key == (14, 6, 0):
        return None
    if t.key == (10, 10, 0):
        return None
    return catalog.find(20 - t.r, t.a, t.delta)


def mirror_pairs(catalog: NikulinCatalog) -> list[tuple[NikulinTriple, NikulinTriple]]:
    """All unordered mirror pairs, canonically ordered (r <= 10 first)."""
    pairs: list[tuple[NikulinTriple, NikulinTriple]] = []
    for t in catalog:
        if t.r > 10:
            continue
        partner = mirror_partner(t, catalog)
        if partner is not None:
            pairs.append((t, partner))
    return pairs
