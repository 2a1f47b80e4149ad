"""Three-way dissimilarity data: loading, validation, and entry transforms.

A dataset is an ordered stack of L square n x n dissimilarity matrices,
one per occasion, with entry [l][i][j] holding the dissimilarity from
object i to object j at occasion l.  Self-dissimilarities are kept: they
carry information (non-reflexivity) and participate in every transform.
"""

import csv
import io
import json
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata

SYMMETRY_CHOICES = ("auto", "symmetric", "asymmetric")
CONDITIONALITY_CHOICES = ("conditional", "unconditional")
RANK_SCOPES = ("global", "per_occasion")

LONG_CSV_HEADER = ("occasion", "from", "to", "value")


@dataclass(frozen=True, eq=False)
class ThreeWayDissimilarity:
    """Labeled stack of square dissimilarity matrices.

    Parameters
    ----------
    labels : sequence of str
        Object names; fixes n and the row/column order of every matrix.
    occasions : sequence of str
        Occasion names; fixes L and the stacking order.
    values : array-like, shape (L, n, n) or (n, n)
        Dissimilarity entries; a single matrix is lifted to L = 1.
    declared_symmetry : {"auto", "symmetric", "asymmetric"}
        "auto" resolves to symmetric only when every matrix equals its
        transpose exactly; "symmetric" additionally enforces it.
    conditionality : {"conditional", "unconditional"}
        Whether entries are comparable only within an occasion
        (conditional) or across the whole stack (unconditional).
    """

    labels: tuple
    occasions: tuple
    values: np.ndarray = field(repr=False)
    declared_symmetry: str = "auto"
    conditionality: str = "unconditional"

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        occasions = tuple(str(x) for x in self.occasions)
        if self.declared_symmetry not in SYMMETRY_CHOICES:
            raise ValueError(
                f"declared_symmetry must be one of {SYMMETRY_CHOICES}, "
                f"got {self.declared_symmetry!r}")
        if self.conditionality not in CONDITIONALITY_CHOICES:
            raise ValueError(
                f"conditionality must be one of {CONDITIONALITY_CHOICES}, "
                f"got {self.conditionality!r}")
        if len(set(labels)) != len(labels):
            raise ValueError("object labels must be unique")
        if len(set(occasions)) != len(occasions):
            raise ValueError("occasion names must be unique")
        if not occasions:
            raise ValueError("at least one occasion is required")

        values = np.array(self.values, dtype=np.float64)
        if values.ndim == 2:
            values = values[np.newaxis, :, :]
        n = len(labels)
        expected = (len(occasions), n, n)
        if values.shape != expected:
            raise ValueError(
                f"values must have shape {expected} "
                f"(occasion, from, to), got {values.shape}")
        if not np.all(np.isfinite(values)):
            l, i, j = np.argwhere(~np.isfinite(values))[0]
            raise ValueError(
                f"non-finite entry at (occasion {occasions[l]!r}, "
                f"from {labels[i]!r}, to {labels[j]!r})")

        transposed = values.transpose(0, 2, 1)
        is_symmetric = bool(np.array_equal(values, transposed))
        if self.declared_symmetry == "symmetric" and not is_symmetric:
            l, i, j = np.argwhere(values != transposed)[0]
            raise ValueError(
                f"declared symmetric but entry (occasion {occasions[l]!r}, "
                f"from {labels[i]!r}, to {labels[j]!r}) differs from its mirror")
        if np.any(values < 0):
            warnings.warn(
                f"{int(np.sum(values < 0))} negative dissimilarity entries; "
                "values are used as-is (embeddings are invariant to linear "
                "rescaling)", UserWarning, stacklevel=2)

        values.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "occasions", occasions)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "_is_symmetric", is_symmetric)

    @property
    def n_objects(self) -> int:
        return len(self.labels)

    @property
    def n_occasions(self) -> int:
        return len(self.occasions)

    @property
    def symmetry(self) -> str:
        """Resolved symmetry: declared value, or exact check under "auto"."""
        if self.declared_symmetry != "auto":
            return self.declared_symmetry
        return "symmetric" if self._is_symmetric else "asymmetric"

    def matrix(self, occasion: str) -> np.ndarray:
        """Read-only view of the matrix for one occasion."""
        return self.values[self.occasions.index(occasion)]


def _replace_values(dataset: ThreeWayDissimilarity, values) -> ThreeWayDissimilarity:
    return ThreeWayDissimilarity(
        labels=dataset.labels,
        occasions=dataset.occasions,
        values=values,
        declared_symmetry=dataset.declared_symmetry,
        conditionality=dataset.conditionality,
    )


def _parse_long_rows(lines, source: str):
    """Parse long-format CSV lines into orders and an entry map."""
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError(f"{source}: empty file") from None
    if tuple(h.strip() for h in header) != LONG_CSV_HEADER:
        raise ValueError(
            f"{source}: expected header {','.join(LONG_CSV_HEADER)!r}, "
            f"got {','.join(header)!r}")

    occasions, labels = [], []
    seen_occ, seen_lab = set(), set()
    entries = {}
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 4:
            raise ValueError(f"{source}: line {lineno}: expected 4 fields, got {len(row)}")
        occ, src, dst, raw = (f.strip() for f in row)
        try:
            value = float(raw)
        except ValueError:
            raise ValueError(
                f"{source}: line {lineno}: non-numeric value {raw!r}") from None
        if occ not in seen_occ:
            seen_occ.add(occ)
            occasions.append(occ)
        for lab in (src, dst):
            if lab not in seen_lab:
                seen_lab.add(lab)
                labels.append(lab)
        key = (occ, src, dst)
        if key in entries:
            raise ValueError(
                f"{source}: line {lineno}: duplicate entry "
                f"(occasion {occ!r}, from {src!r}, to {dst!r})")
        entries[key] = value
    if not entries:
        raise ValueError(f"{source}: no data rows")
    return occasions, labels, entries


def _assemble(occasions, labels, entries, source: str) -> np.ndarray:
    values = np.empty((len(occasions), len(labels), len(labels)))
    for l, occ in enumerate(occasions):
        for i, src in enumerate(labels):
            for j, dst in enumerate(labels):
                try:
                    values[l, i, j] = entries[(occ, src, dst)]
                except KeyError:
                    raise ValueError(
                        f"{source}: incomplete matrix: missing entry "
                        f"(occasion {occ!r}, from {src!r}, to {dst!r})") from None
    return values


def load_long_csv(path, *, similarity_max=None,
                  conditionality="unconditional",
                  declared_symmetry="auto") -> ThreeWayDissimilarity:
    """Load a dataset from long CSV with header ``occasion,from,to,value``.

    Every (occasion, from, to) triple must appear exactly once; label and
    occasion order follow first appearance.  If ``similarity_max`` is
    given, entries are treated as similarities and converted by
    ``similarity_max - value`` after loading.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return _load_long_lines(fh, str(path), similarity_max,
                                conditionality, declared_symmetry)


def loads_long_csv(text: str, *, similarity_max=None,
                   conditionality="unconditional",
                   declared_symmetry="auto") -> ThreeWayDissimilarity:
    """Like :func:`load_long_csv`, from an in-memory CSV string."""
    return _load_long_lines(io.StringIO(text), "<string>", similarity_max,
                            conditionality, declared_symmetry)


def _load_long_lines(lines, source, similarity_max, conditionality,
                     declared_symmetry) -> ThreeWayDissimilarity:
    occasions, labels, entries = _parse_long_rows(lines, source)
    values = _assemble(occasions, labels, entries, source)
    dataset = ThreeWayDissimilarity(
        labels=labels, occasions=occasions, values=values,
        declared_symmetry=declared_symmetry, conditionality=conditionality)
    if similarity_max is not None:
        dataset = similarity_to_dissimilarity(dataset, similarity_max)
    return dataset


def save_long_csv(dataset: ThreeWayDissimilarity, path) -> None:
    """Write long CSV; ``load_long_csv`` round-trips it bit-exactly."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(LONG_CSV_HEADER)
        for l, occ in enumerate(dataset.occasions):
            for i, src in enumerate(dataset.labels):
                for j, dst in enumerate(dataset.labels):
                    writer.writerow((occ, src, dst,
                                     repr(float(dataset.values[l, i, j]))))


def load_json(path, *, similarity_max=None,
              conditionality="unconditional",
              declared_symmetry="auto") -> ThreeWayDissimilarity:
    """Load the companion JSON format.

    Schema: ``{"labels": [...], "occasions": [...], "matrices": [[[...]]]}``
    with matrices indexed [occasion][row][col].
    """
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    for key in ("labels", "occasions", "matrices"):
        if key not in doc:
            raise ValueError(f"{path}: missing key {key!r}")
    dataset = ThreeWayDissimilarity(
        labels=doc["labels"], occasions=doc["occasions"],
        values=np.asarray(doc["matrices"], dtype=np.float64),
        declared_symmetry=declared_symmetry, conditionality=conditionality)
    if similarity_max is not None:
        dataset = similarity_to_dissimilarity(dataset, similarity_max)
    return dataset


def save_json(dataset: ThreeWayDissimilarity, path) -> None:
    """Write the companion JSON format (bit-exact round trip)."""
    doc = {
        "labels": list(dataset.labels),
        "occasions": list(dataset.occasions),
        "matrices": dataset.values.tolist(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def similarity_to_dissimilarity(dataset: ThreeWayDissimilarity,
                                max_value: float) -> ThreeWayDissimilarity:
    """Convert similarities to dissimilarities: entry -> max_value - entry.

    Applying the conversion twice with the same ``max_value`` restores the
    original entries.
    """
    max_value = float(max_value)
    if np.any(dataset.values > max_value):
        l, i, j = np.argwhere(dataset.values > max_value)[0]
        raise ValueError(
            f"range error: entry (occasion {dataset.occasions[l]!r}, "
            f"from {dataset.labels[i]!r}, to {dataset.labels[j]!r}) = "
            f"{dataset.values[l, i, j]} exceeds max_value {max_value}")
    return _replace_values(dataset, max_value - dataset.values)


def rank_transform(dataset: ThreeWayDissimilarity,
                   scope: str = "global") -> ThreeWayDissimilarity:
    """Replace entries by average ranks (ties get the mean rank position).

    ``scope="global"`` ranks all L*n*n entries jointly; ``"per_occasion"``
    ranks each matrix independently.  Diagonal entries participate like
    any other entry.
    """
    if scope not in RANK_SCOPES:
        raise ValueError(f"scope must be one of {RANK_SCOPES}, got {scope!r}")
    v = dataset.values
    if scope == "global":
        ranked = rankdata(v.ravel(), method="average").reshape(v.shape)
    else:
        ranked = np.stack([
            rankdata(m.ravel(), method="average").reshape(m.shape) for m in v])
    return _replace_values(dataset, ranked)


def power_transform(dataset: ThreeWayDissimilarity,
                    p: float) -> ThreeWayDissimilarity:
    """Raise every entry to the power ``p`` (p > 0)."""
    p = float(p)
    if not p > 0:
        raise ValueError(f"power must be positive, got {p}")
    if np.any(dataset.values < 0) and not p.is_integer():
        raise ValueError(
            "domain error: negative entries cannot be raised to a "
            f"non-integer power {p}")
    return _replace_values(dataset, dataset.values ** p)
