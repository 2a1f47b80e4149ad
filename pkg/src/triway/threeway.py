"""Arrangement of three-way dissimilarities and profile-level reports.

Four arrangement cases, selected by (conditionality, resolved symmetry):

* unconditional symmetric:   D = [M_1 | ... | M_L]            (n x Ln)
* unconditional asymmetric:  D = [M_1 | M_1' | ... | M_L | M_L']  (n x 2Ln)
* conditional symmetric:     D = rows of M_1 ... M_L stacked   (Ln x n)
* conditional asymmetric:    D = rows of [M_l | M_l'] stacked  (Ln x 2n)

Columns of D are dissimilarity variables ("to" = column profiles,
"from" = row profiles); embedding D and regrouping the variable
coordinates per object yields the profile matrix Y consumed by
archetypoid analysis and clustering.  Single-occasion datasets route
through the unconditional arrangement, whose L = 1 special case is the
classic one-mode construction.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._validation import as_float_vector, check_count, freeze
from .dataset import ThreeWayDissimilarity
from .hplot import HPlotResult, hplot


class ProfileTag(NamedTuple):
    """Identity of one dissimilarity variable (column of D)."""

    label: str
    occasion: str  # occasion name, or "all" in the conditional case
    direction: str  # "to" (column profile) or "from" (row profile)


class RowTag(NamedTuple):
    """Identity of one observation (row of D)."""

    label: str
    occasion: str


class AsymmetryEntry(NamedTuple):
    label: str
    occasion: str
    score: float


class NearestPair(NamedTuple):
    a: ProfileTag
    b: ProfileTag
    distance: float


class CovariateCorrelation(NamedTuple):
    occasion: str
    direction: str
    r: float


@dataclass(frozen=True, eq=False)
class ArrangedMatrix:
    """The concatenated data matrix D plus column/row identity maps."""

    data: np.ndarray = field(repr=False)
    col_tags: tuple = ()
    row_tags: tuple = ()
    conditionality: str = "unconditional"  # effective (L=1 routes unconditional)
    symmetry: str = "asymmetric"

    def block(self, occasion: str, direction: str = "to") -> np.ndarray:
        """Reconstruct one n x n block (M_l for "to", its transpose for "from")."""
        if direction not in ("to", "from"):
            raise ValueError(f"direction must be 'to' or 'from', got {direction!r}")
        if self.symmetry == "symmetric" and direction == "from":
            raise ValueError("no from-profiles in a symmetric arrangement")
        if self.conditionality == "unconditional":
            cols = [i for i, t in enumerate(self.col_tags)
                    if t.occasion == occasion and t.direction == direction]
            rows = range(self.data.shape[0])
        else:
            cols = [i for i, t in enumerate(self.col_tags)
                    if t.direction == direction]
            rows = [i for i, t in enumerate(self.row_tags)
                    if t.occasion == occasion]
        if not cols:
            raise ValueError(f"no block for occasion {occasion!r}")
        return self.data[np.ix_(list(rows), cols)].copy()


@dataclass(frozen=True, eq=False)
class ProfileMatrix:
    """Per-object profile coordinates Y assembled from an embedding.

    Row j of Y concatenates the embedded coordinates of object j's
    dissimilarity variables, occasion-major with the "to" profile before
    the "from" profile.  Y is a pure re-indexing of the embedding rows;
    no arithmetic is applied.
    """

    Y: np.ndarray = field(repr=False)
    labels: tuple = ()
    occasions: tuple = ()
    conditionality: str = "unconditional"
    symmetry: str = "asymmetric"
    dims: int = 2
    hplot: HPlotResult = field(repr=False, default=None)
    tags: tuple = ()

    @property
    def n_objects(self) -> int:
        return len(self.labels)

    def tag_index(self, label: str, occasion: str, direction: str = "to") -> int:
        tag = ProfileTag(label, occasion, direction)
        try:
            return self.tags.index(tag)
        except ValueError:
            raise ValueError(f"no profile {tag}") from None

    def coordinates(self, label: str, occasion: str = None,
                    direction: str = "to") -> np.ndarray:
        """Embedded coordinates of one profile."""
        if occasion is None:
            if self.conditionality == "conditional":
                occasion = "all"
            elif len(self.occasions) == 1:
                occasion = self.occasions[0]
            else:
                raise ValueError("occasion is required for multi-occasion data")
        return self.hplot.coordinates[self.tag_index(label, occasion, direction)]

    def to_record(self) -> dict:
        """Embedding record: ``{eigenvalues, gof, points:[...]}``."""
        H = self.hplot.coordinates
        points = []
        for i, tag in enumerate(self.tags):
            points.append({
                "label": tag.label,
                "occasion": tag.occasion,
                "direction": tag.direction,
                "x": float(H[i, 0]),
                "y": float(H[i, 1]) if self.dims >= 2 else 0.0,
            })
        return {
            "eigenvalues": [float(v) for v in self.hplot.eigenvalues],
            "gof": [float(v) for v in self.hplot.gof_cumulative[: self.dims]],
            "points": points,
        }


def arrange(dataset: ThreeWayDissimilarity) -> ArrangedMatrix:
    """Build the arranged matrix D for the dataset's case.

    The case is selected by (conditionality, resolved symmetry); an L = 1
    dataset always uses the unconditional arrangement.
    """
    labels, occasions = dataset.labels, dataset.occasions
    V = dataset.values
    symmetric = dataset.symmetry == "symmetric"
    conditional = dataset.conditionality == "conditional" and len(occasions) > 1

    if not conditional:
        blocks, col_tags = [], []
        for l, occ in enumerate(occasions):
            blocks.append(V[l])
            col_tags += [ProfileTag(lab, occ, "to") for lab in labels]
            if not symmetric:
                blocks.append(V[l].T)
                col_tags += [ProfileTag(lab, occ, "from") for lab in labels]
        data = np.hstack(blocks)
        row_tags = tuple(RowTag(lab, "all") for lab in labels)
    else:
        rows = []
        for l in range(len(occasions)):
            rows.append(V[l] if symmetric else np.hstack([V[l], V[l].T]))
        data = np.vstack(rows)
        col_tags = [ProfileTag(lab, "all", "to") for lab in labels]
        if not symmetric:
            col_tags += [ProfileTag(lab, "all", "from") for lab in labels]
        row_tags = tuple(RowTag(lab, occ)
                         for occ in occasions for lab in labels)

    return ArrangedMatrix(
        data=freeze(data),
        col_tags=tuple(col_tags),
        row_tags=row_tags,
        conditionality="conditional" if conditional else "unconditional",
        symmetry="symmetric" if symmetric else "asymmetric",
    )


def project(dataset: ThreeWayDissimilarity, dims: int = 2) -> ProfileMatrix:
    """Arrange, embed, and regroup into the per-object profile matrix Y."""
    arranged = arrange(dataset)
    result = hplot(arranged.data, dims)
    H = result.coordinates
    labels = dataset.labels
    rows_per_label = {lab: [] for lab in labels}
    for i, tag in enumerate(arranged.col_tags):
        rows_per_label[tag.label].append(i)
    Y = np.vstack([H[rows_per_label[lab]].ravel() for lab in labels])
    return ProfileMatrix(
        Y=freeze(Y),
        labels=labels,
        occasions=dataset.occasions,
        conditionality=arranged.conditionality,
        symmetry=arranged.symmetry,
        dims=dims,
        hplot=result,
        tags=arranged.col_tags,
    )


@dataclass(frozen=True, eq=False)
class AsymmetryReport:
    """Per-profile asymmetry scores, sorted most-asymmetric first.

    The score of a profile is the Euclidean distance between its "to" and
    "from" embedded coordinates; larger means more asymmetric.
    """

    entries: tuple = ()
    most_symmetric: AsymmetryEntry = None
    most_asymmetric: AsymmetryEntry = None


def asymmetry_report(profile: ProfileMatrix) -> AsymmetryReport:
    """Score the to/from separation of every profile (asymmetric case only)."""
    if profile.symmetry == "symmetric":
        raise ValueError("no asymmetry defined: arrangement has no from-profiles")
    H = profile.hplot.coordinates
    index = {tag: i for i, tag in enumerate(profile.tags)}
    label_pos = {lab: i for i, lab in enumerate(profile.labels)}
    if profile.conditionality == "unconditional":
        occ_list = profile.occasions
    else:
        occ_list = ("all",)
    occ_pos = {occ: i for i, occ in enumerate(occ_list)}

    entries = []
    for lab in profile.labels:
        for occ in occ_list:
            to = H[index[ProfileTag(lab, occ, "to")]]
            fr = H[index[ProfileTag(lab, occ, "from")]]
            entries.append(AsymmetryEntry(lab, occ, float(np.linalg.norm(to - fr))))

    def order_key(e):
        return (label_pos[e.label], occ_pos[e.occasion])

    ranked = sorted(entries, key=lambda e: (-e.score,) + order_key(e))
    most_sym = min(entries, key=lambda e: (e.score,) + order_key(e))
    most_asym = min(entries, key=lambda e: (-e.score,) + order_key(e))
    return AsymmetryReport(entries=tuple(ranked),
                           most_symmetric=most_sym,
                           most_asymmetric=most_asym)


def nearest_profiles(profile: ProfileMatrix, k: int = None,
                     include_self_pairs: bool = True):
    """Rank profile pairs by embedded Euclidean distance, nearest first.

    All distinct embedding rows form the pair pool; pairs joining the
    same object's "to" and "from" profiles are kept by default because
    their distance is the asymmetry evidence.  Set
    ``include_self_pairs=False`` to drop same-object pairs.  Ties break
    by object label order, then occasion order, then direction.
    """
    tags = profile.tags
    m = len(tags)
    if m < 2:
        raise ValueError("need at least 2 profiles")
    H = profile.hplot.coordinates
    label_pos = {lab: i for i, lab in enumerate(profile.labels)}
    occ_pos = {occ: i for i, occ in enumerate(profile.occasions)}
    occ_pos.setdefault("all", 0)
    dir_pos = {"to": 0, "from": 1}
    key = np.array([
        (label_pos[t.label] * (len(occ_pos) + 1) + occ_pos[t.occasion]) * 2
        + dir_pos[t.direction]
        for t in tags])

    iu, ju = np.triu_indices(m, 1)
    diff = H[iu] - H[ju]
    dist = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    ka, kb = key[iu], key[ju]
    swap = ka > kb
    first = np.where(swap, ju, iu)
    second = np.where(swap, iu, ju)
    ka, kb = key[first], key[second]

    if not include_self_pairs:
        labels_arr = np.array([label_pos[t.label] for t in tags])
        keep = labels_arr[first] != labels_arr[second]
        first, second, dist, ka, kb = (first[keep], second[keep],
                                       dist[keep], ka[keep], kb[keep])

    order = np.lexsort((kb, ka, dist))
    if k is not None:
        k = check_count(k, 1, order.size, "k")
        order = order[:k]
    return [NearestPair(tags[first[i]], tags[second[i]], float(dist[i]))
            for i in order]


def correlate_covariate(profile: ProfileMatrix, covariate,
                        dimension: int = 1, direction: str = "both"):
    """Pearson correlation of a per-object covariate with one embedding axis.

    ``dimension`` is 1-based (1 = first embedding dimension).  Returns one
    :class:`CovariateCorrelation` per (occasion, direction) coordinate
    column, in occasion-major order.
    """
    cov = as_float_vector(covariate, "covariate")
    n = profile.n_objects
    if cov.size != n:
        raise ValueError(f"covariate must have length {n}, got {cov.size}")
    if np.all(cov == cov[0]):
        raise ValueError("zero-variance covariate: correlation undefined")
    dimension = check_count(dimension, 1, profile.dims, "dimension")
    if direction not in ("to", "from", "both"):
        raise ValueError(f"direction must be 'to', 'from', or 'both', got {direction!r}")
    if profile.symmetry == "symmetric":
        if direction == "from":
            raise ValueError("no from-profiles in a symmetric arrangement")
        directions = ("to",)
    else:
        directions = ("to", "from") if direction == "both" else (direction,)
    occ_list = (profile.occasions if profile.conditionality == "unconditional"
                else ("all",))

    H = profile.hplot.coordinates
    out = []
    for occ in occ_list:
        for dr in directions:
            col = np.array([H[profile.tag_index(lab, occ, dr), dimension - 1]
                            for lab in profile.labels])
            if np.all(col == col[0]):
                raise ValueError(
                    f"zero-variance coordinate column (occasion {occ!r}, "
                    f"direction {dr!r}): correlation undefined")
            r = float(np.corrcoef(cov, col)[0, 1])
            out.append(CovariateCorrelation(occ, dr, r))
    return out
