"""Bundled example datasets in the long CSV format."""

from importlib import resources

from .dataset import ThreeWayDissimilarity, loads_long_csv


def _read(name: str) -> str:
    return resources.files("triway").joinpath("data", name).read_text("utf-8")


def fixture_path(name: str) -> str:
    """Filesystem path of a bundled CSV (``journals.csv`` or ``messages.csv``)."""
    return str(resources.files("triway").joinpath("data", name))


def load_journals() -> ThreeWayDissimilarity:
    """Journal citation dissimilarities: 4 journals, one occasion, asymmetric."""
    return loads_long_csv(_read("journals.csv"))


def load_messages(similarity_max: float = 50.0,
                  conditionality: str = "unconditional") -> ThreeWayDissimilarity:
    """Message-exchange similarities among 4 people over 2 occasions.

    Entries are similarities with maximum 50; pass ``similarity_max=None``
    to keep them raw instead of converting to dissimilarities.
    """
    return loads_long_csv(_read("messages.csv"),
                          similarity_max=similarity_max,
                          conditionality=conditionality)
