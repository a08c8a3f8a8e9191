"""Plastic collapse mechanisms, capacity curves and N2 verification of planar steel frames."""

import json
from os import PathLike

from ._core import Error, NumericalError, ValidationError
from ._core import curve_csv, evaluate_lambda0, mechanism_labels, spectral_acceleration
from . import _core

__all__ = [
    "Error",
    "NumericalError",
    "ValidationError",
    "analyze",
    "assess",
    "curve_csv",
    "evaluate_lambda0",
    "mechanism_labels",
    "spectral_acceleration",
]


def _run(document, pattern, assess_):
    if isinstance(document, (str, PathLike)):
        return json.loads(_core.analyze_file(str(document), pattern, assess_))
    if isinstance(document, dict):
        return json.loads(_core.analyze_json(json.dumps(document), "", pattern, assess_))
    raise TypeError("document must be a path or a dict")


def analyze(document, pattern="all"):
    """Collapse search and capacity curve; `document` is a path or a parsed dict."""
    return _run(document, pattern, False)


def assess(document, pattern="all"):
    """Like analyze, plus the equivalent SDOF and the displacement verification."""
    return _run(document, pattern, True)

