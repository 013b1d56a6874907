"""Explicit-formula verification for ordinary abelian varieties over finite fields.

Each entry point takes an input document (a dict, or a JSON string) of the form
``{"q": 5, "g": 1, "weil_poly": [1, -2, 5]}`` or ``{"q": 5, "trace": 2}`` and
returns the same report the ``weilflow`` command prints in JSON mode.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping, Union

from ._core import Bump, WeilflowError, parse_bump, phi, tail_majorant
from . import _core

Document = Union[Mapping[str, Any], str]
BumpLike = Union[Bump, str, tuple]

__all__ = [
    "Bump",
    "WeilflowError",
    "parse_bump",
    "phi",
    "tail_majorant",
    "validate",
    "zeta",
    "count",
    "orbits",
    "spectrum",
    "verify",
]


def _doc(doc: Document) -> str:
    return doc if isinstance(doc, str) else json.dumps(doc)


def _bump(b: BumpLike) -> Bump:
    if isinstance(b, Bump):
        return b
    if isinstance(b, str):
        return parse_bump(b)
    return Bump(*b)


def validate(doc: Document, *, allow_non_ordinary: bool = False, max_dimension: int = 8) -> dict:
    return json.loads(_core.validate_json(_doc(doc), allow_non_ordinary, max_dimension))


def zeta(doc: Document, *, allow_non_ordinary: bool = False, max_dimension: int = 8) -> dict:
    return json.loads(_core.zeta_json(_doc(doc), allow_non_ordinary, max_dimension))


def count(doc: Document, max_n: int = 12, *, allow_non_ordinary: bool = False, max_dimension: int = 8) -> dict:
    return json.loads(_core.count_json(_doc(doc), max_n, allow_non_ordinary, max_dimension))


def orbits(doc: Document, max_nu: int = 12, **kwargs) -> dict:
    """Primitive orbit counts {nu: {"count", "length"}} from the count report."""
    return count(doc, max_nu, **kwargs)["orbits"]


def spectrum(doc: Document, window: float = 10.0, *, allow_non_ordinary: bool = False,
             max_dimension: int = 8) -> dict:
    return json.loads(_core.spectrum_json(_doc(doc), window, allow_non_ordinary, max_dimension))


def verify(doc: Document, alpha: Iterable[BumpLike], tol: float = 1e-8, *, nu_cap: int = 10_000_000,
           threads: int = 1, allow_non_ordinary: bool = False, max_dimension: int = 8) -> dict:
    """Both sides of the explicit formula for the sum of the given bumps.

    ``alpha`` items may be Bump objects, ``"c=..,w=..,A=.."`` strings or
    ``(center, width[, amplitude])`` tuples.
    """
    bumps = [_bump(b) for b in alpha]
    return json.loads(_core.verify_json(_doc(doc), bumps, tol, nu_cap, threads, allow_non_ordinary, max_dimension))
