"""JSON wire formats for lattices and divisor classes.

Rationals travel as strings: ``"p/q"`` or an integer string, reduced, with
no ``+`` sign.  Serializing a parsed value reproduces the canonical text.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .errors import DomainError, ParseError
from .lattice import DivisorClass, Lattice, lattice_from_gram

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"rational must be a string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not _RATIONAL.fullmatch(text):
        raise ParseError(f"malformed rational {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def lattice_from_json(obj: Any) -> Lattice:
    if not isinstance(obj, dict) or "gram" not in obj or "labels" not in obj:
        raise ParseError('lattice must be an object with "labels" and "gram"')
    gram = obj["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise ParseError('"gram" must be a list of rows')
    if not isinstance(obj["labels"], list) or not all(isinstance(s, str) for s in obj["labels"]):
        raise ParseError('"labels" must be a list of strings')
    return lattice_from_gram([[parse_rational(x) for x in row] for row in gram], obj["labels"])


def lattice_to_json(l: Lattice) -> dict:
    return {
        "labels": list(l.labels),
        "gram": [[format_rational(x) for x in row] for row in l.gram],
    }


def class_from_json(obj: Any, ambient: Lattice) -> DivisorClass:
    if isinstance(obj, dict):
        obj = obj.get("coeffs")
    if not isinstance(obj, list):
        raise ParseError('divisor class must be {"coeffs": [...]}')
    return DivisorClass.of(ambient, [parse_rational(x) for x in obj])


def class_to_json(c: DivisorClass) -> dict:
    return {"coeffs": [format_rational(x) for x in c.coeffs]}


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def dumps(obj: Any) -> str:
    """Canonical JSON text used for every machine-readable report."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
