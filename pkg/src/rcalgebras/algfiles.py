"""JSON algebra definition files.

A document carries the generators (weights as string rationals), an
optional derivation (expression strings per generator), an optional
weight-4 element, relations, a delta derivation, and an ``e2`` key.  When
``e2`` names one of the generators the file describes a standard algebra
whose derivation is the degree-2 D; when it names a fresh symbol (or is
absent) the file describes a canonical base whose derivation is the
Serre-type one, and the fresh name is what the extension will adjoin.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .algebra import AlgebraSpec, as_q
from .brackets import CanonicalData
from .catalog import BUILTIN_NAMES, AlgebraSystem, builtin
from .derivations import Derivation
from .exprs import format_poly


class AlgebraFileError(ValueError):
    """Malformed algebra definition document."""


def from_json(doc: dict, name: str = "file") -> AlgebraSystem:
    try:
        n = int(doc["grading_denominator"])
        gens = [(g["name"], as_q(g["weight"])) for g in doc["generators"]]
    except (KeyError, TypeError, ValueError) as e:
        raise AlgebraFileError(f"bad algebra document: {e}") from e
    relations = list(doc.get("relations", []))
    try:
        algebra = AlgebraSpec(n, gens, relations=relations)
    except ValueError as e:
        raise AlgebraFileError(str(e)) from e

    def parse_derivation(key, degree):
        images = doc.get(key)
        if images is None:
            return None
        try:
            return Derivation(
                algebra,
                {g: algebra.parse(expr) for g, expr in images.items()},
                degree=degree,
            )
        except ValueError as e:
            raise AlgebraFileError(f"bad {key!r} images: {e}") from e

    delta = parse_derivation("delta", degree=-2)
    e2 = doc.get("e2")
    gen_names = set(algebra.names())
    if e2 in gen_names:
        derivation = parse_derivation("derivation", degree=2)
        if derivation is None:
            raise AlgebraFileError("a standard algebra file needs a derivation")
        return AlgebraSystem(
            name=name, kind="standard", algebra=algebra, e2_name=e2,
            derivation=derivation, delta=delta,
        )
    if "lambda" not in doc:
        raise AlgebraFileError(
            "document needs either an 'e2' generator or a 'lambda' element"
        )
    partial = parse_derivation("derivation", degree=2)
    if partial is None:
        raise AlgebraFileError("a canonical algebra file needs a derivation")
    try:
        lam = algebra.parse(doc["lambda"])
        canonical = CanonicalData(partial, lam)
    except ValueError as e:
        raise AlgebraFileError(f"bad lambda element: {e}") from e
    return AlgebraSystem(
        name=name, kind="canonical", algebra=algebra,
        e2_name=e2 or "E2", canonical=canonical, delta=delta,
    )


def to_json(system: AlgebraSystem) -> dict:
    algebra = system.algebra
    doc = {
        "grading_denominator": algebra.grading_denominator,
        "generators": [
            {"name": n, "weight": str(w)} for n, w in algebra.generators
        ],
    }
    if system.kind == "standard":
        doc["derivation"] = {
            g: format_poly(p) for g, p in system.derivation.images.items()
        }
        doc["e2"] = system.e2_name
    else:
        doc["derivation"] = {
            g: format_poly(p) for g, p in system.canonical.partial.images.items()
        }
        doc["lambda"] = format_poly(system.canonical.lam)
        doc["e2"] = system.e2_name
    if algebra.relations:
        doc["relations"] = [format_poly(r) for r in algebra.relations]
    if system.delta is not None:
        doc["delta"] = {
            g: format_poly(p) for g, p in system.delta.images.items()
        }
    return doc


def load_file(path: str) -> AlgebraSystem:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise AlgebraFileError(f"invalid JSON in {path}: {e}") from e
    return from_json(doc, name=os.path.splitext(os.path.basename(path))[0])


def save_file(system: AlgebraSystem, path: str):
    with open(path, "w") as fh:
        json.dump(to_json(system), fh, indent=2)
        fh.write("\n")


def resolve(name_or_path: str) -> AlgebraSystem:
    """A builtin name, else a path to a JSON definition."""
    if name_or_path in BUILTIN_NAMES:
        return builtin(name_or_path)
    if os.path.exists(name_or_path):
        return load_file(name_or_path)
    raise AlgebraFileError(
        f"{name_or_path!r} is neither a builtin algebra "
        f"({', '.join(BUILTIN_NAMES)}) nor a file"
    )
