"""Canonical JSON documents for algebra elements.

An element document is the serialized symmetric Laurent polynomial (or a
``components`` list when several arities are present), with optional keys:

* ``homogeneous``: [n, d] bidegree tag,
* ``den``: scalar denominator (fraction-field elements),
* ``kernel``: a kernel presentation carried alongside the value.

Serialization is canonical (sorted terms, decimal coefficient strings) and
round-trips bit-exactly.
"""

from __future__ import annotations

import json

from .arith import CoeffPoly
from .shuffle import Kernel, ScaledElem, ShuffleElem


def element_to_doc(elem, kernel: Kernel | None = None) -> dict:
    elem = ScaledElem.wrap(elem)
    doc = dict(elem.elem.to_doc())
    if not elem.den.is_one:
        doc["den"] = elem.den.to_doc()
    if kernel is not None:
        doc["kernel"] = kernel.to_doc()
    return doc


def element_from_doc(doc) -> tuple[ScaledElem, Kernel | None]:
    body = {k: v for k, v in doc.items() if k not in ("den", "kernel")}
    elem = ShuffleElem.from_doc(body)
    den = CoeffPoly.from_doc(doc["den"]) if "den" in doc else CoeffPoly.from_int(1)
    kernel = Kernel.from_doc(doc["kernel"]) if "kernel" in doc else None
    return ScaledElem(elem, den), kernel


def dump(doc) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def load(text: str):
    return json.loads(text)
