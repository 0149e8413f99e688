"""Built-in fixtures and the ``.ddm`` / ``.ceq`` document formats.

``.ddm`` (model)::

    {"name": ..., "dim": n, "betti": [b_0, ..., b_2n], "bott_chern": [[h(0,0), ...], ...]}

with ``bott_chern[p][q] = h_BC^{p,q}``.  ``.ceq`` (structure equations)::

    {"name": ..., "dim": m, "d20": [[a, b, c, re, im], ...], "d11": [...], "d02": [...]}

where a (2,0)-term adds ``(re + i im) phi_b ^ phi_c`` to ``d phi_a`` and a
(1,1)-term adds ``(re + i im) phi_b ^ conj(phi_c)``.  Rationals are written as
``[numerator, denominator]`` (a bare integer is accepted on input).  Both
formats are written canonically so that equal values give identical bytes.
"""

import json
from fractions import Fraction
from functools import lru_cache
from math import comb

from .bicomplex import StructureEquations, build_ce_bicomplex, summarize
from .diamond import ManifoldModel
from .errors import DdbarError, ParseError
from .linalg import GaussRational

ENGINE_BACKED = ("iwasawa", "kodaira-thurston")


def point():
    return ManifoldModel.from_lists("point", 0, [1], [[1]])


def torus(n):
    return ManifoldModel.from_lists(
        f"torus:{n}", n, [comb(2 * n, k) for k in range(2 * n + 1)],
        [[comb(n, p) * comb(n, q) for q in range(n + 1)] for p in range(n + 1)])


def cpn(n):
    return ManifoldModel.from_lists(
        f"cpn:{n}", n, [1 - k % 2 for k in range(2 * n + 1)],
        [[int(p == q) for q in range(n + 1)] for p in range(n + 1)])


def iwasawa():
    # d phi_3 = -phi_1 ^ phi_2
    return StructureEquations(3, terms20=[(3, 1, 2, -1)], name="iwasawa")


def kodaira_thurston():
    # d phi_2 = phi_1 ^ conj(phi_1)
    return StructureEquations(2, terms11=[(2, 1, 1, 1)], name="kodaira-thurston")


def abelian(m):
    return StructureEquations(m, name=f"abelian:{m}")


def _parse_index(name, arg):
    try:
        n = int(arg)
    except (TypeError, ValueError):
        raise DdbarError("unknown-builtin", f"{name!r}: expected an integer parameter") from None
    if n < 1:
        raise DdbarError("unknown-builtin", f"{name!r}: parameter must be >= 1")
    return n


def builtin(name):
    """Closed-form model or structure equations registered under ``name``.

    Known names: ``point``, ``torus:N``, ``cpn:N``, ``abelian:M``, ``iwasawa``,
    ``kodaira-thurston``.
    """
    head, _, arg = name.partition(":")
    if name == "point":
        return point()
    if head == "torus" and arg:
        return torus(_parse_index(name, arg))
    if head == "cpn" and arg:
        return cpn(_parse_index(name, arg))
    if head == "abelian" and arg:
        return abelian(_parse_index(name, arg))
    if name == "iwasawa":
        return iwasawa()
    if name == "kodaira-thurston":
        return kodaira_thurston()
    raise DdbarError("unknown-builtin", f"no builtin named {name!r}")


@lru_cache(maxsize=None)
def builtin_model(name):
    """Like :func:`builtin`, but structure equations are run through the engine."""
    obj = builtin(name)
    if isinstance(obj, StructureEquations):
        return summarize(build_ce_bicomplex(obj), name).model()
    return obj


def builtin_names():
    """The fixture names used by the verification suites."""
    return ["point", "torus:1", "torus:2", "torus:3", "cpn:1", "cpn:2", "cpn:3", "cpn:4",
            "iwasawa", "kodaira-thurston"]


# -- models -------------------------------------------------------------------

def save_model(m):
    """Descriptor document for ``m`` (plain dict, keys in canonical order)."""
    return {
        "name": m.name,
        "dim": m.n,
        "betti": list(m.betti.b),
        "bott_chern": [list(row) for row in m.bott_chern.h],
    }


def format_document(doc):
    lines = ["{"]
    items = list(doc.items())
    for i, (key, value) in enumerate(items):
        comma = "," if i < len(items) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], list):
            rows = [json.dumps(row, ensure_ascii=False) for row in value]
            body = ",\n".join(f"    {r}" for r in rows)
            lines.append(f"  {json.dumps(key)}: [\n{body}\n  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=False)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps_model(m, extra=None):
    """Canonical ``.ddm`` text; ``extra`` keys are appended after the model fields."""
    doc = save_model(m)
    if extra:
        doc.update(extra)
    return format_document(doc)


def _nonneg_int(x, what):
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ParseError(detail=f"{what} must be a nonnegative integer, got {x!r}")
    return x


def _load_json(doc):
    if isinstance(doc, (str, bytes)):
        try:
            return json.loads(doc)
        except json.JSONDecodeError as e:
            raise ParseError(detail=f"malformed document: {e}") from None
    return doc


def load_model(doc):
    """Model from a descriptor (dict or JSON text); raises parse-error or shape-error."""
    doc = _load_json(doc)
    if not isinstance(doc, dict):
        raise ParseError(detail="model document must be an object")
    for key in ("dim", "betti", "bott_chern"):
        if key not in doc:
            raise ParseError(detail=f"missing key {key!r}")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError(detail="name must be a string")
    n = _nonneg_int(doc["dim"], "dim")
    betti, bc = doc["betti"], doc["bott_chern"]
    if not isinstance(betti, list) or not isinstance(bc, list) \
            or not all(isinstance(row, list) for row in bc):
        raise ParseError(detail="betti must be an array and bott_chern an array of arrays")
    betti = [_nonneg_int(x, "betti entry") for x in betti]
    bc = [[_nonneg_int(x, "bott_chern entry") for x in row] for row in bc]
    return ManifoldModel.from_lists(name, n, betti, bc)


def read_model(path):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(detail=f"cannot read {path}: {e.strerror}") from None
    return load_model(text)


def write_model(m, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_model(m))


# -- structure equations ------------------------------------------------------

def _rational(x, what):
    if isinstance(x, bool):
        raise ParseError(detail=f"{what}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(t, int) and not isinstance(t, bool)
                                                  for t in x):
        if x[1] == 0:
            raise ParseError(detail=f"{what}: zero denominator")
        return Fraction(x[0], x[1])
    raise ParseError(detail=f"{what}: expected [numerator, denominator], got {x!r}")


def _encode_rational(x):
    return [x.numerator, x.denominator]


def load_structure(doc):
    """Structure equations from a ``.ceq`` descriptor (dict or JSON text)."""
    doc = _load_json(doc)
    if not isinstance(doc, dict) or "dim" not in doc:
        raise ParseError(detail="structure document must be an object with a 'dim' key")
    m = doc["dim"]
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ParseError(detail=f"dim must be a positive integer, got {m!r}")
    terms = {}
    for key in ("d20", "d11", "d02"):
        raw = doc.get(key, [])
        if not isinstance(raw, list):
            raise ParseError(detail=f"{key} must be an array")
        parsed = []
        for t in raw:
            if not isinstance(t, list) or len(t) != 5:
                raise ParseError(detail=f"{key} term must be [a, b, c, re, im], got {t!r}")
            a, b, c = (_nonneg_int(i, f"{key} index") for i in t[:3])
            if not all(1 <= i <= m for i in (a, b, c)):
                raise ParseError(detail=f"{key} term {t!r}: index out of range 1..{m}")
            if key != "d11" and not b < c:
                raise ParseError(detail=f"{key} term {t!r}: need b < c")
            coeff = GaussRational(_rational(t[3], f"{key} re"), _rational(t[4], f"{key} im"))
            parsed.append((a, b, c, coeff))
        terms[key] = parsed
    return StructureEquations(m, terms["d20"], terms["d11"], terms["d02"],
                              name=str(doc.get("name", "")))


def save_structure(S):
    def enc(terms):
        return [[a, b, c, _encode_rational(x.re), _encode_rational(x.im)] for a, b, c, x in terms]

    doc = {"name": S.name, "dim": S.m, "d20": enc(S.terms20), "d11": enc(S.terms11)}
    if S.terms02:
        doc["d02"] = enc(S.terms02)
    return doc


def dumps_structure(S):
    return format_document(save_structure(S))


def read_structure(path):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(detail=f"cannot read {path}: {e.strerror}") from None
    return load_structure(text)
