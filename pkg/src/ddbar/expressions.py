"""Nested construction expressions, e.g.

    blowup(prodcp(builtin:torus:2, k=1), center=builtin:point, codim=3)

Operators: ``blowup(<m>, center=<m>, codim=R)``, ``proj(<m>, rank=R)``,
``prodcp(<m>, k=K)``, ``excdiv(<m>, codim=R)``.  A leaf ``<m>`` is
``builtin:NAME`` or ``file:PATH`` (a ``.ddm`` document).
"""

import os
import re

from .constructions import blow_up, exceptional_divisor, product_with_cpk, projectivize
from .errors import DdbarError, ParseError
from .registry import builtin_model, read_model

_TOKEN = re.compile(r"\s*(?:([(),=])|([^(),=]+))")

# operator -> (callable, {keyword: kind}); the first positional argument is always a model
OPERATORS = {
    "blowup": (lambda m, center, codim: blow_up(m, center, codim), {"center": "model", "codim": "int"}),
    "proj": (lambda m, rank: projectivize(m, rank), {"rank": "int"}),
    "prodcp": (lambda m, k: product_with_cpk(m, k), {"k": "int"}),
    "excdiv": (lambda m, codim: exceptional_divisor(m, codim), {"codim": "int"}),
}


def tokenize(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(detail=f"unexpected input at offset {pos}: {text[pos:]!r}")
        punct, atom = match.groups()
        if punct:
            out.append(punct)
        elif atom.strip():
            out.append(atom.strip())
        pos = match.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(detail=f"expected {expected or 'a term'}, got {tok or 'end of input'!r}")
        self.i += 1
        return tok

    def expr(self):
        head = self.take()
        if head in "(),=":
            raise ParseError(detail=f"unexpected {head!r}")
        if self.peek() != "(":
            return ("leaf", head)
        if head not in OPERATORS:
            raise ParseError(detail=f"unknown operator {head!r}; expected one of {sorted(OPERATORS)}")
        self.take("(")
        positional, keywords = [], {}
        while True:
            if self.i + 1 < len(self.tokens) and self.tokens[self.i + 1] == "=":
                key = self.take()
                self.take("=")
                if key in keywords:
                    raise ParseError(detail=f"{head}: duplicate argument {key!r}")
                keywords[key] = self.expr()
            else:
                positional.append(self.expr())
            if self.peek() == ",":
                self.take(",")
                continue
            self.take(")")
            break
        return ("call", head, positional, keywords)

    def parse(self):
        tree = self.expr()
        if self.peek() is not None:
            raise ParseError(detail=f"trailing input starting at {self.peek()!r}")
        return tree


def parse(text):
    return _Parser(tokenize(text)).parse()


def load_source(leaf, base_dir=None):
    """Resolve ``builtin:NAME`` or ``file:PATH``."""
    kind, _, ref = leaf.partition(":")
    if kind == "builtin" and ref:
        try:
            return builtin_model(ref)
        except DdbarError as e:
            raise ParseError(detail=e.detail) from None
    if kind == "file" and ref:
        if base_dir and not os.path.isabs(ref):
            ref = os.path.join(base_dir, ref)
        return read_model(ref)
    raise ParseError(detail=f"model source must be builtin:NAME or file:PATH, got {leaf!r}")


def _evaluate(tree, base_dir):
    if tree[0] == "leaf":
        return load_source(tree[1], base_dir)
    _, op, positional, keywords = tree
    fn, params = OPERATORS[op]
    if len(positional) != 1:
        raise ParseError(detail=f"{op}: expected exactly one positional model argument")
    if set(keywords) != set(params):
        raise ParseError(detail=f"{op}: expected arguments {sorted(params)}, got {sorted(keywords)}")
    kwargs = {}
    for key, kind in params.items():
        sub = keywords[key]
        if kind == "model":
            kwargs[key] = _evaluate(sub, base_dir)
        else:
            if sub[0] != "leaf" or not re.fullmatch(r"-?\d+", sub[1]):
                raise ParseError(detail=f"{op}: {key} must be an integer")
            kwargs[key] = int(sub[1])
    return fn(_evaluate(positional[0], base_dir), **kwargs)


def evaluate(text, base_dir=None):
    """Evaluate a construction expression to a model.

    Syntax problems raise :class:`ParseError`; violated construction
    preconditions raise :class:`ConstructionError`.
    """
    return _evaluate(parse(text), base_dir)
