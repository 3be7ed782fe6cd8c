"""Constructors for the standard families of finite effect algebras.

Every family builds a raw label/sum table and pushes it through the full
validator, so a bug in a constructor surfaces as an axiom violation rather
than as a quietly wrong structure.

A family spec is a tuple:

    ("chain", n)                    0 < 1 < ... < n with truncated addition
    ("boolean", k)                  subsets of {1..k} under disjoint union
    ("interval", (u1, ..., uk))     integer boxes 0 <= v <= u, componentwise
    ("product", [spec, ...])        componentwise partial sum
    ("horizontal_sum", [spec, ...]) summands glued at zero and one
"""

from __future__ import annotations

from itertools import product as iproduct
from typing import Sequence

from .algebra import EffectAlgebra, resolve_max_size, validate_effect_algebra
from .errors import ParseError, SizeLimitExceeded

FamilySpec = tuple


def generate(spec: FamilySpec, *, max_size: int | None = None) -> EffectAlgebra:
    bound = resolve_max_size(max_size)
    labels, zero, one, sums = _build(spec, bound)
    return validate_effect_algebra(labels, zero, one, sums, max_size=bound)


def _check_size(n: int, bound: int, what: str) -> None:
    if n > bound:
        raise SizeLimitExceeded(f"{what} has {n} elements, exceeding the bound {bound}")


def _build(spec: FamilySpec, bound: int):
    if not isinstance(spec, (tuple, list)) or not spec:
        raise ParseError(f"malformed family spec {spec!r}")
    family = spec[0]
    if family == "chain":
        (n,) = spec[1:]
        if n < 1:
            raise ParseError("chain needs n >= 1")
        _check_size(n + 1, bound, f"chain({n})")
        labels = [str(k) for k in range(n + 1)]
        sums = [(str(i), str(j), str(i + j))
                for i in range(n + 1) for j in range(i, n + 1) if i + j <= n]
        return labels, "0", str(n), sums

    if family == "boolean":
        (k,) = spec[1:]
        if k < 1:
            raise ParseError("boolean needs k >= 1")
        _check_size(2 ** k, bound, f"boolean({k})")
        subsets = []
        for mask in range(2 ** k):
            subsets.append(frozenset(i + 1 for i in range(k) if mask >> i & 1))
        lbl = lambda s: "{" + ",".join(str(x) for x in sorted(s)) + "}"
        labels = [lbl(s) for s in subsets]
        sums = []
        for s in subsets:
            for t in subsets:
                if not (s & t):
                    sums.append((lbl(s), lbl(t), lbl(s | t)))
        return labels, lbl(frozenset()), lbl(frozenset(range(1, k + 1))), sums

    if family == "interval":
        (u,) = spec[1:]
        u = tuple(int(x) for x in u)
        if not u or any(x < 1 for x in u):
            raise ParseError("interval needs a unit with all components >= 1")
        size = 1
        for x in u:
            size *= x + 1
        _check_size(size, bound, f"interval{u}")
        points = list(iproduct(*(range(x + 1) for x in u)))
        lbl = lambda v: "(" + ",".join(str(x) for x in v) + ")"
        labels = [lbl(v) for v in points]
        sums = []
        for v in points:
            for w in points:
                s = tuple(a + b for a, b in zip(v, w))
                if all(a <= b for a, b in zip(s, u)):
                    sums.append((lbl(v), lbl(w), lbl(s)))
        return labels, lbl(tuple(0 for _ in u)), lbl(u), sums

    if family == "product":
        (subspecs,) = spec[1:]
        factors = [generate(s, max_size=bound) for s in subspecs]
        if not factors:
            raise ParseError("product needs at least one factor")
        size = 1
        for F in factors:
            size *= F.n
        _check_size(size, bound, "product")
        points = list(iproduct(*(range(F.n) for F in factors)))
        lbl = lambda v: "(" + ",".join(F.label(x) for F, x in zip(factors, v)) + ")"
        labels = [lbl(v) for v in points]
        sums = []
        for v in points:
            for w in points:
                parts = [F.add(a, b) for F, a, b in zip(factors, v, w)]
                if all(p is not None for p in parts):
                    sums.append((lbl(v), lbl(w), lbl(tuple(parts))))
        zero = lbl(tuple(F.zero for F in factors))
        one = lbl(tuple(F.one for F in factors))
        return labels, zero, one, sums

    if family == "horizontal_sum":
        (subspecs,) = spec[1:]
        summands = [generate(s, max_size=bound) for s in subspecs]
        if not summands:
            raise ParseError("horizontal sum needs at least one summand")
        size = 2 + sum(S.n - 2 for S in summands)
        _check_size(size, bound, "horizontal sum")

        def tr(i: int, a: int) -> str:
            S = summands[i]
            if a == S.zero:
                return "0"
            if a == S.one:
                return "1"
            return f"h{i}:{S.label(a)}"

        labels = ["0", "1"]
        for i, S in enumerate(summands):
            labels.extend(tr(i, a) for a in S.elements()
                          if a not in (S.zero, S.one))
        sums_set = {}
        for i, S in enumerate(summands):
            for a, b, c in S.defined_sums():
                sums_set[(tr(i, a), tr(i, b))] = tr(i, c)
        # zero acts neutrally on everything, including middles of other summands
        for l in labels:
            sums_set[("0", l)] = l
        sums = [(a, b, c) for (a, b), c in sums_set.items()]
        return labels, "0", "1", sums

    raise ParseError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# compact text form used by the command line


def parse_family_tokens(tokens: Sequence[str]) -> FamilySpec:
    """Parse e.g. ["chain", "3"], ["product", "chain2", "chain3"] or
    ["interval", "1", "2"] into a family spec."""
    if not tokens:
        raise ParseError("missing family")
    family = tokens[0].replace("-", "_")
    args = tokens[1:]
    if family in ("chain", "boolean"):
        if len(args) != 1:
            raise ParseError(f"{family} takes exactly one integer argument")
        return (family, _int(args[0]))
    if family == "interval":
        if not args:
            raise ParseError("interval needs unit components")
        return ("interval", tuple(_int(a) for a in args))
    if family in ("product", "horizontal_sum"):
        if not args:
            raise ParseError(f"{family} needs member specs")
        return (family, [_parse_compact(a) for a in args])
    raise ParseError(f"unknown family {tokens[0]!r}")


def _parse_compact(token: str) -> FamilySpec:
    """One-word member specs: chain3, boolean2, interval:1,2."""
    if token.startswith("chain"):
        return ("chain", _int(token[len("chain"):]))
    if token.startswith("boolean"):
        return ("boolean", _int(token[len("boolean"):]))
    if token.startswith("interval:"):
        parts = token[len("interval:"):].split(",")
        return ("interval", tuple(_int(p) for p in parts))
    raise ParseError(f"cannot parse member spec {token!r}")


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}") from None
