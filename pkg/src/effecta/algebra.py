"""Finite effect algebras.

An effect algebra here is a finite carrier with a partial commutative,
associative sum, a zero, a unit, unique orthosupplements and the positivity
law (a + 1 defined forces a = 0).  Everything downstream (states, function
representations, smearing, spectral measures) consumes the validated
structure built by :func:`validate_effect_algebra`.

Elements are dense integer ids ``0..n-1``; human-readable labels live in a
parallel tuple and appear in every error witness.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    AxiomViolation,
    BooleanStructureFailure,
    NonUniqueSupplement,
    OrderNotAntisymmetric,
    SizeLimitExceeded,
)

DEFAULT_MAX_SIZE = 64
ENV_MAX_SIZE = "EFFECTA_MAX_SIZE"


def resolve_max_size(explicit: int | None = None) -> int:
    """Size bound for exhaustive checks: explicit argument, else the
    EFFECTA_MAX_SIZE environment variable, else 64."""
    if explicit is not None:
        return explicit
    raw = os.environ.get(ENV_MAX_SIZE)
    if raw is not None:
        return int(raw)
    return DEFAULT_MAX_SIZE


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class EffectAlgebra:
    """Validated finite effect algebra.

    Instances are immutable by convention and should only be created through
    :func:`validate_effect_algebra` (or the generator families built on it).
    """

    __slots__ = (
        "labels", "zero", "one",
        "_sum", "_comp", "_minus", "_down", "_up",
        "_index", "_meet_cache", "_join_cache", "_rdp_cache", "_sharp_cache",
    )

    def __init__(self, labels, zero, one, sum_table, comp, minus, down, up):
        self.labels: tuple[str, ...] = labels
        self.zero: int = zero
        self.one: int = one
        self._sum = sum_table          # tuple[tuple[int | None]]
        self._comp = comp              # tuple[int]
        self._minus = minus            # _minus[b][a] = c with a + c = b, else None
        self._down = down              # bitmask of {x : x <= a} per element
        self._up = up
        self._index = {lbl: i for i, lbl in enumerate(labels)}
        self._meet_cache: dict[tuple[int, int], int | None] = {}
        self._join_cache: dict[tuple[int, int], int | None] = {}
        self._rdp_cache: "RdpResult | None" = None
        self._sharp_cache: dict[bool, "SharpSet"] = {}

    # -- basic structure ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    def elements(self) -> range:
        return range(len(self.labels))

    def label(self, a: int) -> str:
        return self.labels[a]

    def index(self, label: str) -> int:
        return self._index[label]

    def add(self, a: int, b: int) -> Optional[int]:
        """Partial sum; None when undefined."""
        return self._sum[a][b]

    def comp(self, a: int) -> int:
        """The unique orthosupplement."""
        return self._comp[a]

    def defined_sums(self) -> Iterator[tuple[int, int, int]]:
        """All (a, b, a+b) with a <= b as indices; each unordered pair once."""
        for a in range(self.n):
            row = self._sum[a]
            for b in range(a, self.n):
                c = row[b]
                if c is not None:
                    yield a, b, c

    # -- derived order ------------------------------------------------------

    def leq(self, a: int, b: int) -> bool:
        return bool(self._down[b] >> a & 1)

    def minus(self, b: int, a: int) -> Optional[int]:
        """The unique c with a + c = b, or None when a is not below b."""
        return self._minus[b][a]

    def down_mask(self, a: int) -> int:
        return self._down[a]

    def meet(self, a: int, b: int) -> Optional[int]:
        if a > b:
            a, b = b, a
        key = (a, b)
        try:
            return self._meet_cache[key]
        except KeyError:
            pass
        lowers = self._down[a] & self._down[b]
        result = None
        for x in _bits(lowers):
            if self._down[x] == lowers:
                result = x
                break
        self._meet_cache[key] = result
        return result

    def join(self, a: int, b: int) -> Optional[int]:
        if a > b:
            a, b = b, a
        key = (a, b)
        try:
            return self._join_cache[key]
        except KeyError:
            pass
        uppers = self._up[a] & self._up[b]
        result = None
        for x in _bits(uppers):
            if self._up[x] == uppers:
                result = x
                break
        self._join_cache[key] = result
        return result

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"EffectAlgebra(n={self.n}, zero={self.labels[self.zero]!r}, one={self.labels[self.one]!r})"


def iterated_sum(M: EffectAlgebra, parts: Sequence[int]) -> Optional[int]:
    """Left fold of the partial sum; None as soon as a prefix is undefined.

    For valid inputs the result is order independent (generalized
    associativity), so the fold order is just a convention.
    """
    acc = M.zero
    for p in parts:
        acc = M.add(acc, p)
        if acc is None:
            return None
    return acc


# ---------------------------------------------------------------------------
# validation


def validate_effect_algebra(
    labels: Sequence[str],
    zero: str,
    one: str,
    sums: Iterable[tuple[str, str, str]],
    *,
    max_size: int | None = None,
) -> EffectAlgebra:
    """Check the four defining axioms exhaustively and build the algebra.

    ``sums`` lists defined sums as label triples (a, b, a+b).  A pair listed
    in one order only is treated as defined in both (the table of a
    commutative operation); listing both orders with different results is a
    commutativity violation.
    """
    labels = tuple(labels)
    n = len(labels)
    bound = resolve_max_size(max_size)
    if n > bound:
        raise SizeLimitExceeded(f"{n} elements exceeds the size bound {bound}")
    if len(set(labels)) != n:
        dup = [l for l in labels if labels.count(l) > 1]
        raise AxiomViolation("i", (dup[0],), "duplicate element label")
    index = {lbl: i for i, lbl in enumerate(labels)}
    if zero not in index or one not in index:
        raise AxiomViolation("iv", (zero, one), "zero/one not among the elements")
    zi, oi = index[zero], index[one]
    if zi == oi:
        raise AxiomViolation("iv", (zero,), "zero and one coincide")

    table: list[list[int | None]] = [[None] * n for _ in range(n)]
    for la, lb, lc in sums:
        try:
            a, b, c = index[la], index[lb], index[lc]
        except KeyError as exc:
            raise AxiomViolation("i", (la, lb, lc), f"unknown label {exc}") from None
        if table[a][b] is not None and table[a][b] != c:
            raise AxiomViolation("i", (la, lb), "conflicting entries for the same pair")
        table[a][b] = c

    # symmetrize: a pair given in one order is defined in both
    for a in range(n):
        for b in range(a, n):
            x, y = table[a][b], table[b][a]
            if x is not None and y is not None and x != y:
                raise AxiomViolation("i", (labels[a], labels[b]),
                                     f"{labels[x]} vs {labels[y]}")
            if x is None:
                table[a][b] = y
            elif y is None:
                table[b][a] = x

    # axiom (ii): a+b and (a+b)+c defined  iff  b+c and a+(b+c) defined, equal
    for a in range(n):
        ta = table[a]
        for b in range(n):
            ab = ta[b]
            row_b = table[b]
            for c in range(n):
                bc = row_b[c]
                left = table[ab][c] if ab is not None else None
                right = ta[bc] if bc is not None else None
                if left != right:
                    raise AxiomViolation(
                        "ii", (labels[a], labels[b], labels[c]),
                        f"(a+b)+c = {None if left is None else labels[left]}, "
                        f"a+(b+c) = {None if right is None else labels[right]}")

    # axiom (iii): unique orthosupplement
    comp: list[int] = [0] * n
    for a in range(n):
        cands = [x for x in range(n) if table[a][x] == oi]
        if not cands:
            raise AxiomViolation("iii", (labels[a],), "no orthosupplement")
        if len(cands) > 1:
            raise NonUniqueSupplement(labels[a], tuple(labels[x] for x in cands))
        comp[a] = cands[0]

    # axiom (iv): a + 1 defined only for a = 0
    for a in range(n):
        if a != zi and table[a][oi] is not None:
            raise AxiomViolation("iv", (labels[a],), "a + 1 is defined")

    # derived order witnesses; uniqueness of b - a is implied by the axioms
    # but checked anyway because it is free
    minus: list[list[int | None]] = [[None] * n for _ in range(n)]
    for a in range(n):
        for c in range(n):
            b = table[a][c]
            if b is None:
                continue
            prev = minus[b][a]
            if prev is not None and prev != c:
                raise AxiomViolation(
                    "difference-uniqueness",
                    (labels[a], labels[b], labels[prev], labels[c]),
                    "two witnesses for the same difference")
            minus[b][a] = c

    down = [0] * n
    up = [0] * n
    for b in range(n):
        mask = 0
        mb = minus[b]
        for a in range(n):
            if mb[a] is not None:
                mask |= 1 << a
                up[a] |= 1 << b
        down[b] = mask

    for a in range(n):
        for b in range(a + 1, n):
            if down[a] >> b & 1 and down[b] >> a & 1:
                raise OrderNotAntisymmetric((labels[a], labels[b]))

    return EffectAlgebra(
        labels, zi, oi,
        tuple(tuple(row) for row in table),
        tuple(comp),
        tuple(tuple(row) for row in minus),
        tuple(down), tuple(up),
    )


# ---------------------------------------------------------------------------
# 2x2 refinement (interpolation) property


@dataclass(frozen=True)
class RefinementMatrix:
    """Witness for one refinement instance: row sums give (a1, a2), column
    sums give (b1, b2)."""
    a1: int
    a2: int
    b1: int
    b2: int
    c11: int
    c12: int
    c21: int
    c22: int


@dataclass(frozen=True)
class RdpResult:
    holds: bool
    witness: tuple[int, int, int, int] | None
    algebra: EffectAlgebra

    def refinement(self, a1: int, a2: int, b1: int, b2: int) -> RefinementMatrix | None:
        M = self.algebra
        if M.add(a1, a2) is None or M.add(a1, a2) != M.add(b1, b2):
            raise ValueError("the two pairs do not share a defined sum")
        return _refine(M, a1, a2, b1, b2)

    def witness_labels(self) -> tuple[str, str, str, str] | None:
        if self.witness is None:
            return None
        return tuple(self.algebra.label(x) for x in self.witness)  # type: ignore[return-value]


def _refine(M: EffectAlgebra, a1: int, a2: int, b1: int, b2: int) -> RefinementMatrix | None:
    """Search a 2x2 refinement.  Fixing the top-left entry determines the
    rest through differences, so one scan over candidates suffices; the first
    witness in element order is returned."""
    lowers = M.down_mask(a1) & M.down_mask(b1)
    for c11 in _bits(lowers):
        c12 = M.minus(a1, c11)
        c21 = M.minus(b1, c11)
        if not M.leq(c21, a2):
            continue
        c22 = M.minus(a2, c21)
        if M.add(c12, c22) == b2:
            return RefinementMatrix(a1, a2, b1, b2, c11, c12, c21, c22)
    return None


def check_rdp(M: EffectAlgebra) -> RdpResult:
    """Decide whether every pair of equal defined sums admits a 2x2
    refinement.  The first failing quadruple in element order is the witness.

    The verdict is cached on the algebra; downstream code calls this freely."""
    if M._rdp_cache is not None:
        return M._rdp_cache
    decomp: list[list[tuple[int, int]]] = [[] for _ in range(M.n)]
    for a in range(M.n):
        for b in range(M.n):
            v = M.add(a, b)
            if v is not None:
                decomp[v].append((a, b))
    result = RdpResult(True, None, M)
    for v in range(M.n):
        pairs = decomp[v]
        for a1, a2 in pairs:
            for b1, b2 in pairs:
                if _refine(M, a1, a2, b1, b2) is None:
                    result = RdpResult(False, (a1, a2, b1, b2), M)
                    M._rdp_cache = result
                    return result
    M._rdp_cache = result
    return result


# ---------------------------------------------------------------------------
# sharp elements


@dataclass(frozen=True)
class SharpSet:
    """The elements a with a /\\ a' existing and equal to zero, together with
    meet/join tables restricted to them.  When the parent algebra has the
    refinement property the Boolean-algebra laws have been verified
    exhaustively and ``boolean_checked`` is True."""
    members: tuple[int, ...]
    meet: dict[tuple[int, int], int | None]
    join: dict[tuple[int, int], int | None]
    boolean_checked: bool
    algebra: EffectAlgebra

    @property
    def atoms(self) -> tuple[int, ...]:
        """Minimal nonzero sharp elements (under the algebra order)."""
        M = self.algebra
        out = []
        for a in self.members:
            if a == M.zero:
                continue
            if any(b != M.zero and b != a and M.leq(b, a) for b in self.members):
                continue
            out.append(a)
        return tuple(out)


def sharp_elements(M: EffectAlgebra, *, rdp: bool | None = None) -> SharpSet:
    if rdp is None:
        rdp = check_rdp(M).holds
    cached = M._sharp_cache.get(rdp)
    if cached is not None:
        return cached
    members = tuple(a for a in M.elements() if M.meet(a, M.comp(a)) == M.zero)
    meet = {}
    join = {}
    for a in members:
        for b in members:
            meet[(a, b)] = M.meet(a, b)
            join[(a, b)] = M.join(a, b)
    if rdp:
        _verify_boolean(M, members, meet, join)
    result = SharpSet(members, meet, join, rdp, M)
    M._sharp_cache[rdp] = result
    return result


def _verify_boolean(M, members, meet, join) -> None:
    lab = M.label
    if M.zero not in members or M.one not in members:
        raise BooleanStructureFailure("bounds", (lab(M.zero), lab(M.one)))
    for a in members:
        if M.comp(a) not in members:
            raise BooleanStructureFailure("complement-closure", (lab(a),))
        if meet[(a, M.comp(a))] != M.zero:
            raise BooleanStructureFailure("a /\\ a' = 0", (lab(a),))
        if join[(a, M.comp(a))] != M.one:
            raise BooleanStructureFailure("a \\/ a' = 1", (lab(a),))
    for a in members:
        for b in members:
            m, j = meet[(a, b)], join[(a, b)]
            if m is None or m not in members:
                raise BooleanStructureFailure("meet-closure", (lab(a), lab(b)))
            if j is None or j not in members:
                raise BooleanStructureFailure("join-closure", (lab(a), lab(b)))
            # De Morgan
            if M.comp(m) != join[(M.comp(a), M.comp(b))]:
                raise BooleanStructureFailure("de-morgan", (lab(a), lab(b)))
            # absorption
            if meet[(a, j)] != a or join[(a, m)] != a:
                raise BooleanStructureFailure("absorption", (lab(a), lab(b)))
    for a in members:
        for b in members:
            for c in members:
                if meet[(a, join[(b, c)])] != join[(meet[(a, b)], meet[(a, c)])]:
                    raise BooleanStructureFailure(
                        "distributivity", (lab(a), lab(b), lab(c)))
                if meet[(meet[(a, b)], c)] != meet[(a, meet[(b, c)])]:
                    raise BooleanStructureFailure(
                        "meet-associativity", (lab(a), lab(b), lab(c)))


# ---------------------------------------------------------------------------
# MV-structure detection


@dataclass(frozen=True)
class MVStructure:
    """A total truncated sum extending the partial one and satisfying the
    eight MV laws; ``star`` is the orthosupplement table."""
    oplus: tuple[tuple[int, ...], ...]
    star: tuple[int, ...]
    algebra: EffectAlgebra


@dataclass(frozen=True)
class MvFailure:
    kind: str                      # "not-a-lattice" | "axiom"
    axiom: str | None
    witness: tuple


def _mv_axiom_failure(M: EffectAlgebra, oplus) -> tuple[str, tuple] | None:
    """First failing MV law for a candidate total operation, or None."""
    n = M.n
    star = M._comp
    zi, oi = M.zero, M.one
    lab = M.label
    # consistency with the partial sum where that is defined
    for a in range(n):
        for b in range(n):
            s = M.add(a, b)
            if s is not None and oplus[a][b] != s:
                return "consistency", (lab(a), lab(b))
    for a in range(n):
        for b in range(n):
            if oplus[a][b] != oplus[b][a]:
                return "i", (lab(a), lab(b))
    for a in range(n):
        for b in range(n):
            ab = oplus[a][b]
            for c in range(n):
                if oplus[ab][c] != oplus[a][oplus[b][c]]:
                    return "ii", (lab(a), lab(b), lab(c))
    for a in range(n):
        if oplus[a][zi] != a:
            return "iii", (lab(a),)
        if oplus[a][oi] != oi:
            return "iv", (lab(a),)
        if star[star[a]] != a:
            return "v", (lab(a),)
        if oplus[a][star[a]] != oi:
            return "vi", (lab(a),)
    if star[zi] != oi:
        return "vii", (lab(zi),)
    for a in range(n):
        for b in range(n):
            left = oplus[star[oplus[star[a]][b]]][b]
            right = oplus[star[oplus[a][star[b]]]][a]
            if left != right:
                return "viii", (lab(a), lab(b))
    return None


def detect_mv(M: EffectAlgebra) -> MVStructure | MvFailure:
    """Try to extend the partial sum to a total MV operation.

    Two closures of the partial sum are tried: the truncated sum
    a (+) b = a + (a' /\\ b), and completion by the join where the partial sum
    is undefined.  If neither passes all eight laws the failure of the
    candidate that got furthest is reported.
    """
    for a in range(M.n):
        for b in range(a, M.n):
            if M.meet(a, b) is None or M.join(a, b) is None:
                return MvFailure("not-a-lattice", None, (M.label(a), M.label(b)))

    def truncated(a: int, b: int) -> int:
        x = M.meet(M.comp(a), b)
        return M.add(a, x)  # type: ignore[return-value]  # x <= a' so defined

    def join_completed(a: int, b: int) -> int:
        s = M.add(a, b)
        return s if s is not None else M.join(a, b)  # type: ignore[return-value]

    order = ["consistency", "i", "ii", "iii", "iv", "v", "vi", "vii", "viii"]
    best: tuple[int, str, tuple] | None = None
    for formula in (truncated, join_completed):
        oplus = tuple(tuple(formula(a, b) for b in range(M.n)) for a in range(M.n))
        failure = _mv_axiom_failure(M, oplus)
        if failure is None:
            return MVStructure(oplus, M._comp, M)
        axiom, witness = failure
        score = order.index(axiom)
        if best is None or score > best[0]:
            best = (score, axiom, witness)
    assert best is not None
    return MvFailure("axiom", best[1], best[2])
