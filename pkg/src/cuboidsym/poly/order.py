"""Monomial orders.

An order is a value object; :meth:`MonomialOrder.key` turns it into a sort key
for one variable table, such that ``u > v`` in the order iff ``key(u) > key(v)``.

Text form (used by the CLI and in JSON output)::

    lex                      lex over the table order
    grevlex(d1,d2,L,x1)      grevlex with the listed variables ranked first
    wgrevlex(E10,E20:2,L)    grevlex graded by weighted degree (default weight 1)
    block(lex(x) ; grevlex(y,z))

In a ranked order the listed variables are most significant, in the given
sequence; unlisted ones follow in table order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from ..errors import ParseError, UsageError
from .table import VarTable

KINDS = ("lex", "grevlex", "block")


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    ranking: tuple[str, ...] | None = None
    blocks: tuple["MonomialOrder", ...] = ()
    weights: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"unknown order kind {self.kind!r}")
        if self.weights:
            if self.kind != "grevlex":
                raise UsageError("only grevlex orders take weights")
            object.__setattr__(self, "weights", tuple((str(n), int(w)) for n, w in self.weights))
            if any(w < 1 for _, w in self.weights):
                raise UsageError("weights must be positive integers")
        if self.kind == "block":
            if not self.blocks:
                raise UsageError("block order needs at least one block")
            seen = set()
            for b in self.blocks:
                if b.kind == "block":
                    raise UsageError("nested block orders are not supported")
                if not b.ranking:
                    raise UsageError("every block must list its variables")
                if seen & set(b.ranking):
                    raise UsageError("blocks must be disjoint")
                seen |= set(b.ranking)
        elif self.blocks:
            raise UsageError(f"{self.kind} order takes no blocks")
        if self.ranking is not None:
            object.__setattr__(self, "ranking", tuple(self.ranking))
            if len(set(self.ranking)) != len(self.ranking):
                raise UsageError("duplicate variable in order ranking")

    @classmethod
    def lex(cls, ranking: Sequence[str] | None = None) -> "MonomialOrder":
        return cls("lex", tuple(ranking) if ranking is not None else None)

    @classmethod
    def grevlex(cls, ranking: Sequence[str] | None = None) -> "MonomialOrder":
        return cls("grevlex", tuple(ranking) if ranking is not None else None)

    @classmethod
    def weighted_grevlex(cls, ranking: Sequence[str], weights: dict[str, int]) -> "MonomialOrder":
        """Grevlex graded by ``sum(weights[v] * exponent)``; unlisted weights are 1."""
        ranking = tuple(ranking)
        extra = set(weights) - set(ranking)
        if extra:
            raise UsageError(f"weighted variables must be ranked: {sorted(extra)}")
        return cls("grevlex", ranking, (), tuple((n, weights[n]) for n in ranking if weights.get(n, 1) != 1))

    def weight_vector(self, vt: VarTable) -> tuple[int, ...]:
        w = dict(self.weights)
        for nm in w:
            vt.index(nm)
        return tuple(w.get(nm, 1) for nm in vt.names)

    @classmethod
    def block(cls, *blocks: "MonomialOrder") -> "MonomialOrder":
        return cls("block", None, tuple(blocks))

    @classmethod
    def elimination(cls, vt: VarTable, eliminate: Sequence[str], sub_kind: str = "grevlex") -> "MonomialOrder":
        """Block order with ``eliminate`` in the first block, the rest after it."""
        elim = [nm for nm in vt.names if nm in set(eliminate)]
        missing = set(eliminate) - set(elim)
        if missing:
            raise UsageError(f"cannot eliminate unknown variables {sorted(missing)}")
        rest = [nm for nm in vt.names if nm not in set(elim)]
        blocks = [cls(sub_kind, tuple(b)) for b in (elim, rest) if b]
        return cls.block(*blocks)

    def variable_ranking(self, vt: VarTable) -> tuple[str, ...]:
        """All table variables from most to least significant."""
        if self.kind == "block":
            listed = [nm for b in self.blocks for nm in b.ranking]
        else:
            listed = list(self.ranking or ())
        for nm in listed:
            vt.index(nm)
        chosen = set(listed)
        return tuple(listed) + tuple(nm for nm in vt.names if nm not in chosen)

    def key(self, vt: VarTable) -> Callable[[tuple[int, ...]], tuple]:
        return _key_function(self, vt)

    def eliminates(self, vt: VarTable, variables) -> bool:
        """True when every monomial containing ``variables`` beats all that do not."""
        variables = set(variables)
        if not variables:
            return True
        ranking = self.variable_ranking(vt)
        if self.kind == "lex":
            return set(ranking[: len(variables)]) == variables
        if self.kind == "block":
            covered = set()
            for b in self.blocks:
                if covered == variables:
                    break
                covered |= set(b.ranking)
            return covered == variables
        return False

    def describe(self) -> str:
        if self.kind == "block":
            return "block(" + " ; ".join(b.describe() for b in self.blocks) + ")"
        if self.weights:
            w = dict(self.weights)
            body = ",".join(f"{nm}:{w[nm]}" if nm in w else nm for nm in self.ranking)
            return f"wgrevlex({body})"
        if self.ranking:
            return f"{self.kind}({','.join(self.ranking)})"
        return self.kind

    def __str__(self):
        return self.describe()


def _simple_key(kind, perm, weights=None):
    if kind == "lex":
        def key(mono):
            return tuple(mono[i] for i in perm)
    elif weights is None:
        rev = perm[::-1]

        def key(mono):
            return (sum(mono[i] for i in perm), tuple(-mono[i] for i in rev))
    else:
        rev = perm[::-1]
        pw = [(i, weights[i]) for i in perm]

        def key(mono):
            return (sum(mono[i] * w for i, w in pw), tuple(-mono[i] for i in rev))
    return key


@lru_cache(maxsize=256)
def _key_function(order: MonomialOrder, vt: VarTable):
    ranking = order.variable_ranking(vt)
    if order.kind != "block":
        weights = order.weight_vector(vt) if order.weights else None
        return _simple_key(order.kind, tuple(vt.index(nm) for nm in ranking), weights)
    parts = []
    covered = set()
    for b in order.blocks:
        weights = b.weight_vector(vt) if b.weights else None
        parts.append(_simple_key(b.kind, tuple(vt.index(nm) for nm in b.ranking), weights))
        covered |= set(b.ranking)
    rest = tuple(vt.index(nm) for nm in vt.names if nm not in covered)
    if rest:
        parts.append(_simple_key("grevlex", rest))

    def key(mono):
        return tuple(p(mono) for p in parts)

    return key


_SIMPLE_RE = re.compile(r"\s*(lex|grevlex|wgrevlex)\s*(?:\(([^()]*)\))?\s*\Z")


def parse_order(text: str) -> MonomialOrder:
    """Inverse of :meth:`MonomialOrder.describe`."""
    s = text.strip()
    if s.startswith("block"):
        m = re.fullmatch(r"block\s*\((.*)\)\s*", s, re.S)
        if not m:
            raise ParseError(f"malformed block order {text!r}", text)
        return MonomialOrder.block(*(parse_order(part) for part in m.group(1).split(";")))
    m = _SIMPLE_RE.match(s)
    if not m:
        raise ParseError(f"malformed monomial order {text!r}", text)
    ranking = None
    if m.group(2) is not None:
        ranking = tuple(v.strip() for v in m.group(2).split(",") if v.strip())
    if m.group(1) != "wgrevlex":
        return MonomialOrder(m.group(1), ranking)
    names, weights = [], {}
    for item in ranking or ():
        nm, _, w = item.partition(":")
        nm = nm.strip()
        names.append(nm)
        if w:
            try:
                weights[nm] = int(w)
            except ValueError:
                raise ParseError(f"bad weight {w!r} in {text!r}", text) from None
    return MonomialOrder.weighted_grevlex(names, weights)


GREVLEX = MonomialOrder.grevlex()
LEX = MonomialOrder.lex()
