"""Variable tables: the ordered set of names a polynomial ranges over.

A table may carry a matrix layout (rows x columns of variables permuted by the
column action), a set of permutation-invariant names such as ``L``, and a set of
abstract elementary variables ``E<alpha>`` standing for elementary
multisymmetric polynomials.  Elementary variables are invariant too.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from ..errors import UsageError

_DEFAULT_PREFIXES = ("x", "y", "z", "u", "v", "w")


def elementary_name(alpha: Sequence[int]) -> str:
    """``E21`` for two-row indices with single-digit parts, else ``E[a,b,...]``."""
    if len(alpha) == 2 and all(0 <= a <= 9 for a in alpha):
        return "E" + "".join(str(a) for a in alpha)
    return "E[" + ",".join(str(a) for a in alpha) + "]"


def _elementary_sort_key(alpha):
    support = tuple(i for i, a in enumerate(alpha) if a)
    if len(support) == 1:
        return (1, support, alpha[support[0]])
    # mixed indices: first-row degree descending, remaining parts ascending
    return (len(support), support, -alpha[0]) + tuple(alpha[1:])


def elementary_indices(m: int, n: int) -> list[tuple[int, ...]]:
    """All multi-indices with ``0 < |alpha| <= n`` in the package's fixed order.

    Single-row indices come first (row by row, degree ascending), then mixed
    ones.  For ``m=2, n=3`` this is E10 E20 E30 E01 E02 E03 E21 E11 E12.
    """
    found = [
        a
        for a in itertools.product(range(n + 1), repeat=m)
        if 0 < sum(a) <= n
    ]
    return sorted(found, key=_elementary_sort_key)


class VarTable:
    """Immutable ordered list of distinct variable names with optional layout."""

    __slots__ = ("names", "positions", "invariant", "elementary", "shape", "_index", "_key", "_hash")

    def __init__(
        self,
        names: Iterable[str],
        positions: Mapping[str, tuple[int, int]] | None = None,
        invariant: Iterable[str] = (),
        elementary: Mapping[str, Sequence[int]] | None = None,
    ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate variable names in {names}")
        for nm in names:
            if not nm or any(c.isspace() for c in nm):
                raise UsageError(f"invalid variable name {nm!r}")
        index = {nm: i for i, nm in enumerate(names)}
        positions = dict(positions or {})
        elementary = {k: tuple(v) for k, v in (elementary or {}).items()}
        invariant = frozenset(invariant) | frozenset(elementary)
        for nm in list(positions) + list(invariant):
            if nm not in index:
                raise UsageError(f"layout refers to unknown variable {nm!r}")

        shape = None
        if positions:
            cells = list(positions.values())
            if len(set(cells)) != len(cells):
                raise UsageError("matrix positions must be unique")
            m = max(r for r, _ in cells)
            n = max(c for _, c in cells)
            if sorted(cells) != [(r, c) for r in range(1, m + 1) for c in range(1, n + 1)]:
                raise UsageError("matrix positions must cover a full m x n grid")
            shape = (m, n)
            loose = [nm for nm in names if nm not in positions and nm not in invariant]
            if loose:
                raise UsageError(f"variables {loose} are neither matrix entries nor invariant")
            clash = invariant & set(positions)
            if clash:
                raise UsageError(f"variables {sorted(clash)} are both matrix entries and invariant")
            for nm, alpha in elementary.items():
                if len(alpha) != m or not 0 < sum(alpha) <= n:
                    raise UsageError(f"elementary variable {nm!r} has bad index {alpha}")

        self.names = names
        self.positions = positions
        self.invariant = invariant
        self.elementary = elementary
        self.shape = shape
        self._index = index
        self._key = (
            names,
            tuple(sorted(positions.items())),
            tuple(sorted(invariant)),
            tuple(sorted(elementary.items())),
        )
        self._hash = hash(self._key)

    @classmethod
    def matrix(
        cls,
        m: int,
        n: int,
        prefixes: Sequence[str] | None = None,
        invariants: Sequence[str] = (),
        with_elementary: bool = True,
    ) -> "VarTable":
        """Table for an ``m x n`` matrix named row-prefix + column number.

        The matrix entries come first (row-major), then ``invariants``, then the
        elementary variables when ``with_elementary`` is set.
        """
        if m < 1 or n < 1:
            raise UsageError("matrix dimensions must be positive")
        if prefixes is None:
            if m > len(_DEFAULT_PREFIXES):
                raise UsageError("give explicit row prefixes for more than six rows")
            prefixes = _DEFAULT_PREFIXES[:m]
        if len(prefixes) != m:
            raise UsageError("need one prefix per row")
        names, positions = [], {}
        for i, pre in enumerate(prefixes, start=1):
            for j in range(1, n + 1):
                nm = f"{pre}{j}"
                names.append(nm)
                positions[nm] = (i, j)
        names.extend(invariants)
        elementary = {}
        if with_elementary:
            for alpha in elementary_indices(m, n):
                nm = elementary_name(alpha)
                names.append(nm)
                elementary[nm] = alpha
        return cls(names, positions, invariants, elementary)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, VarTable):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VarTable({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown variable {name!r}") from None

    @property
    def has_matrix(self) -> bool:
        return self.shape is not None

    def require_matrix(self) -> tuple[int, int]:
        if self.shape is None:
            raise UsageError("variable table has no matrix layout")
        return self.shape

    def matrix_name(self, row: int, col: int) -> str:
        for nm, pos in self.positions.items():
            if pos == (row, col):
                return nm
        raise UsageError(f"no matrix entry at ({row}, {col})")

    def elementary_var(self, alpha: Sequence[int]) -> str:
        alpha = tuple(alpha)
        for nm, a in self.elementary.items():
            if a == alpha:
                return nm
        raise UsageError(f"table has no elementary variable for {list(alpha)}")

    def row_slices(self) -> list[list[int]]:
        """Variable indices of each matrix row, in column order."""
        m, n = self.require_matrix()
        rows = [[0] * n for _ in range(m)]
        for nm, (i, j) in self.positions.items():
            rows[i - 1][j - 1] = self._index[nm]
        return rows
