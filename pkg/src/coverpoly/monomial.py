"""Sparse monomials keyed by vertex label."""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from coverpoly.errors import InputError

_FACTOR = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_.']*)\s*(?:\^\s*(\d+))?\s*$")


class Monomial:
    """An immutable monomial ``prod v^e`` over string-labeled variables.

    Zero exponents are never stored; ``Monomial()`` is the unit monomial 1.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict[str, int] = {}
        for v, e in items:
            if e < 0:
                raise ValueError(f"negative exponent for {v}")
            if e:
                acc[v] = acc.get(v, 0) + e
        self._items = tuple(sorted(acc.items()))
        self._hash = hash(self._items)

    @classmethod
    def from_support(cls, support: Iterable[str]) -> Monomial:
        """The squarefree monomial with the given support."""
        return cls((v, 1) for v in set(support))

    @classmethod
    def from_vector(cls, vec: Sequence[int], variables: Sequence[str]) -> Monomial:
        return cls((v, int(e)) for v, e in zip(variables, vec))

    @classmethod
    def parse(cls, text: str) -> Monomial:
        """Parse ``"y1^2*y3*y5"``; ``"1"`` is the unit monomial."""
        text = text.strip()
        if text == "1":
            return cls()
        if not text:
            raise InputError("empty monomial")
        pairs = []
        for part in text.split("*"):
            m = _FACTOR.match(part)
            if not m:
                raise InputError(f"cannot parse monomial factor {part!r} in {text!r}")
            pairs.append((m.group(1), int(m.group(2) or 1)))
        return cls(pairs)

    def format(self, order: Sequence[str] | None = None) -> str:
        """Text form; variables follow ``order`` when given, else label order."""
        if not self._items:
            return "1"
        exps = dict(self._items)
        keys = [v for v in order if v in exps] if order is not None else [v for v, _ in self._items]
        return "*".join(v if exps[v] == 1 else f"{v}^{exps[v]}" for v in keys)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Monomial({self.format()!r})"

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __getitem__(self, v: str) -> int:
        return self.exponents.get(v, 0)

    def deg(self, v: str) -> int:
        return self[v]

    @property
    def exponents(self) -> dict[str, int]:
        return dict(self._items)

    def items(self):
        return self._items

    @property
    def support(self) -> frozenset[str]:
        return frozenset(v for v, _ in self._items)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self._items)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self._items)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self._items + other._items)

    def divides(self, other: Monomial) -> bool:
        exps = other.exponents
        return all(exps.get(v, 0) >= e for v, e in self._items)

    def __truediv__(self, other: Monomial) -> Monomial:
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        exps = self.exponents
        for v, e in other._items:
            exps[v] -= e
        return Monomial(exps)

    def times_var(self, v: str, e: int = 1) -> Monomial:
        return Monomial(self._items + ((v, e),))

    def vector(self, variables: Sequence[str]) -> tuple[int, ...]:
        exps = dict(self._items)
        extra = set(exps) - set(variables)
        if extra:
            raise InputError(f"variables {sorted(extra)} not in the ambient ring")
        return tuple(exps.get(v, 0) for v in variables)


def product(monomials: Iterable[Monomial]) -> Monomial:
    items: tuple = ()
    for m in monomials:
        items += m.items()
    return Monomial(items)


class VariableOrder:
    """A total order on variables, stored greatest first (rank 0 = greatest)."""

    __slots__ = ("variables", "rank")

    def __init__(self, variables: Iterable[str]):
        self.variables = tuple(variables)
        self.rank = {v: i for i, v in enumerate(self.variables)}
        if len(self.rank) != len(self.variables):
            raise InputError("variable order lists a variable twice")

    @classmethod
    def by_label(cls, variables: Iterable[str]) -> VariableOrder:
        """Lexicographically smallest label is the greatest variable."""
        return cls(sorted(set(variables)))

    def __repr__(self):
        return "VariableOrder(" + " > ".join(self.variables) + ")"

    def __eq__(self, other):
        return isinstance(other, VariableOrder) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __len__(self):
        return len(self.variables)

    def __contains__(self, v):
        return v in self.rank

    def greater(self, u: str, v: str) -> bool:
        return self.rank[u] < self.rank[v]

    def below(self, z: str) -> tuple[str, ...]:
        """Variables smaller than ``z``, nearest first."""
        return self.variables[self.rank[z] + 1:]

    def lex_key(self, m: Monomial) -> tuple[int, ...]:
        """Sort key putting lex-larger monomials first."""
        return tuple(-e for e in m.vector(self.variables))
