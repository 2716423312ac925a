"""Interned token strings and the duplication / contraction primitives.

A genome string is a sequence of symbol ids interned in a SymbolTable.
A tandem duplication copies a window of the string and inserts the copy
immediately after it; a contraction is the inverse move, deleting one copy
of a square (two equal adjacent windows).  Everything here is a pure value:
operations return new strings and never mutate their inputs, so all types
are safe to share across threads.

Strings are token sequences rather than character sequences so that
generated instances with thousands of distinct symbols stay representable;
the text form is whitespace-separated token names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


class TdkError(Exception):
    """Base class for all toolkit errors."""


class OutOfBoundsError(TdkError):
    """A duplication or contraction window does not fit in the string."""


class NotASquareError(TdkError):
    """The two halves of a contraction window differ."""


class SymbolTable:
    """Bijection between printable token names and dense integer ids.

    Ids are assigned in first-intern order starting at 0.  Names must be
    non-empty and contain no whitespace (the text format separates tokens
    with spaces).
    """

    __slots__ = ("_names", "_ids")

    def __init__(self, names: Iterable[str] = ()) -> None:
        self._names: list[str] = []
        self._ids: dict[str, int] = {}
        for name in names:
            self.intern(name)

    def intern(self, name: str) -> int:
        """Return the id of ``name``, assigning the next free id if new."""
        sid = self._ids.get(name)
        if sid is not None:
            return sid
        if not name or any(ch.isspace() for ch in name):
            raise ValueError(f"token name must be non-empty and space-free: {name!r}")
        sid = len(self._names)
        self._names.append(name)
        self._ids[name] = sid
        return sid

    def id(self, name: str) -> int:
        """Id of an already-interned name; raises KeyError if unknown."""
        return self._ids[name]

    def name(self, sid: int) -> str:
        return self._names[sid]

    def fresh(self, hint: str) -> int:
        """Intern a name not yet in the table: ``hint`` or ``hint~2``, ..."""
        if hint not in self._ids:
            return self.intern(hint)
        i = 2
        while f"{hint}~{i}" in self._ids:
            i += 1
        return self.intern(f"{hint}~{i}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._names)

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"SymbolTable({len(self)} symbols)"


@dataclass(frozen=True)
class TokenString:
    """Immutable sequence of symbol ids over a fixed SymbolTable."""

    table: SymbolTable = field(repr=False)
    tokens: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        toks = tuple(self.tokens)
        object.__setattr__(self, "tokens", toks)
        nsym = len(self.table)
        for t in toks:
            if not (0 <= t < nsym):
                raise ValueError(f"token id {t} not present in the symbol table")

    @classmethod
    def from_text(cls, table: SymbolTable, text: str) -> "TokenString":
        """Build a string from whitespace-separated token names, interning new ones."""
        return cls(table, tuple(table.intern(name) for name in text.split()))

    def text(self) -> str:
        return " ".join(self.table.name(t) for t in self.tokens)

    @property
    def is_exemplar(self) -> bool:
        """True when no symbol occurs twice."""
        return len(set(self.tokens)) == len(self.tokens)

    @property
    def symbol_ids(self) -> frozenset[int]:
        return frozenset(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[int]:
        return iter(self.tokens)

    def __repr__(self) -> str:
        return f"TokenString({self.text()!r})"


@dataclass(frozen=True, order=True)
class ContractionStep:
    """Locator of a square: window ``[start, start+half_len)`` equals the next
    ``half_len`` tokens.  Read in reverse, the same locator describes the
    duplication that copies ``[start, start+half_len)``."""

    start: int
    half_len: int

    def __post_init__(self) -> None:
        if self.start < 0:
            raise ValueError(f"start must be >= 0, got {self.start}")
        if self.half_len < 1:
            raise ValueError(f"half_len must be >= 1, got {self.half_len}")


def apply_duplication(s: TokenString, step: ContractionStep) -> TokenString:
    """Copy the window ``[start, start+half_len)`` and insert it right after.

    The window only has to fit inside the string; no square is required.
    """
    toks = s.tokens
    end = step.start + step.half_len
    if end > len(toks):
        raise OutOfBoundsError(
            f"duplication window [{step.start}, {end}) exceeds string of length {len(toks)}"
        )
    return TokenString(s.table, toks[:end] + toks[step.start:end] + toks[end:])


def apply_contraction(s: TokenString, step: ContractionStep) -> TokenString:
    """Delete the right copy of the square at ``step``.

    Keeping the left copy is a fixed convention; the resulting string does
    not depend on it, but witness traces do, so it is pinned for
    reproducibility.
    """
    toks = s.tokens
    start, half = step.start, step.half_len
    if start + 2 * half > len(toks):
        raise OutOfBoundsError(
            f"contraction window [{start}, {start + 2 * half}) exceeds string of length {len(toks)}"
        )
    if toks[start:start + half] != toks[start + half:start + 2 * half]:
        raise NotASquareError(f"halves differ at start={start}, half_len={half}")
    return TokenString(s.table, toks[:start + half] + toks[start + 2 * half:])


def _squares(toks: tuple[int, ...]) -> list[ContractionStep]:
    n = len(toks)
    out: list[ContractionStep] = []
    for start in range(n - 1):
        for half in range(1, (n - start) // 2 + 1):
            if toks[start:start + half] == toks[start + half:start + 2 * half]:
                out.append(ContractionStep(start, half))
    return out

def enumerate_squares(s: TokenString) -> list[ContractionStep]:
    """All squares of ``s`` in lexicographic (start, half_len) order.

    Naive window scan; fine at the instance sizes this toolkit targets.
    """
    return _squares(s.tokens)


# Machine-readable reasons returned by feasibility_precheck.
REASON_SYMBOL_SETS = "symbol-sets-differ"
REASON_TARGET_SHORTER = "target-shorter-than-source"
REASON_FIRST_TOKEN = "first-token-mismatch"
REASON_LAST_TOKEN = "last-token-mismatch"
REASON_NOT_SUBSEQUENCE = "source-not-a-subsequence"


@dataclass(frozen=True)
class Precheck:
    feasible: bool
    reason: str | None = None


def _is_subsequence(short: tuple[int, ...], long: tuple[int, ...]) -> bool:
    it = iter(long)
    return all(tok in it for tok in short)


def feasibility_precheck(source: TokenString, target: TokenString) -> Precheck:
    """Sound necessary conditions for the source to reach the target by duplications.

    Duplications introduce no new symbols, never shorten the string, preserve
    the first and last token, and keep the original string as a subsequence.
    A Feasible verdict is NOT a guarantee of reachability; only Infeasible is
    a certificate.
    """
    if source.table is not target.table:
        raise TdkError("source and target use different symbol tables")
    if source.tokens == target.tokens:
        return Precheck(True)
    if source.symbol_ids != target.symbol_ids:
        return Precheck(False, REASON_SYMBOL_SETS)
    # Both are non-empty from here: equal symbol sets and not equal as strings.
    if len(target) < len(source):
        return Precheck(False, REASON_TARGET_SHORTER)
    if source.tokens[0] != target.tokens[0]:
        return Precheck(False, REASON_FIRST_TOKEN)
    if source.tokens[-1] != target.tokens[-1]:
        return Precheck(False, REASON_LAST_TOKEN)
    if not _is_subsequence(source.tokens, target.tokens):
        return Precheck(False, REASON_NOT_SUBSEQUENCE)
    return Precheck(True)
