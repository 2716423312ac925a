"""Preprocessing for instances whose source string has all-distinct symbols.

An adjacent pair xy of the source is *stable* when, in the target, every x
is immediately followed by y and every y immediately preceded by x.  Stable
runs can be collapsed: replacing each maximal stable run by one fresh symbol
in both strings yields an equivalent, much smaller instance.  When the
distance is at most k the collapsed source has at most 2k+1 symbols and the
collapsed target at most (2k+1)*2^k tokens, which turns those bounds into
sound rejection rules before any search is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .search import SearchResult, decide_td
from .strings import SymbolTable, TdkError, TokenString, feasibility_precheck


class NotExemplarError(TdkError):
    """The source string repeats a symbol."""


class ForeignSymbolError(TdkError):
    """The target uses a symbol that never occurs in the source."""


class TokenizationError(TdkError):
    """The target cannot be tiled by occurrences of the stable blocks.

    Unreachable for partitions computed from the same target (stability
    forces every occurrence of a block symbol to sit inside a full block
    occurrence); kept as a defensive check and exercised directly in tests.
    """


@dataclass(frozen=True)
class StablePartition:
    """Half-open intervals [start, end) of maximal stable runs, covering the source."""

    blocks: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class Kernel:
    """The collapsed instance plus enough bookkeeping to expand it back."""

    source: TokenString = field(repr=False)
    target: TokenString = field(repr=False)
    partition: StablePartition
    s_prime: TokenString
    t_prime: TokenString
    mapping: tuple[int, ...]  # block index -> fresh symbol id
    provenance: dict[int, tuple[int, int]]  # fresh symbol id -> interval in source

    def expand(self, collapsed: TokenString) -> TokenString:
        """Replace each fresh symbol by the original tokens of its block."""
        out: list[int] = []
        for sym in collapsed.tokens:
            a, b = self.provenance[sym]
            out.extend(self.source.tokens[a:b])
        return TokenString(self.source.table, tuple(out))


def _check_preconditions(source: TokenString, target: TokenString) -> None:
    if not source.is_exemplar:
        raise NotExemplarError("source string must not repeat a symbol")
    foreign = target.symbol_ids - source.symbol_ids
    if foreign:
        names = ", ".join(sorted(target.table.name(s) for s in foreign))
        raise ForeignSymbolError(f"target uses symbols absent from the source: {names}")


def stable_pairs(source: TokenString, target: TokenString) -> frozenset[int]:
    """Positions i of the source whose pair (source[i], source[i+1]) is stable.

    The pair xy is stable when every occurrence of x in the target is
    followed by y and every occurrence of y is preceded by x.
    """
    _check_preconditions(source, target)
    occurrences: dict[int, list[int]] = {}
    toks = target.tokens
    for j, sym in enumerate(toks):
        occurrences.setdefault(sym, []).append(j)
    stable: set[int] = set()
    for i in range(len(source) - 1):
        x, y = source.tokens[i], source.tokens[i + 1]
        ok = all(j + 1 < len(toks) and toks[j + 1] == y for j in occurrences.get(x, ()))
        ok = ok and all(j > 0 and toks[j - 1] == x for j in occurrences.get(y, ()))
        if ok:
            stable.add(i)
    return frozenset(stable)


def maximal_stable_partition(source: TokenString, target: TokenString) -> StablePartition:
    """Split the source into maximal runs of consecutive stable pairs."""
    stable = stable_pairs(source, target)
    blocks: list[tuple[int, int]] = []
    start = 0
    for i in range(len(source)):
        if i not in stable:  # pair (i, i+1) breaks here (or end of string)
            blocks.append((start, i + 1))
            start = i + 1
    return StablePartition(tuple(blocks))


def _tokenize_by_blocks(
    target: TokenString,
    source: TokenString,
    blocks: tuple[tuple[int, int], ...],
    mapping: tuple[int, ...],
) -> tuple[int, ...]:
    """Greedy left-to-right tiling of the target by block occurrences.

    Blocks have pairwise disjoint symbols (the source is exemplar), so each
    position determines its block and no backtracking is needed.
    """
    first_sym = {source.tokens[a]: bi for bi, (a, b) in enumerate(blocks)}
    toks = target.tokens
    out: list[int] = []
    j = 0
    while j < len(toks):
        bi = first_sym.get(toks[j])
        if bi is None:
            raise TokenizationError(
                f"position {j}: token does not start any stable block"
            )
        a, b = blocks[bi]
        width = b - a
        if toks[j:j + width] != source.tokens[a:b]:
            raise TokenizationError(
                f"position {j}: partial occurrence of a stable block"
            )
        out.append(mapping[bi])
        j += width
    return tuple(out)


def kernelize(source: TokenString, target: TokenString) -> Kernel:
    """Collapse each maximal stable run to a fresh symbol in both strings.

    The fresh symbols live in a new table; their names join the original
    token names with '+' so emitted kernels stay auditable.
    """
    partition = maximal_stable_partition(source, target)
    kt = SymbolTable()
    mapping: list[int] = []
    for a, b in partition.blocks:
        hint = "+".join(source.table.name(t) for t in source.tokens[a:b])
        mapping.append(kt.fresh(hint))
    s_prime = TokenString(kt, tuple(mapping))
    t_tokens = _tokenize_by_blocks(target, source, partition.blocks, tuple(mapping))
    provenance = {mapping[bi]: partition.blocks[bi] for bi in range(len(mapping))}
    return Kernel(
        source=source,
        target=target,
        partition=partition,
        s_prime=s_prime,
        t_prime=TokenString(kt, t_tokens),
        mapping=tuple(mapping),
        provenance=provenance,
    )


REJECT_PRECHECK = "precheck"
REJECT_KERNEL_SIZE = "kernel-size"


@dataclass(frozen=True)
class FptOutcome:
    """decide result on the collapsed instance plus the size report."""

    result: SearchResult
    kernel: Kernel | None
    s_prime_len: int | None
    t_prime_len: int | None
    rejected_by: str | None = None


def fpt_solve(source: TokenString, target: TokenString, k: int) -> FptOutcome:
    """Decide "within k duplications?" by collapsing first, then searching.

    Rejects without searching when the precheck fails or the collapsed
    sizes exceed the 2k+1 / (2k+1)*2^k bounds that any YES instance must
    satisfy; otherwise the verdict on the collapsed instance equals the
    verdict on the original.
    """
    if k < 0:
        raise ValueError(f"budget k must be >= 0, got {k}")
    if not source.is_exemplar:
        raise NotExemplarError("source string must not repeat a symbol")
    pre = feasibility_precheck(source, target)
    if not pre.feasible:
        return FptOutcome(SearchResult(False, None, None, 0), None, None, None, REJECT_PRECHECK)
    kern = kernelize(source, target)
    s_len, t_len = len(kern.s_prime), len(kern.t_prime)
    if s_len > 2 * k + 1 or t_len > (2 * k + 1) << k:
        return FptOutcome(
            SearchResult(False, None, None, 0), kern, s_len, t_len, REJECT_KERNEL_SIZE
        )
    result = decide_td(kern.s_prime, kern.t_prime, k)
    return FptOutcome(result, kern, s_len, t_len)
