"""Hardness-reduction instance builders, witness generation, and verification.

Two constructions are materialized:

* clique_to_ces: a clique question (G, k) becomes a cost-effective-subgraph
  question on the same graph with edge cost c = 3k/2 and threshold
  r = cm - (k/2)*C(k,2): G has a k-clique iff some subset costs at most r.
  clique_to_ces_gap exposes the closed-form cost excess over r for the three
  subset-size regimes, in exact rational arithmetic.

* ces_to_td: a cost-effective-subgraph question (G, c, r) becomes a
  duplication-distance question on two token strings.  The source is one
  long all-distinct string (blockers, then one position block per vertex,
  then a separator).  The target prepends doubled variants of the anchor
  blocks and appends p edge gadgets; removing a gadget either pays the
  "blocker route" (contract the doubled c-anchor, cost ~ d*c + d*n) or,
  after activating the position blocks of a chosen vertex subset W, the
  cheaper "subset route" (cost ~ d*n + d*|W|) for edges inside W.
  build_witness emits the full contraction schedule realizing a given W;
  verify_contraction_sequence replays any schedule step by step.

Desk-scale parameter choices (small d, p) keep only the forward direction
meaningful: a cheap W yields a short schedule, but short schedules do not
certify a cheap W unless p is as large as the full-scale default.  Built
instances are labeled accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .ces import CesInstance, Graph, InvalidVertexError
from .strings import ContractionStep, SymbolTable, TdkError, TokenString, apply_contraction
from .strings import NotASquareError, OutOfBoundsError


class OddKError(TdkError):
    pass


class KOutOfRangeError(TdkError):
    pass


class BadCaseRangeError(TdkError):
    pass


class PNotMultipleOfMError(TdkError):
    pass


class SizeCapExceededError(TdkError):
    def __init__(self, estimate: int, cap: int) -> None:
        super().__init__(
            f"target string would have {estimate} tokens, above the cap of {cap}; "
            "pass force=True (--force) to build anyway"
        )
        self.estimate = estimate
        self.cap = cap


@dataclass(frozen=True)
class CliqueToCesOutput:
    instance: CesInstance
    r: int
    k: int
    profit: int  # gap below the trivial cost c*m that a k-clique realizes


def clique_to_ces(graph: Graph, k: int) -> CliqueToCesOutput:
    """Instance whose optimum is at most r exactly when the graph has a k-clique.

    Requires even k so the edge cost c = 3k/2 stays integral.  A k-clique X
    has C(k,2) inner edges and costs exactly r; every other subset costs
    strictly more (see clique_to_ces_gap for the case algebra).
    """
    if k % 2:
        raise OddKError(f"k must be even, got {k}")
    if not (2 <= k <= graph.n):
        raise KOutOfRangeError(f"k must satisfy 2 <= k <= n={graph.n}, got {k}")
    c = 3 * k // 2
    pairs = comb(k, 2)
    r = c * graph.m - (k // 2) * pairs
    return CliqueToCesOutput(CesInstance(graph, c), r, k, (k // 2) * pairs)


def clique_to_ces_gap(k: int, l: int, h: int, case: int) -> Fraction:
    """Closed form for cost(X) - r in the clique reduction, by subset size.

    Case 1: |X| = k with h > 0 missing inner edges.
    Case 2: |X| = k + l, l > 0, with h missing edges out of C(k+l, 2).
    Case 3: |X| = k - l, 0 < l < k, with h missing edges out of C(k-l, 2).
    """
    if k < 2 or k % 2:
        raise BadCaseRangeError(f"k must be even and >= 2, got {k}")
    half_k = Fraction(k, 2)
    if case == 1:
        if l != 0:
            raise BadCaseRangeError("case 1 requires l = 0")
        if not (1 <= h <= comb(k, 2)):
            raise BadCaseRangeError(f"case 1 requires 1 <= h <= C(k,2), got h={h}")
        return h * half_k  # h * (c - k) with c = 3k/2
    if case == 2:
        if l < 1:
            raise BadCaseRangeError("case 2 requires l >= 1")
        if not (0 <= h <= comb(k + l, 2)):
            raise BadCaseRangeError(f"case 2 requires 0 <= h <= C(k+l,2), got h={h}")
        return (
            Fraction(3 * k * l * l, 4)
            - Fraction(k * l, 4)
            + Fraction(l**3, 2)
            - Fraction(l * l, 2)
            + h * (half_k - l)
        )
    if case == 3:
        if not (1 <= l <= k - 1):
            raise BadCaseRangeError(f"case 3 requires 0 < l < k, got l={l}")
        if not (0 <= h <= comb(k - l, 2)):
            raise BadCaseRangeError(f"case 3 requires 0 <= h <= C(k-l,2), got h={h}")
        return (
            Fraction(3 * k * l * l, 4)
            + Fraction(k * l, 4)
            - Fraction(l**3, 2)
            - Fraction(l * l, 2)
            + h * (half_k + l)
        )
    raise BadCaseRangeError(f"case must be 1, 2 or 3, got {case}")


DEFAULT_SIZE_CAP = 10_000_000

FIDELITY_FULL = "full"
FIDELITY_FORWARD_ONLY = "forward-witness-only"


@dataclass(frozen=True)
class ReductionParams:
    """Block-length multiplier d and gadget repetition count p."""

    d: int
    p: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")

    @staticmethod
    def full_scale(n: int, m: int) -> "ReductionParams":
        """Parameters large enough for the reduction to preserve equivalence
        in both directions; impractical to materialize on a desk."""
        return ReductionParams(m + 1, m * (n + m) ** 10)


def reduction_fidelity(n: int, m: int, params: ReductionParams) -> str:
    full = ReductionParams.full_scale(n, m)
    if params.d >= full.d and params.p >= full.p:
        return FIDELITY_FULL
    return FIDELITY_FORWARD_ONLY


def _lengths(n: int, m: int, c: int, params: ReductionParams):
    d, p = params.d, params.p
    l0 = d * c + 2 * d - 2  # c-anchor block length
    l1 = d * n + 2 * d - 1  # n-anchor block length
    return l0, l1, 2 * p - 1


def estimate_source_length(n: int, m: int, c: int, params: ReductionParams) -> int:
    l0, l1, singles = _lengths(n, m, c, params)
    return singles + l1 + l0 + params.d * n + 1


def estimate_target_length(n: int, m: int, c: int, params: ReductionParams) -> int:
    l0, l1, singles = _lengths(n, m, c, params)
    d, p = params.d, params.p
    len_q = singles + 2 * l1 + l0 + d * n + 1
    len_prefix = singles + l1 + 2 * l0 + 2 * d * n + 1
    # gadget i contributes (i-1) single blockers on top of a fixed body
    gadget_body = 2 * l1 + 2 * l0 + (2 * d * n - 2 * d) + 1 + len_q
    return len_prefix + len_q + p * gadget_body + p * (p - 1) // 2


@dataclass(frozen=True)
class Atom:
    """One structural piece of the target: a blocker, an anchor block, a
    vertex position block, or the separator; ``doubled`` marks the variant
    whose every token is repeated."""

    kind: str  # "b" (single blocker), "b0", "b1", "x", "delta"
    index: int
    doubled: bool
    tokens: tuple[int, ...]

    def halved(self) -> "Atom":
        if not self.doubled:
            raise TdkError(f"atom {self.kind}{self.index} is not doubled")
        return Atom(self.kind, self.index, False, self.tokens[0::2])


@dataclass(frozen=True)
class GadgetSpan:
    ordinal: int  # 1-based gadget number
    edge: tuple[int, int]
    atom_start: int  # index into the target layout
    first_block_atoms: int
    total_atoms: int


@dataclass(frozen=True)
class TdReduction:
    """Generated duplication-distance instance plus its structural layout."""

    table: SymbolTable
    source: TokenString
    target: TokenString
    graph: Graph
    c: int
    r: int
    params: ReductionParams
    budget: int
    fidelity: str
    symbol_roles: dict[str, str]
    layout: tuple[Atom, ...]
    gadgets: tuple[GadgetSpan, ...]
    prefix_atoms: int
    q_block_atoms: int


def _double(tokens: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(t for tok in tokens for t in (tok, tok))


def ces_to_td(
    graph: Graph,
    c: int,
    r: int,
    params: ReductionParams | None = None,
    *,
    size_cap: int | None = None,
    force: bool = False,
) -> TdReduction:
    """Build the duplication-distance instance for a subgraph-cost question.

    The contraction budget is (p/m) * d * (r + n*m) + 4*c*d*n; a subset W of
    cost at most r yields a schedule within it (see build_witness), which is
    the direction that small d, p preserve.
    """
    n, m = graph.n, graph.m
    if m == 0:
        raise PNotMultipleOfMError("graph has no edges; the construction needs m >= 1")
    if c < 1:
        raise ValueError(f"edge cost c must be >= 1, got {c}")
    if params is None:
        params = ReductionParams.full_scale(n, m)
    if params.p % m:
        raise PNotMultipleOfMError(f"p={params.p} is not a multiple of m={m}")
    cap = DEFAULT_SIZE_CAP if size_cap is None else size_cap
    estimate = estimate_target_length(n, m, c, params)
    if estimate > cap and not force:
        raise SizeCapExceededError(estimate, cap)

    d, p = params.d, params.p
    l0, l1, _ = _lengths(n, m, c, params)
    table = SymbolTable()

    # Intern in source-appearance order: blockers high to low, anchors, positions, separator.
    single = {j: Atom("b", j, False, (table.intern(f"B{j}"),)) for j in range(2 * p, 1, -1)}
    b1_tokens = tuple(table.intern(f"B1_{t}") for t in range(l1))
    b0_tokens = tuple(table.intern(f"B0_{t}") for t in range(l0))
    x_tokens = [tuple(table.intern(f"X{v}_{t}") for t in range(d)) for v in range(n)]
    delta = Atom("delta", 0, False, (table.intern("DELTA"),))

    b1 = Atom("b1", 0, False, b1_tokens)
    b1s = Atom("b1", 0, True, _double(b1_tokens))
    b0 = Atom("b0", 0, False, b0_tokens)
    b0s = Atom("b0", 0, True, _double(b0_tokens))
    x = [Atom("x", v, False, x_tokens[v]) for v in range(n)]
    xs = [Atom("x", v, True, _double(x_tokens[v])) for v in range(n)]
    singles_desc = [single[j] for j in range(2 * p, 1, -1)]

    prefix = singles_desc + [b1, b0s] + xs + [delta]
    q_block = singles_desc + [b1s, b0] + x + [delta]
    layout: list[Atom] = prefix + q_block
    gadgets: list[GadgetSpan] = []
    for i in range(1, p + 1):
        u, v = graph.edges[(i - 1) % m]
        first_block = (
            [single[j] for j in range(i, 1, -1)]
            + [b1s, b0s]
            + [x[k] if k in (u, v) else xs[k] for k in range(n)]
            + [delta]
        )
        gadgets.append(
            GadgetSpan(i, (u, v), len(layout), len(first_block), len(first_block) + len(q_block))
        )
        layout.extend(first_block)
        layout.extend(q_block)

    source_atoms = singles_desc + [b1, b0] + x + [delta]
    source = TokenString(table, tuple(t for a in source_atoms for t in a.tokens))
    target = TokenString(table, tuple(t for a in layout for t in a.tokens))
    if len(target) != estimate or len(source) != estimate_source_length(n, m, c, params):
        raise TdkError("internal: built lengths disagree with the closed-form estimate")

    roles: dict[str, str] = {"DELTA": "separator"}
    for j in range(2, 2 * p + 1):
        roles[f"B{j}"] = "blocker"
    for t in range(l1):
        roles[f"B1_{t}"] = "anchor1"
    for t in range(l0):
        roles[f"B0_{t}"] = "anchor0"
    for v in range(n):
        for t in range(d):
            roles[f"X{v}_{t}"] = f"vertex{v}"

    budget = (p // m) * d * (r + n * m) + 4 * c * d * n
    return TdReduction(
        table=table,
        source=source,
        target=target,
        graph=graph,
        c=c,
        r=r,
        params=params,
        budget=budget,
        fidelity=reduction_fidelity(n, m, params),
        symbol_roles=roles,
        layout=tuple(layout),
        gadgets=tuple(gadgets),
        prefix_atoms=len(prefix),
        q_block_atoms=len(q_block),
    )


@dataclass(frozen=True)
class PhaseCounts:
    """Contraction counts per schedule phase."""

    type2_removals: int  # gadgets removed via the blocker route (edge not inside W)
    activation: int  # position blocks of W contracted in the prefix
    type1_removals: int  # gadgets removed via the subset route (edge inside W)
    cleanup: int  # remaining doubled blocks plus the final halving

    @property
    def total(self) -> int:
        return self.type2_removals + self.activation + self.type1_removals + self.cleanup


@dataclass(frozen=True)
class WitnessSchedule:
    steps: tuple[ContractionStep, ...]
    phases: PhaseCounts


def closed_form_schedule_length(
    n: int, m: int, c: int, params: ReductionParams, w_size: int, w_edges: int
) -> int:
    """Length of the schedule build_witness emits, from the counts alone."""
    d, p = params.d, params.p
    reps = p // m
    return (
        reps * (m - w_edges) * (d * c + d * n)
        + d * w_size
        + reps * w_edges * (d * n + d * w_size)
        + d * (n - w_size)
        + d * (c + n + 4)
        - 3
        + 1
    )


def build_witness(red: TdReduction, graph: Graph, subset) -> WitnessSchedule:
    """Emit the contraction schedule that realizes vertex subset W = ``subset``.

    Phase order: gadgets whose edge is not inside W are removed left to
    right via the blocker route; the position blocks of W are activated in
    the prefix; the remaining gadgets are removed left to right via the
    subset route; finally the leftover doubled blocks are contracted and one
    halving of the whole string yields the source.
    """
    if graph != red.graph:
        raise TdkError("graph does not match the one the reduction was built from")
    n = graph.n
    wset = set(subset)
    for v in wset:
        if not (0 <= v < n):
            raise InvalidVertexError(f"vertex {v} out of range for n={n}")

    atoms = list(red.layout)
    steps: list[ContractionStep] = []

    def tok_offset(ai: int) -> int:
        return sum(len(a.tokens) for a in atoms[:ai])

    def halve(ai: int) -> None:
        plain = atoms[ai].halved()
        off = tok_offset(ai)
        for t in range(len(plain.tokens)):
            steps.append(ContractionStep(off + t, 1))
        atoms[ai] = plain

    def contract_square(left_ai: int, width: int) -> None:
        left = atoms[left_ai:left_ai + width]
        right = atoms[left_ai + width:left_ai + 2 * width]
        if [a.tokens for a in left] != [a.tokens for a in right]:
            raise TdkError("internal: schedule would contract a non-square")
        steps.append(ContractionStep(tok_offset(left_ai), sum(len(a.tokens) for a in left)))
        del atoms[left_ai + width:left_ai + 2 * width]

    qb = red.q_block_atoms
    removed: list[GadgetSpan] = []

    def current_start(gs: GadgetSpan) -> int:
        return gs.atom_start - sum(
            g.total_atoms for g in removed if g.atom_start < gs.atom_start
        )

    # Blocker-route removals: every gadget whose edge is not inside W.
    for gs in red.gadgets:
        u, v = gs.edge
        if u in wset and v in wset:
            continue
        start = current_start(gs)
        lead = gs.ordinal - 1  # single blockers in front of the gadget's anchors
        halve(start + lead + 1)  # doubled c-anchor
        for k in range(n):
            if k != u and k != v:
                halve(start + lead + 2 + k)
        fb = gs.first_block_atoms
        contract_square(start - fb, fb)
        contract_square(start - qb, qb)
        removed.append(gs)
    type2 = len(steps)

    # Activation: contract the position block of each chosen vertex in the prefix.
    x_base = 2 * red.params.p + 1  # prefix: 2p-1 blockers, anchor, doubled anchor, then positions
    for k in sorted(wset):
        halve(x_base + k)
    activation = len(steps) - type2

    # Subset-route removals: the remaining gadgets, all with both endpoints in W.
    for gs in red.gadgets:
        u, v = gs.edge
        if not (u in wset and v in wset):
            continue
        start = current_start(gs)
        lead = gs.ordinal - 1
        halve(start + lead)  # doubled n-anchor
        for k in sorted(wset):
            if k != u and k != v:
                halve(start + lead + 2 + k)
        fb = gs.first_block_atoms
        contract_square(start - fb - qb, fb + qb)
        removed.append(gs)
    type1 = len(steps) - type2 - activation

    # Cleanup: remaining doubled position blocks, both anchors, final halving.
    for k in range(n):
        if k not in wset:
            halve(x_base + k)
    halve(2 * red.params.p)  # prefix doubled c-anchor
    halve(red.prefix_atoms + 2 * red.params.p - 1)  # doubled n-anchor of the q-block
    contract_square(0, red.prefix_atoms)
    cleanup = len(steps) - type2 - activation - type1

    final = tuple(t for a in atoms for t in a.tokens)
    if final != red.source.tokens:
        raise TdkError("internal: schedule does not end at the source string")
    return WitnessSchedule(tuple(steps), PhaseCounts(type2, activation, type1, cleanup))


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    length: int | None = None
    failed_at: int | None = None
    reason: str | None = None


def verify_contraction_sequence(target: TokenString, schedule, source: TokenString) -> VerificationResult:
    """Replay a schedule from the target; verified iff every step is a valid
    contraction and the final string equals the source."""
    steps = schedule.steps if isinstance(schedule, WitnessSchedule) else tuple(schedule)
    cur = target
    for idx, step in enumerate(steps):
        try:
            cur = apply_contraction(cur, step)
        except NotASquareError:
            return VerificationResult(False, None, idx, "not-a-square")
        except OutOfBoundsError:
            return VerificationResult(False, None, idx, "out-of-bounds")
    if cur.tokens != source.tokens:
        return VerificationResult(False, None, None, "final-string-mismatch")
    return VerificationResult(True, len(steps))
