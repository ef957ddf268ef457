"""Per-state evaluation of formulas over a generalized possibilistic Kripke
structure.

Every state formula denotes a vector of possibility degrees, one per state.
With P the transition matrix, r the tail-capacity vector (``reach_sup``) and
D_v the diagonal matrix of a vector v, the path operators reduce to max-min
algebra:

    Po[X f]        P o D_f o r
    Po[a U<=n b]   join of (D_a o P)^i o D_b o r  for i = 0..n
    Po[a U b]      least fixpoint of   x -> (b ^ r) v a ^ (P o x)
    Po[F f]        P* o D_f o r
    Po[G f]        greatest fixpoint of  Z -> f ^ (P o (Z ^ r)),  from all-ones
    Po[G<=n f]     the Po[G f] operator applied n+1 times to all-ones

Fixpoints terminate by exact equality of consecutive iterates, which is sound
because min/max/complement never leave the finite set of degrees present in
the model.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FuzzyMatrix, FuzzyVector, diag
from .formulas import (
    Always,
    And,
    Atom,
    BoundedAlways,
    BoundedUntil,
    Eventually,
    Interval,
    Next,
    Not,
    Po,
    StateFormula,
    TrueLiteral,
    Until,
    expand_derived,
)
from .model import Gpks, reach_sup


@dataclass
class EvalStats:
    """Work counters for one evaluation.

    ``fixpoint_iterations`` records, per greatest-fixpoint run, the number of
    operator applications needed to observe stabilization.
    """

    fixpoint_iterations: list[int] = field(default_factory=list)
    matrix_ops: int = 0


@dataclass
class EvalResult:
    formula: StateFormula
    vector: FuzzyVector
    stats: EvalStats


def _apply(matrix: FuzzyMatrix, vec: FuzzyVector, stats: EvalStats | None) -> FuzzyVector:
    if stats is not None:
        stats.matrix_ops += 1
    return matrix.apply(vec)


def eval_next(
    m: Gpks,
    arg: FuzzyVector,
    r: FuzzyVector | None = None,
    stats: EvalStats | None = None,
) -> FuzzyVector:
    """One-step possibility: P applied to the tail-capped argument."""
    if r is None:
        r = reach_sup(m)
    return _apply(m.transitions, arg.meet(r), stats)


def eval_bounded_until(
    m: Gpks,
    left: FuzzyVector,
    right: FuzzyVector,
    bound: int,
    r: FuzzyVector | None = None,
    stats: EvalStats | None = None,
) -> FuzzyVector:
    """Join of the first *bound*+1 terms of the until iteration.

    x0 = right ^ r;  x_{k+1} = x_k v left ^ (P o x_k).  The chain is
    non-decreasing, so a repeated iterate ends the loop early.
    """
    if bound < 0:
        raise ValueError("step bound must be non-negative")
    if r is None:
        r = reach_sup(m)
    x = right.meet(r)
    for _ in range(bound):
        step = x.join(left.meet(_apply(m.transitions, x, stats)))
        if step == x:
            break
        x = step
    return x


def eval_until(
    m: Gpks,
    left: FuzzyVector,
    right: FuzzyVector,
    r: FuzzyVector | None = None,
    stats: EvalStats | None = None,
) -> FuzzyVector:
    """Least fixpoint of x -> (right ^ r) v left ^ (P o x), from right ^ r.

    Converges within the state count many joins.
    """
    if r is None:
        r = reach_sup(m)
    x = right.meet(r)
    while True:
        step = x.join(left.meet(_apply(m.transitions, x, stats)))
        if step == x:
            return x
        x = step


def eval_until_via_closure(
    m: Gpks,
    left: FuzzyVector,
    right: FuzzyVector,
    r: FuzzyVector | None = None,
) -> FuzzyVector:
    """Until by materializing the closure (D_left o P)* instead of iterating.

    Exposed alongside :func:`eval_until` so the two evaluation orders can be
    checked against each other; they agree exactly.
    """
    if r is None:
        r = reach_sup(m)
    scaled = diag(left).compose(m.transitions)
    return scaled.reflexive_transitive_closure().apply(right.meet(r))


def eval_always(
    m: Gpks,
    arg: FuzzyVector,
    r: FuzzyVector | None = None,
    stats: EvalStats | None = None,
) -> FuzzyVector:
    """Greatest fixpoint of Z -> arg ^ (P o (Z ^ r)), iterated from all-ones.

    The chain is non-increasing and stabilizes after at most dim + 2
    applications; the count actually used is appended to the stats.
    """
    if r is None:
        r = reach_sup(m)
    z = FuzzyVector.ones(m.dim)
    iterations = 0
    while True:
        step = arg.meet(_apply(m.transitions, z.meet(r), stats))
        iterations += 1
        if step == z:
            break
        z = step
    if stats is not None:
        stats.fixpoint_iterations.append(iterations)
    return z


def eval_bounded_always(
    m: Gpks,
    arg: FuzzyVector,
    bound: int,
    r: FuzzyVector | None = None,
    stats: EvalStats | None = None,
) -> FuzzyVector:
    """The always operator applied *bound*+1 times to all-ones.

    For bound 0 this is arg ^ r; as the bound grows it stabilizes to
    :func:`eval_always`.
    """
    if bound < 0:
        raise ValueError("step bound must be non-negative")
    if r is None:
        r = reach_sup(m)
    z = FuzzyVector.ones(m.dim)
    for _ in range(bound + 1):
        step = arg.meet(_apply(m.transitions, z.meet(r), stats))
        if step == z:
            break
        z = step
    return z


def eval_eventually(
    m: Gpks,
    arg: FuzzyVector,
    r: FuzzyVector | None = None,
    stats: EvalStats | None = None,
) -> FuzzyVector:
    """P* applied to the tail-capped argument; equals until from all-ones."""
    if r is None:
        r = reach_sup(m)
    closure = m.transitions.reflexive_transitive_closure()
    if stats is not None:
        stats.matrix_ops += 1
    return closure.apply(arg.meet(r))


class _Evaluation:
    """One checking run: shared tail capacity, per-subformula memo, stats."""

    def __init__(self, m: Gpks):
        self.m = m
        self.r = reach_sup(m)
        self.stats = EvalStats()
        self.memo: dict[StateFormula, FuzzyVector] = {}

    def vector(self, f: StateFormula) -> FuzzyVector:
        cached = self.memo.get(f)
        if cached is not None:
            return cached
        result = self._compute(f)
        self.memo[f] = result
        return result

    def _compute(self, f: StateFormula) -> FuzzyVector:
        if isinstance(f, TrueLiteral):
            return FuzzyVector.ones(self.m.dim)
        if isinstance(f, Atom):
            return self.m.label(f.name)
        if isinstance(f, Not):
            return self.vector(f.operand).complement()
        if isinstance(f, And):
            return self.vector(f.left).meet(self.vector(f.right))
        if isinstance(f, Po):
            p = f.path
            if isinstance(p, Next):
                return eval_next(self.m, self.vector(p.operand), self.r, self.stats)
            if isinstance(p, BoundedUntil):
                return eval_bounded_until(
                    self.m, self.vector(p.left), self.vector(p.right), p.bound,
                    self.r, self.stats,
                )
            if isinstance(p, Until):
                return eval_until(
                    self.m, self.vector(p.left), self.vector(p.right), self.r, self.stats
                )
            if isinstance(p, Always):
                return eval_always(self.m, self.vector(p.operand), self.r, self.stats)
            if isinstance(p, BoundedAlways):
                return eval_bounded_always(
                    self.m, self.vector(p.operand), p.bound, self.r, self.stats
                )
            if isinstance(p, Eventually):
                return eval_eventually(self.m, self.vector(p.operand), self.r, self.stats)
        raise TypeError(f"cannot evaluate non-core formula node: {f!r}")


def eval_state(m: Gpks, formula: StateFormula) -> EvalResult:
    """Evaluate a state formula to its per-state degree vector.

    Sugar (including Ne[...]) is expanded first; subformula vectors are
    memoized by structural identity within the run.
    """
    core = expand_derived(formula)
    run = _Evaluation(m)
    vector = run.vector(core)
    return EvalResult(formula=formula, vector=vector, stats=run.stats)


def check_threshold(m: Gpks, formula: StateFormula, window: Interval) -> tuple[str, ...]:
    """Names of the states whose degree for *formula* lies in *window*."""
    result = eval_state(m, formula)
    return tuple(
        name for name, value in zip(m.states, result.vector) if window.contains(value)
    )
