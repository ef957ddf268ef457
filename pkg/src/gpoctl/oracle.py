"""Brute-force reference semantics by exhaustive lasso enumeration.

Deliberately independent of the matrix/fixpoint evaluator: path-operator
values are read off finite unrollings of explicitly enumerated ultimately
periodic runs (prefix . cycle^omega).  Suprema over all infinite runs are
attained within the default bounds because any run can be spliced down to a
lasso with a repetition-free prefix and cycle without lowering its value.

Exponential in the state count by design; meant for small models only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .algebra import ONE, ZERO, FuzzyVector
from .formulas import (
    Always,
    And,
    Atom,
    BoundedAlways,
    BoundedUntil,
    Eventually,
    Next,
    Not,
    PathFormula,
    Po,
    StateFormula,
    TrueLiteral,
    Until,
    expand_derived,
)
from .model import Gpks, Lasso

Resolver = Callable[[StateFormula], FuzzyVector]


@dataclass(frozen=True)
class EnumerationBounds:
    """Search limits for the lasso enumeration; ``None`` means the per-model
    default (prefix and cycle up to the state count, scan depth one more)."""

    max_prefix: int | None = None
    max_cycle: int | None = None
    max_until_depth: int | None = None

    def resolve(self, n_states: int) -> tuple[int, int, int]:
        prefix = n_states if self.max_prefix is None else self.max_prefix
        cycle = n_states if self.max_cycle is None else self.max_cycle
        depth = n_states + 1 if self.max_until_depth is None else self.max_until_depth
        if prefix < 0:
            raise ValueError("max_prefix must be non-negative")
        if cycle < 1 or depth < 1:
            raise ValueError("max_cycle and max_until_depth must be at least 1")
        return prefix, cycle, depth


def enumerate_lassos(
    m: Gpks, bounds: EnumerationBounds | None = None, start: int | None = None
) -> list[Lasso]:
    """All lassos within the bounds, zero-possibility ones included."""
    p_max, c_max, _ = (bounds or EnumerationBounds()).resolve(m.dim)
    states = range(m.dim)
    cycles: list[tuple[int, ...]] = []
    frontier: list[tuple[int, ...]] = [(s,) for s in states]
    while frontier:
        seq = frontier.pop()
        cycles.append(seq)
        if len(seq) < c_max:
            frontier.extend(seq + (t,) for t in states)
    out: list[Lasso] = []
    for s in states if start is None else (start,):
        out.extend(Lasso((), cycle) for cycle in cycles if cycle[0] == s)
        if p_max >= 1:
            layer: list[tuple[int, ...]] = [(s,)]
            prefixes: list[tuple[int, ...]] = [(s,)]
            for _ in range(p_max - 1):
                layer = [p + (t,) for p in layer for t in states]
                prefixes.extend(layer)
            out.extend(Lasso(prefix, cycle) for prefix in prefixes for cycle in cycles)
    return out


class _IntLattice:
    """Per-model integer view of the degree lattice.

    All degrees of one model (and everything min/max/complement generate from
    them) share a common denominator; scaling by it turns every operation into
    plain integer min/max, which is what the hot enumeration loops use.
    """

    def __init__(self, m: Gpks):
        denoms = {e.denominator for row in m.transitions.rows for e in row}
        denoms.update(e.denominator for e in m.init)
        for vec in m.labels:
            denoms.update(e.denominator for e in vec)
        self.denom = math.lcm(*denoms) if denoms else 1
        self.transitions = tuple(
            tuple(int(e * self.denom) for e in row) for row in m.transitions.rows
        )
        self.labels = {
            name: tuple(int(e * self.denom) for e in vec)
            for name, vec in zip(m.props, m.labels)
        }

    def unscale(self, values: Sequence[int]) -> FuzzyVector:
        return FuzzyVector(tuple(Fraction(v, self.denom) for v in values))


class BruteForceOracle:
    """Reference evaluator for one model; lassos are enumerated once and reused.

    Entries per start state are deduplicated by their bounded unrolling and
    sorted by decreasing run possibility, so scans can stop as soon as the
    remaining runs cannot beat the best value found.
    """

    def __init__(self, m: Gpks, bounds: EnumerationBounds | None = None):
        self.m = m
        self.bounds = bounds or EnumerationBounds()
        self.max_prefix, self.max_cycle, self.depth = self.bounds.resolve(m.dim)
        self._lattice = _IntLattice(m)
        # Uniform unrolling length: covers the scan depth and one full
        # prefix+cycle round, after which positions repeat.
        self._unroll = max(self.depth + 1, self.max_prefix + self.max_cycle, 2)
        self._entries = self._build_entries()
        self._memo: dict[StateFormula, tuple[int, ...]] = {}

    # -- enumeration -------------------------------------------------------

    def _build_entries(self) -> list[list[tuple[int, tuple[int, ...], tuple[int, ...]]]]:
        n = self.m.dim
        grid = self._lattice.transitions
        top = self._lattice.denom

        cycles_by_head: list[list[tuple[tuple[int, ...], int]]] = [[] for _ in range(n)]
        stack: list[tuple[tuple[int, ...], int]] = [((h,), top) for h in range(n)]
        while stack:
            seq, lowest = stack.pop()
            head, last = seq[0], seq[-1]
            closed = min(lowest, grid[last][head])
            if closed > 0:
                cycles_by_head[head].append((seq, closed))
            if len(seq) < self.max_cycle:
                for t in range(n):
                    edge = grid[last][t]
                    if edge > 0:
                        stack.append((seq + (t,), min(lowest, edge)))

        entries = []
        for s in range(n):
            best_by_seq: dict[tuple[int, ...], int] = {}
            for cycle, c_min in cycles_by_head[s]:
                self._record(best_by_seq, (), cycle, c_min)
            if self.max_prefix >= 1:
                frontier: list[tuple[tuple[int, ...], int]] = [((s,), top)]
                while frontier:
                    prefix, p_min = frontier.pop()
                    last = prefix[-1]
                    for head in range(n):
                        seam = grid[last][head]
                        if seam == 0:
                            continue
                        capped = min(p_min, seam)
                        for cycle, c_min in cycles_by_head[head]:
                            self._record(best_by_seq, prefix, cycle, min(capped, c_min))
                    if len(prefix) < self.max_prefix:
                        for t in range(n):
                            edge = grid[last][t]
                            if edge > 0:
                                frontier.append((prefix + (t,), min(p_min, edge)))
            flat = [
                (total, seq, tuple(set(seq)))
                for seq, total in best_by_seq.items()
            ]
            flat.sort(key=lambda item: -item[0])
            entries.append(flat)
        return entries

    def _record(
        self,
        best_by_seq: dict[tuple[int, ...], int],
        prefix: tuple[int, ...],
        cycle: tuple[int, ...],
        total: int,
    ) -> None:
        if total == 0:
            return
        repeats = -(-(self._unroll - len(prefix)) // len(cycle))
        seq = (prefix + cycle * repeats)[: self._unroll]
        if total > best_by_seq.get(seq, 0):
            best_by_seq[seq] = total

    # -- public operations --------------------------------------------------

    def reach_sup(self) -> FuzzyVector:
        """Per-state max possibility over the enumerated runs, ignoring init."""
        return self._lattice.unscale(
            [entries[0][0] if entries else 0 for entries in self._entries]
        )

    def eval_state(self, formula: StateFormula) -> FuzzyVector:
        """Evaluate by enumeration; sugar is expanded exactly as the checker does."""
        return self._lattice.unscale(self._eval(expand_derived(formula)))

    def path_value(
        self,
        lasso: Lasso,
        path: PathFormula,
        resolve: Resolver | Mapping[StateFormula, FuzzyVector],
    ) -> Fraction:
        """Value of *path* on the run prefix . cycle^omega.

        State subformulas are looked up through *resolve*.  The scan covers
        the configured depth or one full prefix+cycle round, whichever is
        longer; later positions repeat earlier ones with smaller running
        minima and cannot improve the value.
        """
        if isinstance(resolve, Mapping):
            table = resolve
            resolve = lambda f: table[f]  # noqa: E731
        length = max(self.depth + 1, len(lasso.prefix) + len(lasso.cycle))
        seq = [lasso.position(i) for i in range(length)]
        trans = self.m.transitions
        cumulative = [ONE]
        for i in range(length - 1):
            cumulative.append(min(cumulative[-1], trans.entry(seq[i], seq[i + 1])))
        total = min(trans.entry(i, j) for i, j in lasso.edges())

        if isinstance(path, Next):
            return min(cumulative[1], resolve(path.operand)[seq[1]])
        if isinstance(path, (Until, BoundedUntil, Eventually)):
            if isinstance(path, Eventually):
                left_vec, right_vec, limit = None, resolve(path.operand), length
            elif isinstance(path, Until):
                left_vec, right_vec, limit = resolve(path.left), resolve(path.right), length
            else:
                left_vec, right_vec = resolve(path.left), resolve(path.right)
                limit = min(path.bound + 1, length)
            best = ZERO
            running = ONE
            for j in range(limit):
                term = min(running, cumulative[j], right_vec[seq[j]])
                if term > best:
                    best = term
                if left_vec is None:
                    continue
                running = min(running, left_vec[seq[j]])
                if running == ZERO:
                    break
            return best
        if isinstance(path, Always):
            arg = resolve(path.operand)
            return min(total, min(arg[s] for s in set(lasso.states())))
        if isinstance(path, BoundedAlways):
            arg = resolve(path.operand)
            if path.bound + 1 >= length:
                return min(total, min(arg[s] for s in set(lasso.states())))
            return min(cumulative[path.bound], min(arg[s] for s in seq[: path.bound + 1]))
        raise TypeError(f"not a path formula: {path!r}")

    # -- integer-lattice evaluation -----------------------------------------

    def _eval(self, f: StateFormula) -> tuple[int, ...]:
        cached = self._memo.get(f)
        if cached is not None:
            return cached
        top, n = self._lattice.denom, self.m.dim
        if isinstance(f, TrueLiteral):
            result: tuple[int, ...] = (top,) * n
        elif isinstance(f, Atom):
            self.m.label(f.name)  # raises UnknownPropositionError when absent
            result = self._lattice.labels[f.name]
        elif isinstance(f, Not):
            result = tuple(top - v for v in self._eval(f.operand))
        elif isinstance(f, And):
            result = tuple(map(min, self._eval(f.left), self._eval(f.right)))
        elif isinstance(f, Po):
            result = self._po(f.path)
        else:
            raise TypeError(f"cannot evaluate non-core formula node: {f!r}")
        self._memo[f] = result
        return result

    def _po(self, path: PathFormula) -> tuple[int, ...]:
        if isinstance(path, Next):
            arg = self._eval(path.operand)
            return tuple(self._sup_next(s, arg) for s in range(self.m.dim))
        if isinstance(path, Until):
            left, right = self._eval(path.left), self._eval(path.right)
            return tuple(
                self._sup_until(s, left, right, self._unroll) for s in range(self.m.dim)
            )
        if isinstance(path, BoundedUntil):
            left, right = self._eval(path.left), self._eval(path.right)
            limit = min(path.bound + 1, self._unroll)
            return tuple(
                self._sup_until(s, left, right, limit) for s in range(self.m.dim)
            )
        if isinstance(path, Always):
            arg = self._eval(path.operand)
            return tuple(self._sup_always(s, arg) for s in range(self.m.dim))
        if isinstance(path, BoundedAlways):
            arg = self._eval(path.operand)
            return tuple(
                self._sup_bounded_always(s, arg, path.bound) for s in range(self.m.dim)
            )
        raise TypeError(f"cannot evaluate non-core path node: {path!r}")

    # Entries are sorted by decreasing total, so once the best value reaches
    # the current total no later entry can improve on it.

    def _sup_next(self, s: int, arg: Sequence[int]) -> int:
        best = 0
        for total, seq, _ in self._entries[s]:
            if total <= best:
                break
            value = arg[seq[1]]
            if total < value:
                value = total
            if value > best:
                best = value
        return best

    def _sup_until(self, s: int, left: Sequence[int], right: Sequence[int], limit: int) -> int:
        best = 0
        for total, seq, _ in self._entries[s]:
            if total <= best:
                break
            here = 0
            running = total  # terms are capped by the run possibility anyway
            for j in range(limit):
                state = seq[j]
                term = right[state]
                if running < term:
                    term = running
                if term > here:
                    here = term
                    if here >= total:
                        break
                value = left[state]
                if value < running:
                    running = value
                    if running <= here:
                        break
            if here > best:
                best = here
        return best

    def _sup_always(self, s: int, arg: Sequence[int]) -> int:
        best = 0
        for total, _, states in self._entries[s]:
            if total <= best:
                break
            value = total
            for state in states:
                v = arg[state]
                if v < value:
                    value = v
                    if value <= best:
                        break
            if value > best:
                best = value
        return best

    def _sup_bounded_always(self, s: int, arg: Sequence[int], bound: int) -> int:
        best = 0
        limit = bound + 1
        for total, seq, states in self._entries[s]:
            if total <= best:
                break
            window = states if limit >= len(seq) else seq[:limit]
            value = total
            for state in window:
                v = arg[state]
                if v < value:
                    value = v
                    if value <= best:
                        break
            if value > best:
                best = value
        return best


def oracle_reach_sup(m: Gpks, bounds: EnumerationBounds | None = None) -> FuzzyVector:
    return BruteForceOracle(m, bounds).reach_sup()


def oracle_eval_state(
    m: Gpks, formula: StateFormula, bounds: EnumerationBounds | None = None
) -> FuzzyVector:
    return BruteForceOracle(m, bounds).eval_state(formula)


def oracle_path_value(
    m: Gpks,
    lasso: Lasso,
    path: PathFormula,
    resolve: Resolver | Mapping[StateFormula, FuzzyVector],
    bounds: EnumerationBounds | None = None,
) -> Fraction:
    return BruteForceOracle(m, bounds).path_value(lasso, path, resolve)
