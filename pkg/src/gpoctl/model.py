"""Generalized possibilistic Kripke structures.

A structure bundles a finite state set, a [0,1]-valued transition matrix, a
[0,1]-valued initial distribution and graded labels for each atomic
proposition.  No normalisation is required: row maxima below 1, an all-zero
initial distribution and fractional labels are all legal.  Structures where
every transition row and the initial distribution reach 1 and all labels are
crisp are the classical possibilistic Kripke structures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import ZERO, FuzzyMatrix, FuzzyVector, PossLike, poss


class ModelFormatError(ValueError):
    """A model document is malformed or violates the schema."""


class UnknownPropositionError(ValueError):
    """A formula refers to an atomic proposition the model does not declare."""

    def __init__(self, name: str):
        super().__init__(f"unknown atomic proposition: {name!r}")
        self.name = name


@dataclass(frozen=True)
class Gpks:
    """Finite generalized possibilistic Kripke structure.

    ``labels`` is aligned with ``props``: labels[k][i] is the degree to which
    proposition props[k] holds in state i.
    """

    states: tuple[str, ...]
    transitions: FuzzyMatrix
    init: FuzzyVector
    props: tuple[str, ...]
    labels: tuple[FuzzyVector, ...]

    def __post_init__(self) -> None:
        if not self.states:
            raise ValueError("state set must be nonempty")
        if len(set(self.states)) != len(self.states):
            raise ValueError("state identifiers must be unique")
        if len(set(self.props)) != len(self.props):
            raise ValueError("proposition names must be unique")
        n = len(self.states)
        if self.transitions.dim != n or self.init.dim != n:
            raise ValueError("transition matrix and initial distribution must match the state count")
        if len(self.labels) != len(self.props):
            raise ValueError("one label vector per proposition is required")
        if any(vec.dim != n for vec in self.labels):
            raise ValueError("label vectors must match the state count")

    @property
    def dim(self) -> int:
        return len(self.states)

    def state_index(self, name: str) -> int:
        try:
            return self.states.index(name)
        except ValueError:
            raise ModelFormatError(f"unknown state referenced: {name!r}") from None

    def label(self, name: str) -> FuzzyVector:
        try:
            return self.labels[self.props.index(name)]
        except ValueError:
            raise UnknownPropositionError(name) from None

    @classmethod
    def from_maps(
        cls,
        states: Sequence[str],
        props: Sequence[str] = (),
        transitions: Mapping[tuple[str, str], PossLike] | None = None,
        init: Mapping[str, PossLike] | None = None,
        labels: Mapping[str, Mapping[str, PossLike]] | None = None,
    ) -> "Gpks":
        """Build from name-keyed mappings; omitted entries default to 0."""
        states = tuple(states)
        props = tuple(props)
        index = {s: i for i, s in enumerate(states)}
        n = len(states)
        grid = [[ZERO] * n for _ in range(n)]
        for (src, dst), value in (transitions or {}).items():
            grid[index[src]][index[dst]] = poss(value)
        init_entries = [ZERO] * n
        for name, value in (init or {}).items():
            init_entries[index[name]] = poss(value)
        label_grid = [[ZERO] * n for _ in props]
        for state_name, degrees in (labels or {}).items():
            for prop_name, value in degrees.items():
                label_grid[props.index(prop_name)][index[state_name]] = poss(value)
        return cls(
            states=states,
            transitions=FuzzyMatrix(tuple(tuple(row) for row in grid)),
            init=FuzzyVector(tuple(init_entries)),
            props=props,
            labels=tuple(FuzzyVector(tuple(row)) for row in label_grid),
        )


def load_model(text: str) -> Gpks:
    """Parse a UTF-8 JSON model document; see ``gpks_from_document`` for the schema."""
    try:
        document = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return gpks_from_document(document)


def gpks_from_document(document: object) -> Gpks:
    """Validate a decoded model document and build the structure.

    Schema: ``states`` (array of strings), ``init`` (map state -> degree),
    ``transitions`` (array of {from, to, p}), ``ap`` (array of strings),
    ``labels`` (map state -> map proposition -> degree).  Degrees are decimal
    strings ("0.5", "7/20") or numbers; omitted entries are 0.  Duplicate
    (from, to) pairs are rejected.
    """
    if not isinstance(document, Mapping):
        raise ModelFormatError("model document must be a JSON object")
    known = {"states", "init", "transitions", "ap", "labels"}
    unknown = set(document) - known
    if unknown:
        raise ModelFormatError(f"unknown model fields: {sorted(unknown)}")

    states = _string_list(document.get("states"), "states")
    if not states:
        raise ModelFormatError("model must declare at least one state")
    if len(set(states)) != len(states):
        raise ModelFormatError("duplicate state identifier in 'states'")
    props = _string_list(document.get("ap", []), "ap")
    if len(set(props)) != len(props):
        raise ModelFormatError("duplicate proposition name in 'ap'")
    index = {s: i for i, s in enumerate(states)}
    n = len(states)

    init_doc = document.get("init", {})
    if not isinstance(init_doc, Mapping):
        raise ModelFormatError("'init' must be a map from state to degree")
    init_entries = [ZERO] * n
    for name, value in init_doc.items():
        if name not in index:
            raise ModelFormatError(f"unknown state referenced in init: {name!r}")
        init_entries[index[name]] = _degree(value, f"init[{name}]")

    transitions_doc = document.get("transitions", [])
    if not isinstance(transitions_doc, Sequence) or isinstance(transitions_doc, (str, bytes)):
        raise ModelFormatError("'transitions' must be an array of {from, to, p} objects")
    grid = [[ZERO] * n for _ in range(n)]
    seen: set[tuple[str, str]] = set()
    for k, item in enumerate(transitions_doc):
        if not isinstance(item, Mapping) or not {"from", "to", "p"} <= set(item):
            raise ModelFormatError(f"transition #{k} must be an object with 'from', 'to' and 'p'")
        src, dst = item["from"], item["to"]
        for name in (src, dst):
            if name not in index:
                raise ModelFormatError(f"unknown state referenced in transition #{k}: {name!r}")
        if (src, dst) in seen:
            raise ModelFormatError(f"duplicate transition {src!r} -> {dst!r}")
        seen.add((src, dst))
        grid[index[src]][index[dst]] = _degree(item["p"], f"transition {src}->{dst}")

    labels_doc = document.get("labels", {})
    if not isinstance(labels_doc, Mapping):
        raise ModelFormatError("'labels' must be a map from state to {proposition: degree}")
    label_grid = [[ZERO] * n for _ in props]
    for state_name, degrees in labels_doc.items():
        if state_name not in index:
            raise ModelFormatError(f"unknown state referenced in labels: {state_name!r}")
        if not isinstance(degrees, Mapping):
            raise ModelFormatError(f"labels[{state_name}] must be a map from proposition to degree")
        for prop_name, value in degrees.items():
            if prop_name not in props:
                raise ModelFormatError(
                    f"unknown proposition in labels[{state_name}]: {prop_name!r}"
                )
            label_grid[props.index(prop_name)][index[state_name]] = _degree(
                value, f"labels[{state_name}][{prop_name}]"
            )

    return Gpks(
        states=tuple(states),
        transitions=FuzzyMatrix(tuple(tuple(row) for row in grid)),
        init=FuzzyVector(tuple(init_entries)),
        props=tuple(props),
        labels=tuple(FuzzyVector(tuple(row)) for row in label_grid),
    )


def _string_list(value: object, field: str) -> list[str]:
    if not isinstance(value, Sequence) or isinstance(value, (str, bytes)):
        raise ModelFormatError(f"'{field}' must be an array of strings")
    out = list(value)
    if any(not isinstance(v, str) for v in out):
        raise ModelFormatError(f"'{field}' must contain only strings")
    return out


def _degree(value: object, context: str) -> Fraction:
    try:
        return poss(value)  # type: ignore[arg-type]
    except ValueError as exc:
        raise ModelFormatError(f"{context}: {exc}") from None


@dataclass(frozen=True)
class ModelDiagnostics:
    """Classification report; none of these conditions is an error."""

    transitions_normal: bool
    non_normal_states: tuple[str, ...]
    init_normal: bool
    labels_crisp: bool
    deadlock_states: tuple[str, ...]

    @property
    def is_pks(self) -> bool:
        return self.transitions_normal and self.init_normal and self.labels_crisp


def validate(m: Gpks) -> ModelDiagnostics:
    """Report normality of transitions and init, crispness of labels, and
    states with no outgoing transition of positive possibility."""
    one = Fraction(1)
    non_normal = tuple(
        m.states[i] for i in range(m.dim) if max(m.transitions.row(i)) != one
    )
    deadlocks = tuple(
        m.states[i] for i in range(m.dim) if max(m.transitions.row(i)) == ZERO
    )
    crisp = all(e == ZERO or e == one for vec in m.labels for e in vec)
    return ModelDiagnostics(
        transitions_normal=not non_normal,
        non_normal_states=non_normal,
        init_normal=m.dim > 0 and max(m.init) == one,
        labels_crisp=crisp,
        deadlock_states=deadlocks,
    )


def reach_sup(m: Gpks) -> FuzzyVector:
    """Per-state supremum of the min-edge possibility over all infinite runs.

    Computed from the transitive closure: join over t of plus(s,t) ^ plus(t,t),
    i.e. the closure applied to its own diagonal.  Every path-operator value is
    capped by this vector, and it is all-ones exactly when every transition row
    reaches 1.
    """
    plus = m.transitions.transitive_closure()
    return plus.apply(plus.diagonal())


@dataclass(frozen=True)
class Lasso:
    """Ultimately periodic run prefix . cycle^omega, by state index."""

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.cycle:
            raise ValueError("lasso cycle must be nonempty")

    @property
    def start(self) -> int:
        return self.prefix[0] if self.prefix else self.cycle[0]

    def states(self) -> tuple[int, ...]:
        return self.prefix + self.cycle

    def edges(self) -> Iterator[tuple[int, int]]:
        """Consecutive pairs: prefix, seam, cycle interior, and the wrap that
        closes the cycle.  These are all the distinct pairs of the infinite run."""
        walk = self.prefix + self.cycle
        for i in range(len(walk) - 1):
            yield walk[i], walk[i + 1]
        yield self.cycle[-1], self.cycle[0]

    def position(self, i: int) -> int:
        """State index at position *i* of the unrolled infinite run."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]


def _check_indices(m: Gpks, indices: Iterable[int]) -> None:
    for i in indices:
        if not 0 <= i < m.dim:
            raise ValueError(f"state index out of range: {i}")


def lasso_possibility(m: Gpks, lasso: Lasso) -> Fraction:
    """Possibility of the run prefix . cycle^omega, initial degree included.

    The infinite min over consecutive transition degrees collapses to the min
    over the finitely many distinct pairs of the lasso.
    """
    _check_indices(m, lasso.states())
    value = m.init[lasso.start]
    for i, j in lasso.edges():
        if value == ZERO:
            return ZERO
        value = min(value, m.transitions.entry(i, j))
    return value


def cylinder_possibility(
    m: Gpks, path: Sequence[int], r: FuzzyVector | None = None
) -> Fraction:
    """Possibility of the set of all infinite runs extending *path*.

    Equals init(s0) ^ min of the traversed transition degrees ^ the tail
    capacity of the final state; for a single-state path, init(s0) ^ r(s0).
    """
    if not path:
        raise ValueError("path must be nonempty")
    _check_indices(m, path)
    if r is None:
        r = reach_sup(m)
    value = min(m.init[path[0]], r[path[-1]])
    for i, j in zip(path, path[1:]):
        value = min(value, m.transitions.entry(i, j))
    return value


def pathset_possibility(m: Gpks, lassos: Iterable[Lasso]) -> Fraction:
    """Possibility of a set of runs: the max over its members, 0 when empty."""
    best = ZERO
    for lasso in lassos:
        best = max(best, lasso_possibility(m, lasso))
    return best
