"""
Exact minimum set cover for quower and wind-rose covering problems.

An instance lists the elements of a universe (indices 0..N-1 with integer-tuple
labels) and the candidate sets, one per possible center. `solve_exact` runs a
depth-first branch-and-bound on Python integer bit masks:

* branch on the uncovered element with the fewest admissible candidates, the
  children ordered by how many uncovered elements the candidate adds
  (largest first, ties to the earlier candidate);
* a candidate tried in an earlier sibling stays excluded in the later ones, so
  every subset is explored once;
* prune with the smallest k whose k largest residual candidates could cover
  what is left;
* start from the greedy incumbent.

The same instance can be written as a 0-1 program in CPLEX LP format with
`write_lp` and read back with `read_lp`.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor, wait
from dataclasses import dataclass, field as dc_field
from enum import Enum
from functools import cached_property
from itertools import combinations, product
from pathlib import Path
from typing import Any, Iterable, Sequence, TextIO

from quower._utils import _iter_bits, _mask_of
from quower.board import BoardCover, BoardPoint, BoardVariant, cells, check_point
from quower.config import SYMMETRY_MODES, solver_config
from quower.errors import InputError
from quower.field import FieldSpec, field
from quower.log_cfg import logger
from quower.projective import ProjPoint, plane_points, wind_rose


class Status(Enum):
    OPTIMAL = "optimal"
    FEASIBLE_ONLY = "feasible_only"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SetCoverInstance:
    """
    A universe {0, ..., universe_size - 1} and the candidate sets covering it.

    Attributes
    ----------
    universe_size : int
        Number of elements.
    element_labels : tuple
        Integer-tuple label of every element, in index order.
    candidates : tuple
        ``(label, frozenset of element indices)`` pairs; labels are unique.
    metadata : dict
        Origin of the instance, e.g. ``{"kind": "board", "n": 7, "variant": "full"}``
        or ``{"kind": "windrose", "q": 5, ...}``.

    Raises
    ------
    InputError
        When a set leaves the universe, labels repeat or some element lies in
        no candidate (the instance is infeasible).
    """
    universe_size: int
    element_labels: tuple
    candidates: tuple
    metadata: dict = dc_field(default_factory=dict, hash=False)

    def __post_init__(self):
        labels = tuple(tuple(label) for label in self.element_labels)
        if len(labels) != self.universe_size:
            raise InputError(f"{len(labels)} labels given for {self.universe_size} elements")
        candidates = tuple((tuple(label), frozenset(members)) for label, members in self.candidates)
        seen = set()
        for label, members in candidates:
            if label in seen:
                raise InputError(f"candidate label {label} appears twice")
            seen.add(label)
            outside = [e for e in members if not 0 <= e < self.universe_size]
            if outside:
                raise InputError(f"candidate {label} has elements outside the universe: {sorted(outside)[:5]}")
        object.__setattr__(self, "element_labels", labels)
        object.__setattr__(self, "candidates", candidates)
        reached = set().union(*(members for _, members in candidates)) if candidates else set()
        missing = [labels[e] for e in range(self.universe_size) if e not in reached]
        if missing:
            raise InputError(f"instance is infeasible: no candidate covers {missing[:5]}")

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Candidate sets as bit masks."""
        return tuple(_mask_of(members) for _, members in self.candidates)

    @property
    def full_mask(self) -> int:
        return (1 << self.universe_size) - 1

    @property
    def candidate_labels(self) -> list[tuple]:
        return [label for label, _ in self.candidates]

    def candidate_index(self, label: Sequence[int]) -> int:
        label = tuple(label)
        for i, (other, _) in enumerate(self.candidates):
            if other == label:
                return i
        raise InputError(f"no candidate labelled {label}")

    def covers(self, labels: Iterable[Sequence[int]]) -> bool:
        """Whether the candidates with these labels cover the universe."""
        covered = 0
        for label in labels:
            covered |= self.masks[self.candidate_index(label)]
        return covered == self.full_mask


@dataclass(frozen=True)
class SearchStats:
    """Certificate of a search: explored nodes, proven lower bound and wall time."""
    nodes: int = 0
    lower_bound: int = 0
    elapsed: float = 0.0
    timed_out: bool = False
    symmetry: str = "off"
    workers: int = 1


@dataclass(frozen=True)
class SolveResult:
    """
    Attributes
    ----------
    optimum : int or None
        Size of the selection; None when the status is INFEASIBLE.
    chosen : tuple
        Labels of the selected candidates, in candidate order.
    status : Status
    proof : SearchStats
    """
    optimum: int | None
    chosen: tuple
    status: Status
    proof: SearchStats = SearchStats()


@dataclass(frozen=True)
class SolveOptions:
    """Per-call solver settings; None falls back to `quower.config.solver_config()`.

    ``time_limit=float("inf")`` disables the limit for this call.
    """
    symmetry: str | None = None
    time_limit: float | None = None
    workers: int | None = None

    def resolve(self, inst: SetCoverInstance) -> tuple[str, float | None, int]:
        config = solver_config()
        symmetry = self.symmetry if self.symmetry is not None else config.symmetry
        if symmetry not in SYMMETRY_MODES:
            raise InputError(f"symmetry must be one of {SYMMETRY_MODES}, got {symmetry!r}")
        limit = self.time_limit if self.time_limit is not None else config.time_limit_for(inst)
        if limit is not None and limit == float("inf"):
            limit = None
        workers = self.workers if self.workers is not None else config.workers
        if workers < 1:
            raise InputError("workers must be at least 1")
        return symmetry, limit, workers


# ---------------------------------------------------------------- builders

def build_board_instance(n: int, variant: BoardVariant = BoardVariant.FULL) -> SetCoverInstance:
    """
    Cells of the variant as elements, one candidate QW(p) per p of Z_n^2.

    Elements and candidates are both in row-major order and labelled (a, b).
    """
    variant = BoardVariant(variant)
    universe = cells(n, variant)
    position = {cell: i for i, cell in enumerate(universe)}
    candidates = []
    for p in cells(n, BoardVariant.FULL):
        members = frozenset(position[x] for x in universe
                            if x.a == p.a or x.b == p.b or (x.b - x.a - p.b + p.a) % n == 0)
        candidates.append((tuple(p), members))
    return SetCoverInstance(len(universe), tuple(tuple(c) for c in universe), tuple(candidates),
                            {"kind": "board", "n": n, "variant": variant.value})


def build_windrose_instance(q: int) -> SetCoverInstance:
    """All points of PG(2, q) as elements, one candidate W(p) per point, labelled by coordinate indices."""
    spec = field(q)
    universe = plane_points(spec)
    position = {p: i for i, p in enumerate(universe)}
    candidates = tuple((p.key, frozenset(position[x] for x in wind_rose(p))) for p in universe)
    metadata = {"kind": "windrose", "q": q}
    metadata.update(spec.metadata())
    return SetCoverInstance(len(universe), tuple(p.key for p in universe), candidates, metadata)


def board_cover_from(inst: SetCoverInstance, result: SolveResult) -> BoardCover:
    """The chosen centers of a board instance as a `BoardCover`."""
    if inst.metadata.get("kind") != "board":
        raise InputError("not a board instance")
    if result.status is Status.INFEASIBLE:
        raise InputError("an infeasible result has no cover")
    n = inst.metadata["n"]
    centers = frozenset(check_point(n, BoardPoint(*label)) for label in result.chosen)
    return BoardCover(n, BoardVariant(inst.metadata["variant"]), centers)


def _instance_field(inst: SetCoverInstance) -> FieldSpec:
    meta = inst.metadata
    if "modulus" in meta:
        return FieldSpec(meta["p"], meta["k"], tuple(meta["modulus"]))
    return field(meta["q"])


def wind_roses_from(inst: SetCoverInstance, result: SolveResult,
                    spec: FieldSpec | None = None) -> list[ProjPoint]:
    """The chosen centers of a wind-rose instance as points of PG(2, q)."""
    if inst.metadata.get("kind") != "windrose":
        raise InputError("not a wind-rose instance")
    if result.status is Status.INFEASIBLE:
        raise InputError("an infeasible result has no cover")
    spec = spec or _instance_field(inst)
    return [ProjPoint.from_coords(spec, label) for label in result.chosen]


# ---------------------------------------------------------------- search

class _Timeout(Exception):
    pass


def _covering_masks(masks: Sequence[int], full: int) -> list[int]:
    """For every element, the bit mask of the candidates containing it."""
    return [_mask_of(i for i, m in enumerate(masks) if m >> e & 1) for e in range(full.bit_length())]


def _greedy(masks: Sequence[int], full: int, covered: int = 0, chosen: Sequence[int] = ()) -> list[int]:
    chosen = list(chosen)
    while covered != full:
        remaining = full & ~covered
        gains = [(m & remaining).bit_count() for m in masks]
        best = max(range(len(masks)), key=lambda i: (gains[i], -i))
        if gains[best] == 0:
            raise InputError("greedy cannot complete the cover: instance is infeasible")
        chosen.append(best)
        covered |= masks[best]
    return chosen


# seconds a worker gets past the deadline to report its incumbent
_REPORT_GRACE = 1.0


class _BranchAndBound:
    """Depth-first search for a cover strictly smaller than the incumbent."""

    def __init__(self, masks: Sequence[int], full: int, incumbent: Sequence[int],
                 deadline: float | None, progress_every: int, covering: Sequence[int] | None = None):
        self.masks = masks
        self.full = full
        self.best = list(incumbent)
        self.best_size = len(incumbent)
        self.improved = False
        self.deadline = deadline
        self.progress_every = progress_every
        self.covering = covering if covering is not None else _covering_masks(masks, full)
        self.nodes = 0

    def run(self, covered: int, chosen: list[int], allowed: int) -> bool:
        """Search below the given node; returns True when the time limit stopped it."""
        if self._expired():
            return True
        try:
            self._search(covered, chosen, allowed)
        except _Timeout:
            return True
        return False

    def lower_bound(self, remaining: int, allowed: int) -> int:
        need = remaining.bit_count()
        if need == 0:
            return 0
        sizes = sorted(((self.masks[i] & remaining).bit_count() for i in _iter_bits(allowed)), reverse=True)
        total = 0
        for k, size in enumerate(sizes, 1):
            if size == 0:
                break
            total += size
            if total >= need:
                return k
        return len(self.masks) + 1

    def branching(self, remaining: int, allowed: int) -> int:
        """Admissible candidates of the uncovered element with the fewest of them."""
        best_options, best_count = 0, None
        for e in _iter_bits(remaining):
            options = self.covering[e] & allowed
            count = options.bit_count()
            if best_count is None or count < best_count:
                best_options, best_count = options, count
                if count <= 1:
                    break
        return best_options

    def children(self, remaining: int, options: int) -> list[int]:
        return sorted(_iter_bits(options), key=lambda i: (-(self.masks[i] & remaining).bit_count(), i))

    def _expired(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes % 1024 == 0 and self._expired():
            raise _Timeout
        if self.progress_every and self.nodes % self.progress_every == 0:
            logger.debug("%d nodes explored, incumbent %d", self.nodes, self.best_size)

    def _search(self, covered: int, chosen: list[int], allowed: int) -> None:
        self._tick()
        remaining = self.full & ~covered
        depth = len(chosen)
        if not remaining:
            if depth < self.best_size:
                self.best, self.best_size, self.improved = list(chosen), depth, True
                logger.debug("new incumbent of size %d after %d nodes", depth, self.nodes)
            return
        if depth + 1 >= self.best_size:
            return
        if depth + self.lower_bound(remaining, allowed) >= self.best_size:
            return
        options = self.branching(remaining, allowed)
        for i in self.children(remaining, options):
            allowed &= ~(1 << i)
            chosen.append(i)
            self._search(covered | self.masks[i], chosen, allowed)
            chosen.pop()


def _explore_branch(task: tuple) -> tuple[list[int] | None, int, bool]:
    masks, full, incumbent, deadline, progress_every, covered, chosen, allowed = task
    search = _BranchAndBound(masks, full, incumbent, deadline, progress_every)
    timed_out = search.run(covered, list(chosen), allowed)
    return (search.best if search.improved else None), search.nodes, timed_out


def stabilizer_orbit_minima(n: int) -> frozenset[tuple[int, int]]:
    """
    Smallest cell of every orbit of the cells other than (0, 0) under the
    board automorphisms fixing (0, 0).

    The group is generated by the coordinate swap (a, b) -> (b, a), the map
    (a, b) -> (a, a - b) exchanging columns and diagonals, and the negation
    (a, b) -> (-a, -b). Each of them sends QW(x) onto QW of the image of x.
    """
    moves = (lambda a, b: (b, a), lambda a, b: (a, (a - b) % n), lambda a, b: (-a % n, -b % n))
    seen, minima = {(0, 0)}, set()
    for start in product(range(n), repeat=2):
        if start in seen:
            continue
        orbit, frontier = {start}, [start]
        while frontier:
            cell = frontier.pop()
            for move in moves:
                image = move(*cell)
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        seen |= orbit
        minima.add(min(orbit))
    return frozenset(minima)


def _reduced_problem(inst: SetCoverInstance, symmetry: str) -> tuple[list[int], int, list[int], str]:
    """
    Masks, universe mask and forced candidates after symmetry reduction.

    Full boards force the candidate (0, 0): every translation is an
    automorphism, so some optimum contains it. When QW(0, 0) leaves cells
    uncovered a virtual element, covered only by the orbit minima of
    `stabilizer_orbit_minima`, asks for a second center among them. With
    "translation" a punctured board gets a virtual element covered by the
    column-0 candidates only; the diagonal translations move any center to
    column 0.
    """
    masks, full = list(inst.masks), inst.full_mask
    meta = inst.metadata
    if symmetry == "off" or meta.get("kind") != "board" or inst.universe_size == 0:
        return masks, full, [], "off"
    virtual = 1 << inst.universe_size
    if meta.get("variant") == BoardVariant.FULL.value:
        origin = inst.candidate_index((0, 0))
        if masks[origin] == full or "n" not in meta:
            return masks, full, [origin], "translation"
        minima = stabilizer_orbit_minima(meta["n"])
        masks = [m | virtual if tuple(label) in minima else m
                 for m, label in zip(masks, inst.candidate_labels)]
        return masks, full | virtual, [origin], "translation+stabilizer"
    if symmetry == "translation":
        masks = [m | virtual if label[0] == 0 else m for m, label in zip(masks, inst.candidate_labels)]
        return masks, full | virtual, [], "translation"
    return masks, full, [], "off"


def solve_exact(inst: SetCoverInstance, opts: SolveOptions | None = None) -> SolveResult:
    """
    Minimum cover of the instance by branch-and-bound.

    Parameters
    ----------
    inst : SetCoverInstance
    opts : SolveOptions, optional
        ``symmetry``: "auto" reduces Full board instances by translations,
        "translation" also reduces Punctured boards by diagonal translations,
        "off" searches unreduced. ``workers`` > 1 explores the root branches in a
        process pool; the merge keeps the smallest result and, among equal sizes,
        the earliest branch, which is the cover the sequential search returns.

    Returns
    -------
    SolveResult
        OPTIMAL with a minimum selection, or FEASIBLE_ONLY with the incumbent and
        the root lower bound when the time limit was hit.
    """
    symmetry, time_limit, workers = (opts or SolveOptions()).resolve(inst)
    started = time.perf_counter()
    deadline = None if time_limit is None else time.monotonic() + time_limit
    masks, full, forced, used_symmetry = _reduced_problem(inst, symmetry)
    progress_every = solver_config().progress_every

    covered = 0
    for i in forced:
        covered |= masks[i]
    allowed = _mask_of(range(len(masks))) & ~_mask_of(forced)
    incumbent = _greedy(masks, full, covered, forced)
    search = _BranchAndBound(masks, full, incumbent, deadline, progress_every)
    root_bound = len(forced) + search.lower_bound(full & ~covered, allowed)
    logger.debug("solving %s: %d elements, %d candidates, greedy %d, root bound %d",
                 inst.metadata, inst.universe_size, len(masks), len(incumbent), root_bound)

    remaining = full & ~covered
    if workers > 1 and remaining and root_bound < len(incumbent):
        best, nodes, timed_out = _solve_parallel(search, covered, forced, allowed, workers)
    else:
        workers = 1
        timed_out = search.run(covered, list(forced), allowed)
        best, nodes = search.best, search.nodes

    elapsed = time.perf_counter() - started
    chosen = tuple(inst.candidates[i][0] for i in sorted(best))
    if timed_out:
        logger.warning("time limit of %.1fs hit on %s: best %d, lower bound %d",
                       time_limit, inst.metadata, len(best), root_bound)
        stats = SearchStats(nodes, root_bound, elapsed, True, used_symmetry, workers)
        return SolveResult(len(best), chosen, Status.FEASIBLE_ONLY, stats)
    logger.info("optimum %d for %s (%d nodes, %.2fs)", len(best), inst.metadata, nodes, elapsed)
    stats = SearchStats(nodes, len(best), elapsed, False, used_symmetry, workers)
    return SolveResult(len(best), chosen, Status.OPTIMAL, stats)


def _solve_parallel(search: _BranchAndBound, covered: int, forced: list[int], allowed: int,
                    workers: int) -> tuple[list[int], int, bool]:
    """
    Explore the root branches in a process pool under the deadline of `search`.

    Every branch shares the one absolute deadline. Branches still queued when it
    passes are cancelled and count as unfinished.
    """
    remaining = search.full & ~covered
    options = search.branching(remaining, allowed)
    tasks = []
    for i in search.children(remaining, options):
        allowed &= ~(1 << i)
        tasks.append((search.masks, search.full, search.best, search.deadline, search.progress_every,
                      covered | search.masks[i], forced + [i], allowed))
    logger.debug("splitting %d root branches over %d workers", len(tasks), workers)
    timeout = None
    if search.deadline is not None:
        timeout = max(0.0, search.deadline - time.monotonic()) + _REPORT_GRACE
    executor = ProcessPoolExecutor(max_workers=workers)
    futures = [executor.submit(_explore_branch, task) for task in tasks]
    done, pending = wait(futures, timeout=timeout)
    executor.shutdown(wait=not pending, cancel_futures=True)
    if pending:
        logger.warning("%d of %d root branches unfinished at the time limit", len(pending), len(tasks))
    best, nodes, timed_out = search.best, 1, bool(pending)
    for future in futures:
        if future not in done:
            continue
        found, explored, stopped = future.result()
        nodes += explored
        timed_out = timed_out or stopped
        if found is not None and len(found) < len(best):
            best = found
    return best, nodes, timed_out


def solve_greedy(inst: SetCoverInstance) -> SolveResult:
    """Largest-uncovered-first greedy cover; ties go to the earlier candidate."""
    started = time.perf_counter()
    chosen = _greedy(inst.masks, inst.full_mask)
    labels = tuple(inst.candidates[i][0] for i in sorted(chosen))
    stats = SearchStats(0, 0, time.perf_counter() - started)
    return SolveResult(len(chosen), labels, Status.FEASIBLE_ONLY, stats)


def solve_bruteforce(inst: SetCoverInstance, max_size: int) -> SolveResult:
    """
    Exhaustive enumeration of all candidate subsets of size at most max_size.

    The first cover found in (size, lexicographic) order is returned as
    OPTIMAL; INFEASIBLE means no cover of size <= max_size exists.
    """
    masks, full = inst.masks, inst.full_mask
    started = time.perf_counter()
    nodes = 0
    for k in range(max_size + 1):
        for combo in combinations(range(len(masks)), k):
            nodes += 1
            covered = 0
            for i in combo:
                covered |= masks[i]
            if covered == full:
                stats = SearchStats(nodes, k, time.perf_counter() - started)
                return SolveResult(k, tuple(inst.candidates[i][0] for i in combo), Status.OPTIMAL, stats)
    stats = SearchStats(nodes, max_size + 1, time.perf_counter() - started)
    return SolveResult(None, (), Status.INFEASIBLE, stats)


# ---------------------------------------------------------------- LP text

_TERMS_PER_LINE = 8


def _name(prefix: str, label: Sequence[int]) -> str:
    return prefix + "_" + "_".join(str(v) for v in label)


def _label(name: str, prefix: str) -> tuple[int, ...]:
    if not name.startswith(prefix + "_"):
        raise InputError(f"unexpected LP name {name!r}")
    try:
        return tuple(int(v) for v in name[len(prefix) + 1:].split("_"))
    except ValueError as exc:
        raise InputError(f"unexpected LP name {name!r}") from exc


def _sum_lines(head: str, names: Sequence[str]) -> list[str]:
    terms = [f"+ {v}" for v in names]
    lines = []
    for start in range(0, max(len(terms), 1), _TERMS_PER_LINE):
        chunk = " ".join(terms[start:start + _TERMS_PER_LINE])
        lines.append((head if start == 0 else " " * len(head)) + chunk)
    return lines


def lp_text(inst: SetCoverInstance) -> str:
    """The 0-1 program min sum x_p s.t. every element is covered at least once, in CPLEX LP format."""
    variables = [_name("x", label) for label, _ in inst.candidates]
    rows = [[] for _ in range(inst.universe_size)]
    for name, (_, members) in zip(variables, inst.candidates):
        for e in sorted(members):
            rows[e].append(name)
    lines = ["\\ quower minimum cover model",
             "\\ metadata: " + json.dumps(inst.metadata, sort_keys=True),
             "Minimize"]
    lines += _sum_lines(" min: ", variables)
    lines.append("Subject To")
    for label, row in zip(inst.element_labels, rows):
        body = _sum_lines(f" {_name('e', label)}: ", row)
        body[-1] += " >= 1"
        lines += body
    lines.append("Binary")
    lines += [f" {v}" for v in variables]
    lines.append("End")
    return "\n".join(lines) + "\n"


def write_lp(inst: SetCoverInstance, destination: str | Path | TextIO) -> str:
    """Write `lp_text(inst)` to a path or an open text stream and return the text."""
    text = lp_text(inst)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8") as fw:
            fw.write(text)
    logger.info("wrote LP model with %d rows and %d binaries", inst.universe_size, len(inst.candidates))
    return text


def read_lp(source: str | Path | TextIO) -> SetCoverInstance:
    """Parse a model written by `write_lp` back into a `SetCoverInstance`."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    metadata: dict[str, Any] = {}
    sections: dict[str, list[str]] = {"minimize": [], "subject to": [], "binary": []}
    current = None
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("\\"):
            if stripped.startswith("\\ metadata:"):
                metadata = json.loads(stripped[len("\\ metadata:"):])
            continue
        key = stripped.lower()
        if key in sections:
            current = key
            continue
        if key == "end":
            break
        if stripped and current is None:
            raise InputError(f"LP text outside of a section: {stripped!r}")
        if stripped:
            sections[current].extend(stripped.split())

    variables = [t for t in sections["minimize"] if t not in ("+", "min:")]
    index = {v: i for i, v in enumerate(variables)}
    members: list[set[int]] = [set() for _ in variables]
    element_labels = []
    tokens = iter(sections["subject to"])
    for token in tokens:
        if not token.endswith(":"):
            raise InputError(f"expected a row name, got {token!r}")
        row = len(element_labels)
        element_labels.append(_label(token[:-1], "e"))
        for term in tokens:
            if term == ">=":
                if next(tokens, None) != "1":
                    raise InputError(f"row {token[:-1]} must have right-hand side 1")
                break
            if term == "+":
                continue
            if term not in index:
                raise InputError(f"row {token[:-1]} uses the undeclared variable {term!r}")
            members[index[term]].add(row)
        else:
            raise InputError(f"row {token[:-1]} is not terminated")
    if set(sections["binary"]) != set(variables):
        raise InputError("the Binary section must list exactly the objective variables")
    candidates = tuple((_label(v, "x"), frozenset(m)) for v, m in zip(variables, members))
    return SetCoverInstance(len(element_labels), tuple(element_labels), candidates, metadata)

