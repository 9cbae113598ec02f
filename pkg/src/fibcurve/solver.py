"""Decoration endpoints from first principles, and concatenation checks.

A decoration system assigns an ordered pair of distinct corners to each of
the twelve ``+`` prototiles (``-`` tiles use the reversed pair).  It is
consistent with a substitution when, inside every phi-inflated parent, the
children's decorations chain head to tail from phi*start(parent) to
phi*end(parent).  :func:`solve_decorations` enumerates every consistent
system by backtracking; :func:`enumerate_connected_systems` widens the search
to all decorated versions of the Cartesian-square tiles.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .goldenfield import PHI, Point2, Rect, ORIGIN, phi_pow
from .prototiles import (
    ALL_LABELS,
    BASE_LABELS,
    CORNER_PAIRS,
    DIMENSIONS,
    REFERENCE_DECORATIONS,
    Color,
    Corner,
    Decoration,
    Label,
)
from .substitution import CELLS, Patch, SubstitutionRule, printed_rule, rule_omega

# ---------------------------------------------------------------------------
# problem and solution types


@dataclass(frozen=True)
class ChildSlot:
    color: Color
    index: int | None  # None: to be chosen from ``candidates``
    sign: int
    candidates: tuple[int, ...] = ()

    def label(self, index: int | None = None) -> Label:
        return Label(self.color, self.index if index is None else index, self.sign)

    def __str__(self) -> str:
        idx = "?" if self.index is None else str(self.index)
        return f"{self.color.value}{idx}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class SolverProblem:
    """Children of each ``+`` parent with cells and signs fixed."""

    rows: tuple[tuple[Label, tuple[ChildSlot, ...]], ...]

    def free_slots(self) -> list[tuple[Label, int]]:
        return [
            (parent, pos)
            for parent, slots in self.rows
            for pos, slot in enumerate(slots)
            if slot.index is None
        ]


def problem_from_rule(
    rule: SubstitutionRule | None = None, free_d_indices: bool = False
) -> SolverProblem:
    rule = rule or rule_omega()
    rows = []
    for parent in BASE_LABELS:
        slots = []
        for child in rule[parent]:
            lab = child.label
            if free_d_indices and lab.color is Color.D:
                slots.append(ChildSlot(lab.color, None, lab.sign, (1, 2, 3, 4)))
            else:
                slots.append(ChildSlot(lab.color, lab.index, lab.sign))
        rows.append((parent, tuple(slots)))
    return SolverProblem(tuple(rows))


@dataclass(frozen=True)
class DecorationSystem:
    decorations: tuple[tuple[Label, Decoration], ...]
    # (parent, child position, chosen index) for every free slot
    indices: tuple[tuple[Label, int, int], ...] = ()
    _table: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_table", dict(self.decorations))

    def decoration(self, label: Label) -> Decoration:
        dec = self._table[label.base]
        return dec if label.sign > 0 else dec.reversed()

    def points(self, label: Label) -> tuple[Point2, Point2]:
        return self.decoration(label).points(label.width, label.height)

    def as_dict(self) -> dict[str, str]:
        return {str(lab): str(dec) for lab, dec in self.decorations}


def reference_system() -> DecorationSystem:
    return DecorationSystem(tuple(sorted(REFERENCE_DECORATIONS.items())))


# ---------------------------------------------------------------------------
# backtracking search

def _point_key(label: Label, corner: Corner, offset: Point2, scale=None) -> tuple:
    p = corner.resolve(*DIMENSIONS[label.color])
    if scale is not None:
        p = p.scale(scale)
    p = p + offset
    return (p.x.a, p.x.b, p.y.a, p.y.b)


class _Node:
    """A search variable: a base label's corner pair, or a free child slot.

    Slot values are ``(index, corner pair of the + tile)``.
    """

    __slots__ = ("name", "domain")

    def __init__(self, name, domain):
        self.name = name
        self.domain = tuple(domain)


def _build_network(problem: SolverProblem):
    """Variables and binary constraints ``(u, v, pred(value_u, value_v))``."""
    nodes = {lab: _Node(lab, CORNER_PAIRS) for lab in BASE_LABELS}
    for parent, pos in problem.free_slots():
        slot = dict(problem.rows)[parent][pos]
        dom = [(i, pair) for i in slot.candidates for pair in CORNER_PAIRS]
        nodes[(parent, pos)] = _Node((parent, pos), dom)

    def child_end(parent, pos, slot, which, offset):
        """(variable, value -> point key) for one end of a child decoration."""
        if slot.index is not None:
            lab = slot.label()

            def pt(value, lab=lab):
                pair = value if lab.sign > 0 else (value[1], value[0])
                return _point_key(lab, pair[which], offset)

            return lab.base, pt

        def pt_free(value, slot=slot):
            lab = slot.label(value[0])
            pair = value[1] if lab.sign > 0 else (value[1][1], value[1][0])
            return _point_key(lab, pair[which], offset)

        return (parent, pos), pt_free

    def parent_end(parent, which):
        return parent, lambda value: _point_key(parent, value[which], ORIGIN, PHI)

    constraints: list[tuple[object, object, Callable]] = []
    for parent, slots in problem.rows:
        cells = CELLS[parent.color]
        n = len(slots)
        for j in range(n + 1):
            if j == 0:
                left = parent_end(parent, 0)
            else:
                sl = slots[j - 1]
                left = child_end(parent, j - 1, sl, 1, cells[sl.color])
            if j == n:
                right = parent_end(parent, 1)
            else:
                sr = slots[j]
                right = child_end(parent, j, sr, 0, cells[sr.color])
            (u, fu), (v, fv) = left, right
            constraints.append((u, v, lambda a, b, fu=fu, fv=fv: fu(a) == fv(b)))

    for parent, pos in problem.free_slots():
        slot = dict(problem.rows)[parent][pos]
        for i in slot.candidates:
            d = Label(slot.color, i, 1)
            constraints.append(
                ((parent, pos), d, lambda sv, dv, i=i: sv[0] != i or sv[1] == dv)
            )

    # D_i scaled by phi is A_i: identical corner names
    for i in range(1, 5):
        constraints.append((Label(Color.A, i, 1), Label(Color.D, i, 1), lambda a, d: a == d))
    return nodes, constraints


def solve_decorations(
    problem: SolverProblem | None = None,
    order: Sequence[int] | None = None,
    seed: int | None = None,
) -> list[DecorationSystem]:
    """Every decoration system satisfying all chain constraints.

    Backtracking over the variables in a fixed order while maintaining arc
    consistency.  ``order`` (a permutation of variable positions) or ``seed``
    (random shuffle) change that order; the returned list is sorted, so it
    does not depend on either.
    """
    problem = problem or problem_from_rule()
    nodes, constraints = _build_network(problem)
    names = list(nodes)
    if order is None and seed is not None:
        order = list(range(len(names)))
        random.Random(seed).shuffle(order)
    if order is not None:
        names = [names[i] for i in order]

    # arcs[y] = [(x, pred(value of x, value of y))]
    arcs: dict[object, list] = {name: [] for name in names}
    for u, v, pred in constraints:
        if u == v:
            raise ValueError(f"constraint of {u} with itself")
        arcs[v].append((u, pred))
        arcs[u].append((v, lambda b, a, pred=pred: pred(a, b)))

    def revise(domains, x, y, pred) -> bool:
        dy = domains[y]
        keep = tuple(a for a in domains[x] if any(pred(a, b) for b in dy))
        if len(keep) != len(domains[x]):
            domains[x] = keep
            return True
        return False

    def propagate(domains, queue) -> bool:
        while queue:
            y = queue.pop()
            for x, pred_xy in arcs[y]:
                if revise(domains, x, y, pred_xy):
                    if not domains[x]:
                        return False
                    queue.append(x)
        return True

    domains = {name: nodes[name].domain for name in names}
    found: list[DecorationSystem] = []
    free = problem.free_slots()

    def search(i: int, domains: dict) -> None:
        if i == len(names):
            decs = tuple((lab, Decoration(*domains[lab][0])) for lab in BASE_LABELS)
            idx = tuple((p, pos, domains[(p, pos)][0][0]) for p, pos in free)
            found.append(DecorationSystem(decs, idx))
            return
        name = names[i]
        for value in domains[name]:
            trial = dict(domains)
            trial[name] = (value,)
            if propagate(trial, [name]):
                search(i + 1, trial)

    if propagate(domains, list(names)):
        search(0, domains)
    found.sort(key=_system_key)
    return found


def _system_key(system: DecorationSystem):
    return (
        [(str(lab), dec.start.value, dec.end.value) for lab, dec in system.decorations],
        [(str(p), pos, idx) for p, pos, idx in system.indices],
    )


def resolved_words(problem: SolverProblem, system: DecorationSystem) -> dict[str, tuple[str, ...]]:
    """The ``+`` rows of ``problem`` with free indices filled in from ``system``."""
    chosen = {(p, pos): idx for p, pos, idx in system.indices}
    out = {}
    for parent, slots in problem.rows:
        out[str(parent)] = tuple(
            str(s.label(chosen.get((parent, pos)))) for pos, s in enumerate(slots)
        )
    return out


@dataclass
class SolverDiagnostic:
    corrected: list[DecorationSystem]
    printed: list[DecorationSystem]
    free: list[DecorationSystem]
    free_words: list[dict[str, tuple[str, ...]]]


def diagnose_printed_rows() -> SolverDiagnostic:
    """Solve with the corrected rows, the printed rows, and free D-indices."""
    free_problem = problem_from_rule(printed_rule(), free_d_indices=True)
    free = solve_decorations(free_problem)
    return SolverDiagnostic(
        corrected=solve_decorations(problem_from_rule(rule_omega())),
        printed=solve_decorations(problem_from_rule(printed_rule())),
        free=free,
        free_words=[resolved_words(free_problem, s) for s in free],
    )


# ---------------------------------------------------------------------------
# checks on patches


@dataclass
class ConcatenationReport:
    ok: bool
    start: Point2 | None
    end: Point2 | None
    expected_start: Point2 | None
    expected_end: Point2 | None
    violation: str | None = None
    position: int | None = None  # 0-based tile index of the first violation

    def __bool__(self) -> bool:
        return self.ok


def verify_concatenation(
    patch: Patch, system: DecorationSystem | None = None, seed: Label | None = None
) -> ConcatenationReport:
    """Check that the tiles' decorations chain head to tail, exactly.

    The chain must start at phi^k times the seed's start point and end at
    phi^k times its end point, where k is the patch level.
    """
    system = system or reference_system()
    seed = seed or patch.seed
    if not patch.tiles:
        return ConcatenationReport(False, None, None, None, None, "empty patch")
    prev_end = None
    first_start = None
    for i, tile in enumerate(patch.tiles):
        s, e = system.points(tile.label)
        s, e = s + tile.translation, e + tile.translation
        if prev_end is None:
            first_start = s
        elif prev_end != s:
            return ConcatenationReport(
                False, first_start, None, None, None,
                f"tile {i} ({tile.label}) starts at {s} but tile {i - 1} ends at {prev_end}",
                i,
            )
        prev_end = e
    exp_s = exp_e = None
    if seed is not None:
        scale = phi_pow(patch.level)
        s0, e0 = system.points(seed)
        exp_s = patch.support.origin + s0.scale(scale)
        exp_e = patch.support.origin + e0.scale(scale)
        if first_start != exp_s:
            return ConcatenationReport(
                False, first_start, prev_end, exp_s, exp_e,
                f"chain starts at {first_start}, expected {exp_s}", 0,
            )
        if prev_end != exp_e:
            return ConcatenationReport(
                False, first_start, prev_end, exp_s, exp_e,
                f"chain ends at {prev_end}, expected {exp_e}", len(patch.tiles) - 1,
            )
    return ConcatenationReport(True, first_start, prev_end, exp_s, exp_e)


@dataclass
class OrderCheck:
    order: list[Label]
    ok: bool
    problem: str | None = None


def induced_order(patch: Patch, system: DecorationSystem | None = None) -> OrderCheck:
    """The total order in which the patch decoration visits its tiles."""
    order = patch.labels()
    seen = set()
    for i, tile in enumerate(patch.tiles):
        if tile.translation in seen:
            return OrderCheck(order, False, f"tile {i} visited twice")
        seen.add(tile.translation)
    report = verify_concatenation(patch, system, seed=None)
    if not report.ok:
        return OrderCheck(order, False, report.violation)
    return OrderCheck(order, True)


# ---------------------------------------------------------------------------
# widened search over all decorated Cartesian-square tiles

DecoratedType = tuple  # (Color, Corner, Corner)

_TRANSPOSE_COLOR = {Color.A: Color.A, Color.B: Color.C, Color.C: Color.B, Color.D: Color.D}
_TRANSPOSE_CORNER = {Corner.BL: Corner.BL, Corner.TR: Corner.TR, Corner.BR: Corner.TL, Corner.TL: Corner.BR}


def _type_str(t: DecoratedType) -> str:
    return f"{t[0].value}[{t[1].value}->{t[2].value}]"


def all_decorated_types() -> list[DecoratedType]:
    return [(c, s, e) for c in Color for s, e in CORNER_PAIRS]


def valid_chains(t: DecoratedType) -> list[tuple[DecoratedType, ...]]:
    """Orderings and decorations of the children of ``t`` that chain correctly.

    Consecutive cells must share an edge; each child's decoration runs
    between two of its corners.  Children are listed in cell-visiting order.
    """
    color, s, e = t
    w, h = DIMENSIONS[color]
    start = s.resolve(w, h).scale(PHI)
    end = e.resolve(w, h).scale(PHI)
    cells = list(CELLS[color].items())
    rects = {c: Rect(off, *DIMENSIONS[c]) for c, off in cells}
    out = []
    for perm in itertools.permutations([c for c, _ in cells]):
        if any(not rects[a].shares_edge(rects[b]) for a, b in zip(perm, perm[1:])):
            continue

        def extend(i: int, at: Point2, acc: list):
            if i == len(perm):
                if at == end:
                    out.append(tuple(acc))
                return
            c = perm[i]
            cw, ch = DIMENSIONS[c]
            off = CELLS[color][c]
            for cs, ce in CORNER_PAIRS:
                if cs.resolve(cw, ch) + off != at:
                    continue
                extend(i + 1, ce.resolve(cw, ch) + off, acc + [(c, cs, ce)])

        extend(0, start, [])
    return out


@dataclass
class WideSearchResult:
    seed: DecoratedType
    systems: list[dict]  # decorated type -> chain
    connected: list[dict]


def _expand_types(system: dict, seed: DecoratedType, depth: int):
    tiles = [(seed, ORIGIN)]
    for _ in range(depth):
        nxt = []
        for t, pos in tiles:
            base = pos.scale(PHI)
            for child in system[t]:
                nxt.append((child, base + CELLS[t[0]][child[0]]))
        tiles = nxt
    return tiles


def _connected_to_depth(system: dict, seed: DecoratedType, depth: int) -> bool:
    for k in range(2, depth + 1):
        tiles = _expand_types(system, seed, k)
        rects = [Rect(pos, *DIMENSIONS[t[0]]) for t, pos in tiles]
        if any(not a.shares_edge(b) for a, b in zip(rects, rects[1:])):
            return False
    return True


def enumerate_connected_systems(
    seed: DecoratedType, depth: int = 5, limit: int = 100_000
) -> WideSearchResult:
    """All closed decorated systems reachable from ``seed``.

    A system picks one valid chain for every decorated type it reaches.
    Level-1 connectedness holds by construction; ``connected`` keeps the
    systems whose consecutive tiles still share edges up to ``depth``.
    """
    chains = {}
    systems: list[dict] = []

    def options(t):
        if t not in chains:
            chains[t] = valid_chains(t)
        return chains[t]

    def search(assigned: dict, pending: list) -> None:
        if len(systems) >= limit:
            return
        while pending and pending[0] in assigned:
            pending = pending[1:]
        if not pending:
            systems.append(dict(assigned))
            return
        t, rest = pending[0], pending[1:]
        for chain in options(t):
            assigned[t] = chain
            search(assigned, rest + [c for c in chain if c not in assigned])
            del assigned[t]

    search({}, [seed])
    connected = [s for s in systems if _connected_to_depth(s, seed, depth)]
    return WideSearchResult(seed, systems, connected)


def transform_system(system: dict, transpose: bool, reverse: bool) -> dict:
    def tt(t):
        c, s, e = t
        if transpose:
            c, s, e = _TRANSPOSE_COLOR[c], _TRANSPOSE_CORNER[s], _TRANSPOSE_CORNER[e]
        if reverse:
            s, e = e, s
        return (c, s, e)

    out = {}
    for t, chain in system.items():
        new = [tt(c) for c in chain]
        out[tt(t)] = tuple(reversed(new)) if reverse else tuple(new)
    return out


def system_orbits(systems: Iterable[dict]) -> list[list[dict]]:
    """Group systems into orbits under transposition and curve reversal."""

    def key(s: dict):
        return tuple(sorted((_type_str(t), tuple(_type_str(c) for c in ch)) for t, ch in s.items()))

    orbits: dict = {}
    seen = set()
    for s in systems:
        if key(s) in seen:
            continue
        seen.add(key(s))
        images = [transform_system(s, tr, rv) for tr in (False, True) for rv in (False, True)]
        canon = min(key(img) for img in images)
        orbits.setdefault(canon, []).append(s)
    return [orbits[k] for k in sorted(orbits)]


def omega_as_types(system: DecorationSystem | None = None) -> dict:
    """The rule omega rewritten as a map between decorated types."""
    system = system or reference_system()
    rule = rule_omega()

    def tt(lab: Label):
        d = system.decoration(lab)
        return (lab.color, d.start, d.end)

    return {tt(lab): tuple(tt(c.label) for c in rule[lab]) for lab in ALL_LABELS}


def uniqueness_search(depth: int = 5) -> dict[DecoratedType, WideSearchResult]:
    """Wide search from every decorated A tile, as the start of a curve."""
    return {
        t: enumerate_connected_systems(t, depth)
        for t in all_decorated_types()
        if t[0] is Color.A
    }
