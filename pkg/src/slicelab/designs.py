"""Combinatorial layer: slicing triples, conjugate rectangular views,
hard-slicing checks and the hard/soft block partition.

An end-to-end slice couples a core component ``c``, an access component
``a`` and a service ``s``.  A configuration is a finite set of such
triples.  It can be displayed as three conjugate rectangular arrays
(rows/columns/entries chosen among the three coordinates); dedicated
("hard") slicing of the core or access side is exactly the condition that
the matching conjugate is a partial Latin rectangle, which is what
:func:`check_hard_core` / :func:`check_hard_access` decide pair by pair.

Component indices are 1-based.  Hard components occupy the index prefixes
``[1, n_1]`` (core) and ``[1, n_2]`` (access); soft components fill the
remaining suffix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Mapping

from .errors import TriplesParseError, TripleRangeError

#: The three conjugate orderings: (row axis, column axis, entry axis).
ORDER_SAC = "SAC"
ORDER_SCA = "SCA"
ORDER_CAS = "CAS"
ORDERINGS = (ORDER_SAC, ORDER_SCA, ORDER_CAS)


@dataclass(frozen=True)
class SymbolUniverse:
    """Index ranges for services, access and core components.

    ``n_1``/``n_2`` split the core/access ranges into a hard prefix and a
    soft suffix.  ``n_s`` may be 0 when services are open-ended (the
    simulator numbers them dynamically).
    """

    n_s: int
    n_a: int
    n_c: int
    n_1: int
    n_2: int

    def __post_init__(self):
        if self.n_s < 0 or self.n_a < 1 or self.n_c < 1:
            raise ValueError(f"universe sizes out of range: {self}")
        if not (0 < self.n_1 <= self.n_c):
            raise ValueError(f"need 0 < n_1 <= n_c, got n_1={self.n_1}, n_c={self.n_c}")
        if not (0 < self.n_2 <= self.n_a):
            raise ValueError(f"need 0 < n_2 <= n_a, got n_2={self.n_2}, n_a={self.n_a}")

    def axis_size(self, axis: str) -> int:
        return {"S": self.n_s, "A": self.n_a, "C": self.n_c}[axis]


@dataclass(frozen=True, order=True)
class SliceTriple:
    """One (core, access, service) assignment, all indices 1-based."""

    core: int
    access: int
    service: int

    def axis_value(self, axis: str) -> int:
        return {"S": self.service, "A": self.access, "C": self.core}[axis]

    def __str__(self):
        return f"(c{self.core},a{self.access},s{self.service})"


@dataclass(frozen=True)
class TripleSet:
    """A duplicate-free set of slice triples over a fixed universe."""

    universe: SymbolUniverse
    triples: frozenset[SliceTriple]

    def __post_init__(self):
        u = self.universe
        for tr in self.triples:
            if not (1 <= tr.core <= u.n_c and 1 <= tr.access <= u.n_a
                    and 1 <= tr.service <= u.n_s):
                raise ValueError(f"triple {tr} outside universe {u}")

    def __len__(self):
        return len(self.triples)

    def sorted_triples(self) -> list[SliceTriple]:
        return sorted(self.triples)


@dataclass(frozen=True)
class RectView:
    """A conjugate rectangular array with possibly multivalued cells.

    ``cells`` maps (row, col) to the sorted tuple of entry symbols; absent
    keys are blank cells.  A cell may hold several symbols (shared/soft
    configurations), which :func:`is_partial_latin` rejects.
    """

    ordering: str
    rows: range
    cols: range
    cells: Mapping[tuple[int, int], tuple[int, ...]]

    def entry_count(self) -> int:
        return sum(len(v) for v in self.cells.values())

    def iter_entries(self) -> Iterator[tuple[int, int, int]]:
        for (r, c), syms in self.cells.items():
            for s in syms:
                yield r, c, s


@dataclass(frozen=True)
class Partition:
    """The (C,A,S) view split into four blocks at the hard/soft boundary.

    Block r11 is hard-core x hard-access, r12 hard-core x soft-access,
    r21 soft-core x hard-access, r22 soft x soft.
    """

    r11: RectView
    r12: RectView
    r21: RectView
    r22: RectView
    n_1: int
    n_2: int

    def blocks(self) -> tuple[tuple[str, RectView], ...]:
        return (("r11", self.r11), ("r12", self.r12),
                ("r21", self.r21), ("r22", self.r22))


@dataclass(frozen=True)
class Violation:
    """One offending pair (or row/column) with the clause it violates."""

    clause: str
    first: SliceTriple | None = None
    second: SliceTriple | None = None
    where: str = ""

    def __str__(self):
        if self.first is not None:
            return f"{self.first} / {self.second}: {self.clause}"
        return f"{self.where}: {self.clause}"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: holds iff no violations were collected."""

    holds: bool
    violations: tuple[Violation, ...] = field(default=())

    @classmethod
    def from_violations(cls, violations) -> "Verdict":
        vs = tuple(violations)
        return cls(holds=not vs, violations=vs)


def parse_triples(text: str, universe: SymbolUniverse) -> TripleSet:
    """Parse a triples document: one ``core,access,service`` line per triple.

    Lines starting with ``#`` and blank lines are skipped; duplicates are
    collapsed.  Raises :class:`TriplesParseError` for malformed lines and
    :class:`TripleRangeError` for out-of-universe indices, both carrying
    the 1-based line number.
    """
    triples = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise TriplesParseError(line_no, f"expected three comma-separated integers, got {raw!r}")
        try:
            core, access, service = (int(p) for p in parts)
        except ValueError:
            raise TriplesParseError(line_no, f"expected three comma-separated integers, got {raw!r}") from None
        if core < 1 or access < 1 or service < 1:
            raise TripleRangeError(line_no, f"indices must be positive, got {raw!r}")
        if core > universe.n_c:
            raise TripleRangeError(line_no, f"core index {core} exceeds n_c={universe.n_c}")
        if access > universe.n_a:
            raise TripleRangeError(line_no, f"access index {access} exceeds n_a={universe.n_a}")
        if service > universe.n_s:
            raise TripleRangeError(line_no, f"service index {service} exceeds n_s={universe.n_s}")
        triples.add(SliceTriple(core=core, access=access, service=service))
    return TripleSet(universe=universe, triples=frozenset(triples))


def check_hard_core(t: TripleSet) -> Verdict:
    """Decide dedicated (hard) slicing on the core side.

    Every pair of distinct triples must satisfy: equal service implies
    distinct access and distinct core; equal access implies distinct
    service and distinct core.
    """
    violations = []
    for x, y in combinations(t.sorted_triples(), 2):
        if x.service == y.service and (x.access == y.access or x.core == y.core):
            violations.append(Violation("same-service", x, y))
        if x.access == y.access and (x.service == y.service or x.core == y.core):
            violations.append(Violation("same-access", x, y))
    return Verdict.from_violations(violations)


def check_hard_access(t: TripleSet) -> Verdict:
    """Decide dedicated (hard) slicing on the access side.

    Every pair of distinct triples must satisfy: equal service implies
    distinct access and distinct core; equal core implies distinct service
    and distinct access.
    """
    violations = []
    for x, y in combinations(t.sorted_triples(), 2):
        if x.service == y.service and (x.access == y.access or x.core == y.core):
            violations.append(Violation("same-service", x, y))
        if x.core == y.core and (x.service == y.service or x.access == y.access):
            violations.append(Violation("same-core", x, y))
    return Verdict.from_violations(violations)


def conjugate_view(t: TripleSet, ordering: str = ORDER_SAC) -> RectView:
    """Lay the triple set out as the requested conjugate rectangle.

    ``ordering`` picks which coordinate indexes rows, columns and entries,
    e.g. ``"CAS"`` puts cores on rows, access components on columns and
    services in the cells.
    """
    if ordering not in ORDERINGS:
        raise ValueError(f"unsupported ordering {ordering!r}; pick one of {ORDERINGS}")
    row_ax, col_ax, ent_ax = ordering
    u = t.universe
    cells: dict[tuple[int, int], list[int]] = {}
    for tr in t.triples:
        key = (tr.axis_value(row_ax), tr.axis_value(col_ax))
        cells.setdefault(key, []).append(tr.axis_value(ent_ax))
    packed = {k: tuple(sorted(v)) for k, v in cells.items()}
    return RectView(
        ordering=ordering,
        rows=range(1, u.axis_size(row_ax) + 1),
        cols=range(1, u.axis_size(col_ax) + 1),
        cells=packed,
    )


def flatten_view(view: RectView, universe: SymbolUniverse) -> TripleSet:
    """Invert :func:`conjugate_view`: rebuild the triple set from a view."""
    row_ax, col_ax, ent_ax = view.ordering
    triples = set()
    for r, c, s in view.iter_entries():
        coords = {row_ax: r, col_ax: c, ent_ax: s}
        triples.add(SliceTriple(core=coords["C"], access=coords["A"], service=coords["S"]))
    return TripleSet(universe=universe, triples=frozenset(triples))


def is_partial_latin(view: RectView) -> bool:
    """True iff every cell holds at most one symbol and no symbol repeats
    within a row or within a column."""
    row_seen: set[tuple[int, int]] = set()
    col_seen: set[tuple[int, int]] = set()
    for (r, c), syms in view.cells.items():
        if len(syms) > 1:
            return False
        s = syms[0]
        if (r, s) in row_seen or (c, s) in col_seen:
            return False
        row_seen.add((r, s))
        col_seen.add((c, s))
    return True


def partition_cas(t: TripleSet) -> Partition:
    """Split the (C,A,S) view at the hard/soft boundaries (n_1, n_2)."""
    u = t.universe
    view = conjugate_view(t, ORDER_CAS)
    n_1, n_2 = u.n_1, u.n_2
    quads: dict[str, dict[tuple[int, int], tuple[int, ...]]] = {
        "r11": {}, "r12": {}, "r21": {}, "r22": {},
    }
    for (r, c), syms in view.cells.items():
        name = ("r1" if r <= n_1 else "r2") + ("1" if c <= n_2 else "2")
        quads[name][(r, c)] = syms
    rows_hard = range(1, n_1 + 1)
    rows_soft = range(n_1 + 1, u.n_c + 1)
    cols_hard = range(1, n_2 + 1)
    cols_soft = range(n_2 + 1, u.n_a + 1)
    mk = lambda rows, cols, cells: RectView(ORDER_CAS, rows, cols, cells)
    return Partition(
        r11=mk(rows_hard, cols_hard, quads["r11"]),
        r12=mk(rows_hard, cols_soft, quads["r12"]),
        r21=mk(rows_soft, cols_hard, quads["r21"]),
        r22=mk(rows_soft, cols_soft, quads["r22"]),
        n_1=n_1,
        n_2=n_2,
    )


def _axis_overfull(view: RectView, axis: int) -> list[int]:
    """Indices along ``axis`` (0=row, 1=col) holding more than one
    non-empty cell."""
    counts: dict[int, int] = {}
    for key in view.cells:
        counts[key[axis]] = counts.get(key[axis], 0) + 1
    return sorted(i for i, n in counts.items() if n > 1)


def verify_partition_claims(p: Partition) -> Verdict:
    """Check the per-block sparsity claims of the hard/soft partition.

    r11 allows at most one non-empty cell per row and per column; r12 at
    most one per row (columns free); r21 at most one per column (rows
    free); r22 is unconstrained.
    """
    violations = []
    for r in _axis_overfull(p.r11, 0):
        violations.append(Violation("claim-1-row", where=f"r11 row {r}"))
    for c in _axis_overfull(p.r11, 1):
        violations.append(Violation("claim-1-col", where=f"r11 col {c}"))
    for r in _axis_overfull(p.r12, 0):
        violations.append(Violation("claim-2-row", where=f"r12 row {r}"))
    for c in _axis_overfull(p.r21, 1):
        violations.append(Violation("claim-3-col", where=f"r21 col {c}"))
    return Verdict.from_violations(violations)
