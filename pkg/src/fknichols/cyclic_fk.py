"""Cyclic-group Fomin-Kirillov pipelines: the groupoid-existence sweep, the
counterexample families, and the finite-subsystem survey.

The sweep classifies each n by whether the Weyl groupoid of the full cyclic
braiding exists.  Primes short-circuit (Cartan type); composites first try
the cheap three-reflection heuristic words s_j s_i s_p (p the smallest
prime factor), with a full breadth-first exploration as the complete
fallback.  A failing divisor r | n settles n by inheritance unless
verification mode forces direct recomputation.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from fknichols import backend, diagonal
from fknichols._numtheory import divisors, is_prime, smallest_prime_factor, units
from fknichols.diagonal import (
    BOUND_EXCEEDED,
    EXISTS,
    FAILS_AT,
    DiagonalBraiding,
    cyclic_braiding,
    full_cyclic_braiding,
)

DEFAULT_HEURISTIC_CAP = 200
DEFAULT_MAX_OBJECTS = 100_000
# above this rank the complete BFS fallback stops being realistic; the
# heuristic word family is exhausted first and the BFS object cap is scaled
_BFS_SAFE_RANK = 24


@dataclass(frozen=True)
class SweepEntry:
    n: int
    status: str
    witness: tuple[int, ...] | None = None
    failing_vertex: int | None = None
    witness_order: int | None = None
    witness_subset: tuple[int, ...] | None = None
    inherited_from: int | None = None
    heuristic_used: bool = False
    object_count: int | None = None
    elapsed: float = 0.0

    def witness_braiding(self) -> DiagonalBraiding | None:
        if self.witness_order is None:
            return None
        return cyclic_braiding(self.witness_order, self.witness_subset)


@dataclass(frozen=True)
class SweepReport:
    max_n: int
    entries: dict[int, SweepEntry]

    def exists_set(self) -> set[int]:
        return {n for n, e in self.entries.items() if e.status == EXISTS}

    def matches_prime_or_four(self) -> bool:
        expected = {n for n in range(2, self.max_n + 1) if is_prime(n) or n == 4}
        return self.exists_set() == expected


def _heuristic_pairs(r: int):
    """(i, j) pairs in a growing window: both indices increase from (1, 2)."""
    for hi in range(2, r + 1):
        for lo in range(1, hi):
            yield lo, hi
            yield hi, lo


def _heuristic_search(n: int, cap: int):
    """Try the words s_j s_i s_p on the full cyclic braiding.

    Returns (witness, failing_vertex) or None.  The witness is the shortest
    prefix of the word that reaches an object with label 1 at a connected
    vertex.  Shared word prefixes (the initial s_p, and s_i s_p for the
    descending pairs of each window) are reflected once.
    """
    p = smallest_prime_factor(n)
    r = n - 1
    braiding = full_cyclic_braiding(n)
    start = (braiding._diag(), braiding._edge_matrix())

    def step(state, v):
        """(new_state, bad_vertex) after reflecting at v; state None if the
        reflection itself is undefined at the current object."""
        diag, edge = state
        m = backend.cartan_mrow(diag, edge, n, v - 1)
        if backend.UNDEFINED in m:
            return None, diagonal._state_failure_vertex(diag, edge, n)
        new = backend.reflect_diagram(diag, edge, n, v - 1, m)
        return new, diagonal._state_failure_vertex(new[0], new[1], n)

    after_p, bad = step(start, p)
    if after_p is None or bad is not None:
        return ((p,) if after_p is not None else ()), bad
    tried = 0
    hi_prefix: dict[int, tuple | None] = {}
    for i, j in _heuristic_pairs(r):
        if tried >= cap:
            return None
        tried += 1
        if i in hi_prefix:
            after_i = hi_prefix[i]
        else:
            after_i, bad = step(after_p, i)
            if bad is not None:
                return ((p, i) if after_i is not None else (p,)), bad
            if i > j:  # descending pair: this prefix repeats across the window
                hi_prefix = {i: after_i}
        after_j, bad = step(after_i, j)
        if bad is not None:
            return ((p, i, j) if after_j is not None else (p, i)), bad
    return None


def _scan_word_family(n: int):
    """Exhaust all words s_j s_i s_p at once via the single-reflection scan.

    For each prefix state (after s_p, then after s_i s_p for every i) the
    kernel checks all candidate last reflections together, so covering the
    whole word family costs one reflection per i instead of one per word.
    Returns (witness, failing_vertex) or None; ties go to the shortest
    witness and then the lowest reflection index.
    """
    p = smallest_prime_factor(n)
    r = n - 1
    braiding = full_cyclic_braiding(n)
    diag, edge = braiding._diag(), braiding._edge_matrix()

    m = backend.cartan_mrow(diag, edge, n, p - 1)
    diag1, edge1 = backend.reflect_diagram(diag, edge, n, p - 1, m)
    bad = diagonal._state_failure_vertex(diag1, edge1, n)
    if bad is not None:
        return (p,), bad
    hit = backend.scan_bad_reflection(diag1, edge1, n)
    if hit is not None:
        j, v = hit
        return (p, j + 1), v + 1
    for i in range(1, r + 1):
        m = backend.cartan_mrow(diag1, edge1, n, i - 1)
        diag2, edge2 = backend.reflect_diagram(diag1, edge1, n, i - 1, m)
        hit = backend.scan_bad_reflection(diag2, edge2, n)
        if hit is not None:
            j, v = hit
            return (p, i, j + 1), v + 1
    return None


def check_single(
    n: int,
    heuristic_first: bool = True,
    heuristic_cap: int = DEFAULT_HEURISTIC_CAP,
    max_objects: int = DEFAULT_MAX_OBJECTS,
) -> SweepEntry:
    """Direct groupoid-existence check for one n (no divisor inheritance)."""
    start = time.perf_counter()
    if is_prime(n):
        braiding = full_cyclic_braiding(n)
        if diagonal.is_cartan_type(braiding):
            return SweepEntry(
                n, EXISTS, heuristic_used=False, elapsed=time.perf_counter() - start
            )
        # unreachable for cyclic braidings of prime order; fall through

    if n > 4 and heuristic_first:
        hit = _heuristic_search(n, heuristic_cap)
        if hit is None and n - 1 > _BFS_SAFE_RANK:
            # a full BFS at this rank is hopeless; exhaust the whole
            # three-reflection word family first (still deterministic)
            hit = _scan_word_family(n)
        if hit is not None:
            word, vertex = hit
            return SweepEntry(
                n,
                FAILS_AT,
                witness=tuple(word),
                failing_vertex=vertex,
                witness_order=n,
                witness_subset=tuple(range(1, n)),
                heuristic_used=True,
                elapsed=time.perf_counter() - start,
            )

    rank = n - 1
    if rank > _BFS_SAFE_RANK:
        # keep the fallback exploration memory-bounded: each object stores
        # O(rank^2) exponents, so scale the object cap down with the rank
        max_objects = min(max_objects, max(500, 4_000_000 // (rank * rank)))
    result = diagonal.explore_groupoid(full_cyclic_braiding(n), max_objects)
    return SweepEntry(
        n,
        result.status,
        witness=result.witness,
        failing_vertex=result.failing_vertex,
        witness_order=n if result.status == FAILS_AT else None,
        witness_subset=tuple(range(1, n)) if result.status == FAILS_AT else None,
        heuristic_used=False,
        object_count=len(result.objects) if result.status == EXISTS else None,
        elapsed=time.perf_counter() - start,
    )


def _check_single_args(args) -> SweepEntry:
    return check_single(*args)


def _load_checkpoint(path) -> dict[int, SweepEntry]:
    entries: dict[int, SweepEntry] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                d = json.loads(line)
                entries[d["n"]] = _entry_from_json(d)
    except FileNotFoundError:
        pass
    return entries


def _append_checkpoint(path, entry: SweepEntry) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(entry_to_json(entry), sort_keys=True) + "\n")


def sweep_groupoid_existence(
    max_n: int,
    heuristic_first: bool = True,
    jobs: int = 1,
    verify: bool = False,
    checkpoint=None,
    heuristic_cap: int = DEFAULT_HEURISTIC_CAP,
    max_objects: int = DEFAULT_MAX_OBJECTS,
) -> SweepReport:
    """Groupoid existence for every 2 <= n <= max_n.

    verify=True disables divisor inheritance (every composite is checked
    directly).  The result is independent of the worker count.
    """
    if max_n < 2:
        raise diagonal.DomainError("max_n must be at least 2")
    entries: dict[int, SweepEntry] = {}
    done: dict[int, SweepEntry] = _load_checkpoint(checkpoint) if checkpoint else {}

    def record(entry: SweepEntry, fresh: bool) -> None:
        entries[entry.n] = entry
        if checkpoint and fresh:
            _append_checkpoint(checkpoint, entry)

    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    pending: list = []  # (n, future) in ascending n order

    def flush(upto: int | None = None) -> None:
        while pending and (upto is None or pending[0][0] <= upto):
            n0, fut = pending.pop(0)
            record(fut.result(), fresh=True)

    try:
        for n in range(2, max_n + 1):
            if n in done:
                record(done[n], fresh=False)
                continue
            if is_prime(n):
                # cheap Cartan-type short-circuit; never pooled
                record(check_single(n), fresh=True)
                continue
            if not verify:
                dividing = [d for d in divisors(n) if 2 <= d < n]
                # divisor statuses must be settled before deciding
                unmet = [d for d in dividing if d not in entries]
                if unmet:
                    flush(max(unmet))
                failed = [
                    d
                    for d in dividing
                    if d in entries and entries[d].status == FAILS_AT
                ]
                if failed:
                    r = min(failed)
                    base = entries[r]
                    record(
                        SweepEntry(
                            n,
                            FAILS_AT,
                            witness=base.witness,
                            failing_vertex=base.failing_vertex,
                            witness_order=base.witness_order,
                            witness_subset=base.witness_subset,
                            inherited_from=r,
                            heuristic_used=False,
                            elapsed=0.0,
                        ),
                        fresh=True,
                    )
                    continue
            args = (n, heuristic_first, heuristic_cap, max_objects)
            if pool is None:
                record(check_single(*args), fresh=True)
            else:
                pending.append((n, pool.submit(_check_single_args, args)))
        flush()
    finally:
        if pool is not None:
            pool.shutdown()
    return SweepReport(max_n, entries)


def counterexample_family(n: int) -> list[tuple[int, int]]:
    """All (p, r) with p prime, r >= 2, p*r | n and p | 2r - 1."""
    if n < 2:
        raise diagonal.DomainError("n must be at least 2")
    out = []
    for r in divisors(n):
        if r < 2 or n % r:
            continue
        quotient = n // r
        for p in sorted(set(_prime_divisors(quotient))):
            if (2 * r - 1) % p == 0:
                out.append((p, r))
    return sorted(out)


def _prime_divisors(k: int) -> list[int]:
    from fknichols._numtheory import prime_factors

    return prime_factors(k)


# ---------------------------------------------------------------------------
# Finite subsystems


#: Reference dimensions for the first-appearance finite subsystem classes,
#: keyed by (first n, lexicographically smallest member).  Each value is
#: (factorization string or None, tabulated value).  Records whose computed
#: dimension disagrees with the tabulated value, or whose tabulated
#: factorization is inconsistent with it, carry an annotation.
REFERENCE_DIMENSIONS: dict[tuple[int, tuple[int, ...]], tuple[str | None, int]] = {
    (4, (1, 2)): ("2^2*4", 16),
    (4, (1, 2, 3)): (None, 256),
    (5, (1, 2)): ("5^4", 625),
    (6, (1, 3)): ("2^2*3*6", 72),
    (6, (1, 4)): ("2*3^2*6", 108),
    (6, (2, 3)): ("2^2*3^3", 36),
    (7, (1, 3)): ("7^6", 117649),
    (8, (1, 4)): ("2*4^2*8", 256),
    (10, (1, 5)): ("2^4*5^2*10^2", 40000),
}


def _eval_factorization(s: str) -> int:
    total = 1
    for part in s.split("*"):
        if "^" in part:
            b, e = part.split("^")
            total *= int(b) ** int(e)
        else:
            total *= int(part)
    return total


@dataclass(frozen=True)
class SubsystemRecord:
    """One equivalence class of connected sub-braidings of B_{C_n}."""

    n: int
    representative: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    diagram: diagonal.GeneralizedDynkinDiagram
    cartan_type: bool
    finite: bool
    positive_root_count: int | None
    dimension: int | None
    first_appears: int
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def rank(self) -> int:
        return len(self.representative)


def _classify_subset(n, subset, max_roots, max_objects):
    """(finite, roots or None, objects or None) for a connected subset."""
    braiding = cyclic_braiding(n, subset)
    exploration = diagonal.explore_groupoid(braiding, max_objects)
    if exploration.status != EXISTS:
        return False, None, tuple(exploration.objects)
    roots = diagonal.enumerate_positive_roots(braiding, max_roots, max_objects)
    if roots is BOUND_EXCEEDED:
        return False, None, tuple(exploration.objects)
    return True, roots, tuple(exploration.objects)


def enumerate_finite_subsystems(
    n: int,
    max_rank: int,
    max_roots: int = 400,
    max_objects: int = 50_000,
    include_infinite: bool = False,
) -> list[SubsystemRecord]:
    """Connected sub-braidings of B_{C_n} with finite root systems, grouped
    into equivalence classes.

    Two subsets are equivalent when related by relabelling the primitive
    root (I -> k*I for a unit k mod n, covering the mirror k = -1) or by a
    Weyl-groupoid reflection (one subset's diagram appears among the
    groupoid objects of the other).  Rank-1 subsets are omitted: every
    vertex trivially gives one.
    """
    if n < 2:
        raise diagonal.DomainError("n must be at least 2")
    if max_rank < 1:
        raise diagonal.DomainError("max_rank must be at least 1")

    from itertools import combinations

    unit_list = units(n)

    def connected(subset) -> bool:
        return diagonal.dynkin_diagram(cyclic_braiding(n, subset)).is_connected

    candidates: list[tuple[int, ...]] = []
    for size in range(2, max_rank + 1):
        for subset in combinations(range(1, n), size):
            if connected(subset):
                candidates.append(subset)

    # classify; rank >= 3 subsets are skipped cheaply when some rank-2
    # sub-pair is already infinite (a sub-braiding of a finite system is
    # finite, so such subsets cannot be finite)
    info: dict[tuple[int, ...], tuple[bool, object, tuple | None]] = {}

    def pair_finite(a: int, b: int) -> bool:
        key = (min(a, b), max(a, b))
        if (a + b) % n == 0:
            return True  # no edge: two A1 components, always finite
        return info[key][0]

    for subset in candidates:
        if len(subset) > 2 and not all(
            pair_finite(a, b) for a, b in combinations(subset, 2)
        ):
            info[subset] = (False, None, None)
        else:
            info[subset] = _classify_subset(n, subset, max_roots, max_objects)

    # equivalence classes: Galois relabelling + Weyl reflection linkage
    parent: dict[tuple[int, ...], tuple[int, ...]] = {s: s for s in info}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    by_object: dict[tuple, tuple[int, ...]] = {}
    for subset in info:
        canon = diagonal.canonical_object(cyclic_braiding(n, subset))
        by_object.setdefault((canon.vertices, canon.edges), subset)
    for subset, (_, _, objects) in info.items():
        for k in unit_list:
            image = tuple(sorted(k * a % n for a in subset))
            if image in parent:
                union(subset, image)
        if objects:
            for obj in objects:
                other = by_object.get((obj.vertices, obj.edges))
                if other is not None:
                    union(subset, other)

    classes: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for subset in info:
        classes.setdefault(find(subset), []).append(subset)

    records = []
    for rep in sorted(classes):
        members = tuple(sorted(classes[rep]))
        finite, roots, _ = info[rep]
        if not finite and not include_infinite:
            continue
        braiding = cyclic_braiding(n, rep)
        dimension = None
        root_count = None
        if finite:
            root_count = len(roots)
            dimension = 1
            for alpha in roots:
                dimension *= diagonal.root_label(braiding, alpha).multiplicative_order()
        g = gcd(n, *rep)
        first_appears = n // g
        notes: list[str] = []
        ref_key = (first_appears, tuple(a // g for a in rep))
        if finite and ref_key in REFERENCE_DIMENSIONS:
            factorization, ref_value = REFERENCE_DIMENSIONS[ref_key]
            if factorization is not None:
                implied = _eval_factorization(factorization)
                if implied != ref_value:
                    notes.append(
                        f"reference factorization {factorization} evaluates to "
                        f"{implied}, inconsistent with the tabulated value {ref_value}"
                    )
            if dimension != ref_value:
                notes.append(
                    f"computed dimension {dimension} differs from the tabulated "
                    f"value {ref_value}"
                )
        records.append(
            SubsystemRecord(
                n=n,
                representative=rep,
                members=members,
                diagram=diagonal.dynkin_diagram(braiding),
                cartan_type=diagonal.is_cartan_type(braiding),
                finite=finite,
                positive_root_count=root_count,
                dimension=dimension,
                first_appears=first_appears,
                notes=tuple(notes),
            )
        )
    return records


# ---------------------------------------------------------------------------
# JSON serialization


def entry_to_json(entry: SweepEntry) -> dict:
    # elapsed is deliberately not serialized: emitted reports are identical
    # across runs and across worker counts
    return {
        "n": entry.n,
        "status": entry.status,
        "witness": list(entry.witness) if entry.witness is not None else None,
        "failingVertex": entry.failing_vertex,
        "witnessOrder": entry.witness_order,
        "witnessSubset": list(entry.witness_subset)
        if entry.witness_subset is not None
        else None,
        "inheritedFrom": entry.inherited_from,
        "heuristicUsed": entry.heuristic_used,
        "objects": entry.object_count,
    }


def _entry_from_json(d: dict) -> SweepEntry:
    return SweepEntry(
        n=d["n"],
        status=d["status"],
        witness=tuple(d["witness"]) if d.get("witness") is not None else None,
        failing_vertex=d.get("failingVertex"),
        witness_order=d.get("witnessOrder"),
        witness_subset=tuple(d["witnessSubset"])
        if d.get("witnessSubset") is not None
        else None,
        inherited_from=d.get("inheritedFrom"),
        heuristic_used=d.get("heuristicUsed", False),
        object_count=d.get("objects"),
        elapsed=d.get("elapsed", 0.0),
    )


def report_to_json(report: SweepReport) -> dict:
    return {
        "maxN": report.max_n,
        "entries": [entry_to_json(report.entries[n]) for n in sorted(report.entries)],
        "conjectureHolds": report.matches_prime_or_four(),
    }


def record_to_json(record: SubsystemRecord) -> dict:
    return {
        "n": record.n,
        "representative": list(record.representative),
        "members": [list(m) for m in record.members],
        "diagram": diagonal.diagram_to_json(record.diagram),
        "cartanType": record.cartan_type,
        "finite": record.finite,
        "positiveRoots": record.positive_root_count,
        "dimension": record.dimension,
        "firstAppears": record.first_appears,
        "notes": list(record.notes),
    }
