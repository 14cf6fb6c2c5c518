"""Diagonal braidings: generalized Dynkin diagrams, Cartan entries,
Weyl-groupoid reflections and exploration, root enumeration, and PBW data.

Vertices are numbered 1..rank in the public API, matching the reflection
words s_1, s_2, ... used throughout.  A braiding stores the exponent matrix
b with q_ij = zeta_N^(b_ij); everything the groupoid needs reduces to
integer arithmetic mod N.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

from fknichols import backend
from fknichols.cyclotomic import RootOfUnity

EXISTS = "exists"
FAILS_AT = "failsAt"
BOUND_EXCEEDED_STATUS = "boundExceeded"


class DomainError(ValueError):
    """Invalid construction data (e.g. subset element outside 1..n-1)."""


class RootSystemUndefinedError(ValueError):
    """Root enumeration hit an undefined reflection."""


class UndefinedDimensionError(ValueError):
    """A finite root system carries a root labelled 1."""


class _Sentinel:
    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name


#: Returned by enumerate_positive_roots when closure does not terminate.
BOUND_EXCEEDED = _Sentinel("BoundExceeded")
#: Returned by pbw_dimension for braidings with unbounded root growth.
INFINITE = _Sentinel("Infinite")


@dataclass(frozen=True)
class DiagonalBraiding:
    """q_ij = zeta_order^exponents[i][j] on a rank-r diagonal basis."""

    order: int
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("order must be positive")
        n = self.order
        rows = tuple(tuple(x % n for x in row) for row in self.exponents)
        if any(len(row) != len(rows) for row in rows):
            raise DomainError("exponent matrix must be square")
        object.__setattr__(self, "exponents", rows)

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def q(self, i: int, j: int) -> RootOfUnity:
        """Braiding scalar q_ij (1-based vertices)."""
        return RootOfUnity(self.order, self.exponents[i - 1][j - 1])

    def bilinear(self, alpha, beta) -> int:
        """Exponent of the bilinear extension B(alpha, beta) mod order."""
        b = self.exponents
        total = 0
        for j, aj in enumerate(alpha):
            if aj:
                row = b[j]
                for k, bk in enumerate(beta):
                    if bk:
                        total += aj * bk * row[k]
        return total % self.order

    def _diag(self) -> list[int]:
        return [self.exponents[i][i] for i in range(self.rank)]

    def _edge_matrix(self) -> list[list[int]]:
        n = self.order
        r = self.rank
        b = self.exponents
        return [
            [(b[i][j] + b[j][i]) % n if i != j else 0 for j in range(r)]
            for i in range(r)
        ]


def cyclic_braiding(n: int, subset) -> DiagonalBraiding:
    """The braiding q_jk = zeta_n^(I[j]) on the ordered subset I of 1..n-1."""
    if n < 2:
        raise DomainError("n must be at least 2")
    labels = list(subset)
    if not labels:
        raise DomainError("subset must be nonempty")
    for a in labels:
        if not 1 <= a <= n - 1:
            raise DomainError(f"subset element {a} outside 1..{n - 1}")
    if len(set(labels)) != len(labels):
        raise DomainError("subset elements must be distinct")
    rows = tuple(tuple(a for _ in labels) for a in labels)
    return DiagonalBraiding(n, rows)


def full_cyclic_braiding(n: int) -> DiagonalBraiding:
    return cyclic_braiding(n, range(1, n))


@dataclass(frozen=True)
class GeneralizedDynkinDiagram:
    """Vertex labels q_ii and edge labels q_ij q_ji (edges only when != 1)."""

    order: int
    vertex_exponents: tuple[int, ...]
    edge_exponents: tuple[tuple[int, int, int], ...]  # (i, j, exponent), i < j

    def vertex_labels(self) -> list[RootOfUnity]:
        return [RootOfUnity(self.order, e) for e in self.vertex_exponents]

    def edge_labels(self) -> dict[tuple[int, int], RootOfUnity]:
        return {
            (i, j): RootOfUnity(self.order, e) for i, j, e in self.edge_exponents
        }

    @property
    def rank(self) -> int:
        return len(self.vertex_exponents)

    def neighbors(self, i: int) -> list[int]:
        out = []
        for a, b, _ in self.edge_exponents:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def connected_components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps = []
        for start in range(1, self.rank + 1):
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for w in self.neighbors(v):
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    @property
    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1


def dynkin_diagram(braiding: DiagonalBraiding) -> GeneralizedDynkinDiagram:
    n = braiding.order
    r = braiding.rank
    b = braiding.exponents
    vertices = tuple(b[i][i] for i in range(r))
    edges = []
    for i in range(r):
        for j in range(i + 1, r):
            e = (b[i][j] + b[j][i]) % n
            if e:
                edges.append((i + 1, j + 1, e))
    return GeneralizedDynkinDiagram(n, vertices, tuple(edges))


@dataclass(frozen=True)
class GroupoidObject:
    """Twist-equivalence canonical form: vertex and symmetrized edge exponents."""

    order: int
    vertices: tuple[int, ...]
    edges: tuple[int, ...]  # upper triangle, row-major

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def edge(self, i: int, j: int) -> int:
        """Symmetrized exponent for the unordered pair {i, j} (1-based)."""
        if i == j:
            return 0
        a, b = sorted((i - 1, j - 1))
        r = self.rank
        pos = a * (2 * r - a - 1) // 2 + (b - a - 1)
        return self.edges[pos]

    def diagram(self) -> GeneralizedDynkinDiagram:
        edges = []
        for i in range(1, self.rank + 1):
            for j in range(i + 1, self.rank + 1):
                e = self.edge(i, j)
                if e:
                    edges.append((i, j, e))
        return GeneralizedDynkinDiagram(self.order, self.vertices, tuple(edges))

    def mirrored(self) -> "GroupoidObject":
        """The object with zeta replaced by its inverse."""
        n = self.order
        return GroupoidObject(
            n,
            tuple(-v % n for v in self.vertices),
            tuple(-e % n for e in self.edges),
        )


def _pack_state(diag: list[int], edge: list[list[int]]) -> tuple:
    r = len(diag)
    flat = []
    for i in range(r):
        for j in range(i + 1, r):
            flat.append(edge[i][j])
    return tuple(diag), tuple(flat)


def canonical_object(braiding: DiagonalBraiding) -> GroupoidObject:
    diag, flat = _pack_state(braiding._diag(), braiding._edge_matrix())
    return GroupoidObject(braiding.order, diag, flat)


@dataclass(frozen=True)
class CartanData:
    """Integer Cartan entries with a per-entry definedness mask."""

    entries: tuple[tuple[int, ...], ...]
    defined: tuple[tuple[bool, ...], ...]

    @property
    def all_defined(self) -> bool:
        return all(all(row) for row in self.defined)


def _mrow(braiding: DiagonalBraiding, i: int) -> list[int]:
    return backend.cartan_mrow(
        braiding._diag(), braiding._edge_matrix(), braiding.order, i - 1
    )


def cartan_entry(braiding: DiagonalBraiding, i: int, j: int):
    """a_ij, or None when undefined (q_ii = 1 with q_ij q_ji != 1)."""
    if i == j:
        return 2
    m = _mrow(braiding, i)[j - 1]
    return None if m == backend.UNDEFINED else -m


def cartan_matrix(braiding: DiagonalBraiding) -> CartanData:
    r = braiding.rank
    entries = []
    defined = []
    for i in range(1, r + 1):
        m = _mrow(braiding, i)
        row = []
        drow = []
        for j in range(1, r + 1):
            if i == j:
                row.append(2)
                drow.append(True)
            elif m[j - 1] == backend.UNDEFINED:
                row.append(0)
                drow.append(False)
            else:
                row.append(-m[j - 1])
                drow.append(True)
        entries.append(tuple(row))
        defined.append(tuple(drow))
    return CartanData(tuple(entries), tuple(defined))


def is_cartan_type(braiding: DiagonalBraiding) -> bool:
    """Cartan type: q_ii != 1 everywhere, and for each off-diagonal entry
    q_ii^(-a_ij) q_ij q_ji = 1 with 0 <= -a_ij < ord(q_ii)."""
    n = braiding.order
    diag = braiding._diag()
    edge = braiding._edge_matrix()
    r = braiding.rank
    for i in range(r):
        d = diag[i]
        if d % n == 0:
            return False
        ord_i = n // gcd(n, d)
        m = backend.cartan_mrow(diag, edge, n, i)
        for j in range(r):
            if j == i:
                continue
            if m[j] == backend.UNDEFINED:
                return False
            if not 0 <= m[j] < ord_i:
                return False
            if (m[j] * d + edge[i][j]) % n:
                return False
    return True


@dataclass(frozen=True)
class ReflectionFailure:
    """Reflection at ``vertex`` undefined: q at vertex is 1 while the edge to
    ``blocking`` carries the recorded label."""

    vertex: int
    blocking: int
    edge_label: RootOfUnity


def reflect(braiding: DiagonalBraiding, i: int):
    """Weyl-groupoid reflection at vertex i (1-based).

    Returns the reflected DiagonalBraiding, or a ReflectionFailure naming
    the undefined Cartan entry (the groupoid-nonexistence signal).
    """
    m = _mrow(braiding, i)
    if backend.UNDEFINED in m:
        j = m.index(backend.UNDEFINED)
        return ReflectionFailure(
            vertex=i,
            blocking=j + 1,
            edge_label=RootOfUnity(braiding.order, braiding._edge_matrix()[i - 1][j]),
        )
    new = backend.reflect_exponent_matrix(
        [list(r) for r in braiding.exponents], braiding.order, i - 1, m
    )
    return DiagonalBraiding(braiding.order, tuple(tuple(r) for r in new))


def replay_witness(braiding: DiagonalBraiding, word) -> DiagonalBraiding:
    """Apply the reflections of a witness word in order; returns the final
    braiding (raising if some intermediate reflection is undefined)."""
    current = braiding
    for v in word:
        nxt = reflect(current, v)
        if isinstance(nxt, ReflectionFailure):
            raise RootSystemUndefinedError(
                f"reflection s_{v} undefined while replaying witness"
            )
        current = nxt
    return current


def _state_failure_vertex(diag, edge, n) -> int | None:
    """Lowest vertex with label 1 and an incident edge, or None."""
    r = len(diag)
    for i in range(r):
        if diag[i] % n == 0 and any(edge[i][j] % n for j in range(r) if j != i):
            return i + 1
    return None


@dataclass(frozen=True)
class ExplorationResult:
    """Outcome of a groupoid BFS over canonical diagram forms."""

    status: str
    objects: tuple[GroupoidObject, ...]
    morphism_count: int
    witness: tuple[int, ...] | None = None
    failing_vertex: int | None = None


def explore_groupoid(
    braiding: DiagonalBraiding, max_objects: int = 100_000
) -> ExplorationResult:
    """BFS over canonical generalized Dynkin diagrams under reflection.

    Status EXISTS when the closure is finite with every reflection defined;
    FAILS_AT with a minimal-length witness word (BFS order, lowest vertex
    first) reaching an object carrying label 1 at a non-isolated vertex;
    BOUND_EXCEEDED_STATUS when more than max_objects distinct objects show
    up.  An isolated vertex labelled 1 is benign: the reflection there is
    the identity.
    """
    if max_objects < 1:
        raise DomainError("max_objects must be at least 1")
    n = braiding.order
    r = braiding.rank
    start_diag = braiding._diag()
    start_edge = braiding._edge_matrix()
    start = _pack_state(start_diag, start_edge)

    def unpack(state):
        diag = list(state[0])
        edge = [[0] * r for _ in range(r)]
        pos = 0
        for i in range(r):
            for j in range(i + 1, r):
                edge[i][j] = edge[j][i] = state[1][pos]
                pos += 1
        return diag, edge

    parents: dict[tuple, tuple[tuple, int] | None] = {start: None}
    order_seen: list[tuple] = [start]
    queue = deque([start])

    def word_to(state) -> tuple[int, ...]:
        word = []
        while parents[state] is not None:
            state, v = parents[state]
            word.append(v)
        return tuple(reversed(word))

    def make_result(status, witness=None, failing=None):
        objects = tuple(
            GroupoidObject(n, st[0], st[1]) for st in order_seen
        )
        morphisms = 0
        for st in order_seen:
            diag, edge = unpack(st)
            if _state_failure_vertex(diag, edge, n) is not None:
                continue
            for i in range(r):
                m = backend.cartan_mrow(diag, edge, n, i)
                nd, ne = backend.reflect_diagram(diag, edge, n, i, m)
                if _pack_state(nd, ne) != st:
                    morphisms += 1
        return ExplorationResult(status, objects, morphisms, witness, failing)

    while queue:
        state = queue.popleft()
        diag, edge = unpack(state)
        bad = _state_failure_vertex(diag, edge, n)
        if bad is not None:
            return make_result(FAILS_AT, word_to(state), bad)
        for i in range(r):
            m = backend.cartan_mrow(diag, edge, n, i)
            nd, ne = backend.reflect_diagram(diag, edge, n, i, m)
            new_state = _pack_state(nd, ne)
            if new_state not in parents:
                if len(parents) >= max_objects:
                    return make_result(BOUND_EXCEEDED_STATUS)
                parents[new_state] = (state, i + 1)
                order_seen.append(new_state)
                queue.append(new_state)
    return make_result(EXISTS)


def _root_closure(braiding: DiagonalBraiding, max_roots: int, max_objects: int):
    """Fixpoint propagation of simple roots across the groupoid.

    Returns (roots at start object, True) or (None, False) on bound excess.
    Raises RootSystemUndefinedError if exploration fails.
    """
    exploration = explore_groupoid(braiding, max_objects)
    if exploration.status == FAILS_AT:
        raise RootSystemUndefinedError(
            f"groupoid undefined: witness {list(exploration.witness)} reaches "
            f"label 1 at vertex {exploration.failing_vertex}"
        )
    if exploration.status == BOUND_EXCEEDED_STATUS:
        return None, False
    n = braiding.order
    r = braiding.rank
    states = [(obj.vertices, obj.edges) for obj in exploration.objects]

    def unpack(state):
        diag = list(state[0])
        edge = [[0] * r for _ in range(r)]
        pos = 0
        for i in range(r):
            for j in range(i + 1, r):
                edge[i][j] = edge[j][i] = state[1][pos]
                pos += 1
        return diag, edge

    # reflection data per state: list of (mrow, target_state_index)
    index = {st: k for k, st in enumerate(states)}
    moves = []
    for st in states:
        diag, edge = unpack(st)
        row = []
        for i in range(r):
            m = backend.cartan_mrow(diag, edge, n, i)
            nd, ne = backend.reflect_diagram(diag, edge, n, i, m)
            row.append((m, index[_pack_state(nd, ne)]))
        moves.append(row)

    simples = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
    roots: list[set[tuple[int, ...]]] = [set(simples) for _ in states]
    work = deque((s, alpha) for s in range(len(states)) for alpha in simples)
    total = len(states) * r
    while work:
        s, alpha = work.popleft()
        for i in range(r):
            m, target = moves[s][i]
            new_i = alpha[i] + sum(m[j] * alpha[j] for j in range(r))
            image = alpha[:i] + (new_i,) + alpha[i + 1 :]
            if image not in roots[target]:
                roots[target].add(image)
                total += 1
                if total > max_roots:
                    return None, False
                work.append((target, image))
    return roots[0], True


def enumerate_positive_roots(
    braiding: DiagonalBraiding, max_roots: int = 10_000, max_objects: int = 100_000
):
    """Positive roots of the arithmetic root system, or BOUND_EXCEEDED.

    Raises RootSystemUndefinedError when the groupoid fails to exist.
    """
    base_roots, ok = _root_closure(braiding, max_roots, max_objects)
    if not ok:
        return BOUND_EXCEEDED
    return frozenset(
        alpha
        for alpha in base_roots
        if any(a > 0 for a in alpha) and all(a >= 0 for a in alpha)
    )


def root_label(braiding: DiagonalBraiding, alpha) -> RootOfUnity:
    """q_alpha = zeta^B(alpha, alpha)."""
    if len(alpha) != braiding.rank:
        raise DomainError("root vector length does not match rank")
    return RootOfUnity(braiding.order, braiding.bilinear(alpha, alpha))


def pbw_dimension(
    braiding: DiagonalBraiding, max_roots: int = 10_000, max_objects: int = 100_000
):
    """Product of ord(q_alpha) over positive roots; INFINITE when the root
    closure exceeds its bounds.

    Raises UndefinedDimensionError if a positive root has label 1, and
    RootSystemUndefinedError when the groupoid does not exist.
    """
    roots = enumerate_positive_roots(braiding, max_roots, max_objects)
    if roots is BOUND_EXCEEDED:
        return INFINITE
    dim = 1
    for alpha in sorted(roots):
        label = root_label(braiding, alpha)
        if label.is_one:
            raise UndefinedDimensionError(
                f"positive root {alpha} has label 1; dimension undefined"
            )
        dim *= label.multiplicative_order()
    return dim


def pbw_hilbert_series(
    braiding: DiagonalBraiding,
    max_degree: int,
    max_roots: int = 10_000,
    max_objects: int = 100_000,
) -> list[int]:
    """Coefficients (degrees 0..max_degree) of prod over positive roots of
    (1 + t^ht + ... + t^((N_alpha - 1) ht)), ht = coordinate sum."""
    roots = enumerate_positive_roots(braiding, max_roots, max_objects)
    if roots is BOUND_EXCEEDED:
        raise RootSystemUndefinedError("root system is not finite")
    series = [0] * (max_degree + 1)
    series[0] = 1
    for alpha in sorted(roots):
        label = root_label(braiding, alpha)
        if label.is_one:
            raise UndefinedDimensionError(
                f"positive root {alpha} has label 1; series undefined"
            )
        height = sum(alpha)
        order = label.multiplicative_order()
        new = [0] * (max_degree + 1)
        for k in range(order):
            shift = k * height
            if shift > max_degree:
                break
            for d in range(max_degree + 1 - shift):
                if series[d]:
                    new[d + shift] += series[d]
        series = new
    return series


def pbw_top_degree(braiding: DiagonalBraiding, **bounds) -> int:
    """Top degree of the PBW Hilbert series (finite case)."""
    roots = enumerate_positive_roots(braiding, **bounds)
    if roots is BOUND_EXCEEDED:
        raise RootSystemUndefinedError("root system is not finite")
    total = 0
    for alpha in roots:
        order = root_label(braiding, alpha).multiplicative_order()
        total += (order - 1) * sum(alpha)
    return total


# ---------------------------------------------------------------------------
# JSON serialization (documented schema keys)

def braiding_to_json(braiding: DiagonalBraiding) -> dict:
    return {
        "order": braiding.order,
        "exponents": [list(row) for row in braiding.exponents],
    }


def braiding_from_json(data: dict) -> DiagonalBraiding:
    return DiagonalBraiding(data["order"], tuple(tuple(r) for r in data["exponents"]))


def diagram_to_json(diagram: GeneralizedDynkinDiagram) -> dict:
    return {
        "order": diagram.order,
        "vertices": list(diagram.vertex_exponents),
        "edges": [[i, j, e] for i, j, e in diagram.edge_exponents],
    }


def object_to_json(obj: GroupoidObject) -> dict:
    return diagram_to_json(obj.diagram())


def cartan_to_json(data: CartanData) -> dict:
    return {
        "entries": [list(r) for r in data.entries],
        "defined": [list(r) for r in data.defined],
    }


def exploration_to_json(result: ExplorationResult) -> dict:
    return {
        "status": result.status,
        "witness": list(result.witness) if result.witness is not None else None,
        "failingVertex": result.failing_vertex,
        "morphismCount": result.morphism_count,
        "objects": [object_to_json(o) for o in result.objects],
    }
