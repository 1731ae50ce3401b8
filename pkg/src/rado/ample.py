"""Ampleness witnesses, window checks, embeddings and back-and-forth.

Every check here looks at a finite complex.  A missing witness means "not
witnessed among the candidates that exist", never that an infinite complex
containing this one fails the property; reports carry the candidate-pool
size so that statistical margins can be judged.  Whenever several vertices
qualify, the smallest label is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from rado.core import (
    Complex,
    SimplicialComplex,
    enumerate_subcomplexes,
    external_d,
    induced,
    join,
    link,
    materialize,
    relabel,
)
from rado.errors import (
    DObstructionError,
    SizeLimitError,
    SubcomplexError,
    ValidationError,
    WitnessNotFoundError,
)


@dataclass(frozen=True)
class WitnessQuery:
    """A finite vertex set ``U`` and a required link ``A`` inside X_U."""

    U: frozenset
    A: Complex

    def __post_init__(self):
        object.__setattr__(self, "U", frozenset(self.U))
        if not self.A.vertices <= self.U:
            raise SubcomplexError("A uses vertices outside U")


@dataclass(frozen=True)
class PartialIsomorphism:
    """Finite vertex bijection stored as an ordered tuple of ``(left, right)`` pairs."""

    pairs: tuple = ()

    def __post_init__(self):
        pairs = tuple((a, b) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        lefts = [a for a, _ in pairs]
        rights = [b for _, b in pairs]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise ValidationError("partial isomorphism repeats a vertex")

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def forward(self) -> dict:
        return dict(self.pairs)

    @property
    def backward(self) -> dict:
        return {b: a for a, b in self.pairs}

    @property
    def left(self) -> frozenset:
        return frozenset(a for a, _ in self.pairs)

    @property
    def right(self) -> frozenset:
        return frozenset(b for _, b in self.pairs)

    def extend(self, a, b) -> "PartialIsomorphism":
        return PartialIsomorphism(self.pairs + ((a, b),))

    def inverse(self) -> "PartialIsomorphism":
        return PartialIsomorphism(tuple((b, a) for a, b in self.pairs))

    def prefix(self, k: int) -> "PartialIsomorphism":
        return PartialIsomorphism(self.pairs[:k])

    def is_valid(self, X: SimplicialComplex, Y: SimplicialComplex) -> bool:
        """Does the map carry X restricted to the left set onto Y restricted to the right set?"""
        if not (self.left <= X.vertices and self.right <= Y.vertices):
            return False
        src = materialize(induced(X, self.left))
        dst = materialize(induced(Y, self.right))
        return relabel(src, self.forward) == dst


def _window(X: SimplicialComplex, U) -> Complex:
    return materialize(induced(X, U))


def _trace(X: SimplicialComplex, order: list, v) -> frozenset:
    """Simplexes of the window (given in size order) whose join with v lies in X."""
    got: set = set()
    if (v,) not in X:
        return None
    for s in order:
        if len(s) > 1 and not all(s[:i] + s[i + 1:] in got for i in range(len(s))):
            continue
        if join(s, (v,)) in X:
            got.add(s)
    return frozenset(got)


def _candidates(X: SimplicialComplex, U: frozenset, candidates) -> list:
    pool = X.vertices if candidates is None else (frozenset(candidates) & X.vertices)
    return sorted(pool - U)


def _check_query(X: SimplicialComplex, q: WitnessQuery) -> Complex:
    XU = _window(X, q.U)
    if not q.A.simplexes <= XU.simplexes:
        raise SubcomplexError("A is not a subcomplex of X_U")
    return XU


def find_witness(X: SimplicialComplex, q: WitnessQuery, candidates: Iterable[int] | None = None):
    """Smallest candidate v outside U whose link restricted to U equals A, or None."""
    XU = _check_query(X, q)
    order = XU.sorted_simplexes()
    want = q.A.simplexes
    for v in _candidates(X, q.U, candidates):
        if _trace(X, order, v) == want:
            return v
    return None


def all_witnesses(X: SimplicialComplex, q: WitnessQuery, candidates: Iterable[int] | None = None) -> set:
    XU = _check_query(X, q)
    order = XU.sorted_simplexes()
    want = q.A.simplexes
    return {v for v in _candidates(X, q.U, candidates) if _trace(X, order, v) == want}


def graph_extension_check(X: SimplicialComplex, adj: Iterable[int], nonadj: Iterable[int]):
    """Smallest vertex adjacent to every vertex of ``adj`` and to none of ``nonadj``."""
    adj, nonadj = frozenset(adj), frozenset(nonadj)
    if adj & nonadj:
        raise ValidationError("adjacent and nonadjacent sets must be disjoint")
    if not (adj | nonadj) <= X.vertices:
        raise ValidationError("all prescribed vertices must belong to the complex")
    for z in sorted(X.vertices - adj - nonadj):
        if all(join((a,), (z,)) in X for a in adj) and not any(join((b,), (z,)) in X for b in nonadj):
            return z
    return None


def has_induced_boundary(X: SimplicialComplex, d: int, max_vertices: int = 40):
    """Some d-set W whose induced complex is the boundary of the simplex on W, or None.

    Candidates are grown from (d-1)-vertex simplexes, so the scan only visits
    sets whose faces are all present.
    """
    if d < 2:
        raise ValidationError("d must be at least 2")
    if len(X.vertices) > max_vertices:
        raise SizeLimitError(f"boundary scan is bounded to {max_vertices} vertices")
    X = materialize(X)
    verts = sorted(X.vertices)
    for tau in sorted(s for s in X.simplexes if len(s) == d - 1):
        for w in verts:
            if w <= tau[-1]:
                continue
            W = tau + (w,)
            if W in X.simplexes:
                continue
            if all(W[:i] + W[i + 1:] in X.simplexes for i in range(d)):
                return W
    return None


def find_witness_d(X: SimplicialComplex, q: WitnessQuery, d: int, candidates: Iterable[int] | None = None):
    """Witness search for the variant that forbids induced copies of ∂Δ_d.

    The base must have no external simplexes with ``d - 1`` vertices; the
    returned vertex must in addition create no induced ∂Δ_d with U.
    """
    XU = _check_query(X, q)
    bad = external_d(q.A, XU, d)
    if bad:
        raise DObstructionError(f"base has external simplexes of size {d - 1}: {sorted(bad)}", sorted(bad))
    order = XU.sorted_simplexes()
    want = q.A.simplexes
    for v in _candidates(X, q.U, candidates):
        if _trace(X, order, v) != want:
            continue
        if has_induced_boundary(_window(X, q.U | {v}), d, max_vertices=len(q.U) + 1) is None:
            return v
    return None


@dataclass
class WindowReport:
    """Outcome of a window ampleness check."""

    queries: int = 0
    failures: list = field(default_factory=list)
    candidate_pool: int = 0
    size_cap: int = 0
    d: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures


def is_ample_window(
    X: SimplicialComplex,
    U_max: Iterable[int],
    size_cap: int = 3,
    candidates: Iterable[int] | None = None,
    d: int | None = None,
) -> WindowReport:
    """Check every query (U, A) with U ⊆ U_max, |U| ≤ size_cap and A ⊆ X_U.

    For each U the candidates are scanned once in increasing order; each
    candidate's link trace answers all bases A simultaneously.  With ``d``
    set, only bases without external (d-1)-vertex simplexes are queried and
    witnesses must not create an induced ∂Δ_d.
    """
    U_max = sorted(frozenset(U_max) & X.vertices)
    pool = X.vertices if candidates is None else frozenset(candidates) & X.vertices
    report = WindowReport(candidate_pool=len(pool), size_cap=size_cap, d=d)
    for k in range(0, min(size_cap, len(U_max)) + 1):
        for U in combinations(U_max, k):
            U = frozenset(U)
            XU = _window(X, U)
            order = XU.sorted_simplexes()
            bases = list(enumerate_subcomplexes(XU, max_simplexes=max(len(XU), 24)))
            if d is not None:
                bases = [A for A in bases if not external_d(A, XU, d)]
            report.queries += len(bases)
            open_ = {A.simplexes: A for A in bases}
            for v in sorted(pool - U):
                if not open_:
                    break
                t = _trace(X, order, v)
                if t is None or t not in open_:
                    continue
                if d is not None and has_induced_boundary(_window(X, U | {v}), d, max_vertices=k + 1):
                    continue
                del open_[t]
            report.failures.extend((U, A) for A in sorted(open_.values(), key=lambda A: sorted(A.simplexes)))
    return report


def extend_by_cone(
    X: SimplicialComplex,
    target: SimplicialComplex,
    iso: PartialIsomorphism,
    new_vertex: int,
    base: Complex | None = None,
) -> PartialIsomorphism:
    """Extend ``iso`` (X-vertices to target vertices) by one vertex.

    ``new_vertex`` lies in ``target`` outside the current image; ``base`` is
    its link inside the image (computed when omitted).  The X-side partner is
    the smallest witness for the preimage of ``base``.
    """
    if new_vertex in iso.right:
        raise ValidationError(f"{new_vertex} is already mapped")
    if base is None:
        local = _window(target, iso.right | {new_vertex})
        base = _window(link(local, (new_vertex,)), iso.right)
    if not base.vertices <= iso.right:
        raise SubcomplexError("base must lie in the image of the partial isomorphism")
    A = relabel(base, iso.backward)
    v = find_witness(X, WitnessQuery(iso.left, A))
    if v is None:
        raise WitnessNotFoundError(f"no witness in the ambient complex for the cone at {new_vertex}")
    return iso.extend(v, new_vertex)


def embed_complex(X: SimplicialComplex, L: SimplicialComplex):
    """Embed ``L`` into ``X`` as an induced subcomplex, one cone at a time.

    Returns a :class:`PartialIsomorphism` with pairs ``(vertex of L, vertex of X)``,
    or None when some step has no witness.
    """
    iso = PartialIsomorphism()
    for w in sorted(L.vertices):
        try:
            iso = extend_by_cone(X, L, iso, w)
        except WitnessNotFoundError:
            return None
    return iso.inverse()


@dataclass
class BackAndForthResult:
    iso: PartialIsomorphism
    steps_done: int
    failed_step: int | None = None
    exhausted: bool = False

    @property
    def ok(self) -> bool:
        return self.failed_step is None


def back_and_forth(
    X: SimplicialComplex,
    Xp: SimplicialComplex,
    seed_iso: PartialIsomorphism = PartialIsomorphism(),
    steps: int = 10,
) -> BackAndForthResult:
    """Alternate forward and backward one-vertex extensions.

    Odd steps take the smallest unmapped vertex of X and find its partner in
    Xp; even steps do the same from Xp into X.  Stops after ``steps``
    extensions, when the side whose turn it is has no unmapped vertex, or at
    the first step without a witness (the partial result is kept).
    """
    iso = seed_iso
    for k in range(1, steps + 1):
        forward = k % 2 == 1
        side, mapped = (X, iso.left) if forward else (Xp, iso.right)
        rest = side.vertices - mapped
        if not rest:
            return BackAndForthResult(iso, k - 1, exhausted=True)
        u = min(rest)
        try:
            if forward:
                iso = extend_by_cone(Xp, X, iso.inverse(), u).inverse()
            else:
                iso = extend_by_cone(X, Xp, iso, u)
        except WitnessNotFoundError:
            return BackAndForthResult(iso, k - 1, failed_step=k)
    return BackAndForthResult(iso, steps)
