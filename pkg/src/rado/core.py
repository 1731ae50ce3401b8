"""Finite simplicial complexes and the combinatorial operations on them.

A simplex is a strictly increasing tuple of positive integer labels.  Two
kinds of complexes share one interface (``vertices`` plus membership via
``in``):

* :class:`Complex` stores every simplex explicitly and is what all the
  constructions and file formats produce.
* :class:`LazyComplex` answers membership through a predicate.  It is used
  for complexes that are finite but far too large to list, e.g. a random
  complex on 2000 vertices or a window of the arithmetic construction.

Operations that only need membership queries (``induced``, ``link``,
``delete_star``, ``external_simplexes``) accept either kind and preserve it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from decimal import Decimal
from typing import Callable, Iterable, Iterator, Mapping

from rado.errors import (
    ApexCollisionError,
    NotASimplexError,
    SizeLimitError,
    SubcomplexError,
    ValidationError,
)

Simplex = tuple  # tuple[int, ...], strictly increasing, nonempty

__all__ = [
    "Simplex",
    "SimplicialComplex",
    "Complex",
    "LazyComplex",
    "SubcomplexRelation",
    "make_simplex",
    "check_simplex",
    "join",
    "proper_faces",
    "from_facets",
    "facets",
    "materialize",
    "induced",
    "link",
    "cone",
    "complex_union",
    "external_simplexes",
    "external_d",
    "delete_star",
    "enumerate_subcomplexes",
    "is_isomorphic_small",
    "is_subcomplex",
    "is_induced",
    "full_simplex",
    "boundary_of_simplex",
    "relabel",
    "EMPTY",
]


def label_text(a: int, max_digits: int | None = None) -> str:
    """Decimal form of a label of any size (``str`` refuses very long ints).

    With ``max_digits`` set, longer labels are abbreviated by their bit length.
    """
    if max_digits is not None and a.bit_length() > 3.33 * max_digits:
        return f"<{a.bit_length()}-bit label>"
    if a.bit_length() < 10_000:
        return str(a)
    return str(Decimal(a))


def _describe(X) -> str:
    return X.name if isinstance(X, LazyComplex) else f"{len(X.vertices)}-vertex complex"


def make_simplex(labels: Iterable[int]) -> Simplex:
    """Sort ``labels`` into a simplex, rejecting duplicates and bad labels."""
    labels = list(labels)
    for a in labels:
        if isinstance(a, bool) or not isinstance(a, int) or a < 1:
            raise ValidationError(f"vertex labels must be positive integers, got {a!r}")
    sigma = tuple(sorted(labels))
    if not sigma:
        raise ValidationError("a simplex must be nonempty")
    if len(set(sigma)) != len(sigma):
        raise ValidationError(f"duplicate labels in simplex {sigma}")
    return sigma


def check_simplex(sigma: Iterable[int]) -> Simplex:
    """Validate an already ordered simplex (strictly increasing, nonempty)."""
    sigma = tuple(sigma)
    if not sigma:
        raise ValidationError("a simplex must be nonempty")
    for a in sigma:
        if isinstance(a, bool) or not isinstance(a, int) or a < 1:
            raise ValidationError(f"vertex labels must be positive integers, got {a!r}")
    for a, b in zip(sigma, sigma[1:]):
        if a >= b:
            raise ValidationError(f"simplex {sigma} is not strictly increasing")
    return sigma


def join(*parts: Simplex) -> Simplex:
    """Union of vertex tuples, returned as a simplex (labels assumed disjoint or not)."""
    return tuple(sorted(set().union(*parts)))


def proper_faces(sigma: Simplex) -> Iterator[Simplex]:
    """Every nonempty proper face of ``sigma``, by increasing size."""
    for k in range(1, len(sigma)):
        yield from combinations(sigma, k)


def _codim1_faces(sigma: Simplex) -> Iterator[Simplex]:
    for i in range(len(sigma)):
        yield sigma[:i] + sigma[i + 1:]


class SimplicialComplex:
    """Common interface: a finite vertex set plus a membership test."""

    __slots__ = ()
    vertices: frozenset

    def __contains__(self, sigma) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def has_simplex(self, sigma: Simplex) -> bool:
        return sigma in self


class Complex(SimplicialComplex):
    """An explicit finite simplicial complex.

    Instances are immutable and hashable; equality compares vertex sets and
    simplex sets.  The constructor checks downward closure unless
    ``check=False`` is passed by code that builds closed sets itself.
    """

    __slots__ = ("vertices", "simplexes", "_hash")

    def __init__(self, vertices: Iterable[int] = (), simplexes: Iterable[Simplex] = (), *, check: bool = True):
        vertices = frozenset(vertices)
        simplexes = frozenset(simplexes)
        if check:
            for v in vertices:
                check_simplex((v,))
            for sigma in simplexes:
                check_simplex(sigma)
                if not vertices.issuperset(sigma):
                    raise ValidationError(f"simplex {sigma} uses labels outside the vertex set")
                if len(sigma) > 1:
                    for tau in _codim1_faces(sigma):
                        if tau not in simplexes:
                            raise ValidationError(f"not downward closed: {sigma} lacks face {tau}")
            for v in vertices:
                if (v,) not in simplexes:
                    raise ValidationError(f"vertex {v} is missing its singleton simplex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "simplexes", simplexes)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Complex is immutable")

    def __contains__(self, sigma) -> bool:
        return tuple(sigma) in self.simplexes

    def __len__(self) -> int:
        return len(self.simplexes)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self.sorted_simplexes())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self.vertices == other.vertices and self.simplexes == other.simplexes

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.vertices, self.simplexes)))
        return self._hash

    def __repr__(self) -> str:
        fs = [tuple(label_text(a, 40) for a in f) for f in sorted(facets(self))]
        return f"Complex(facets={fs})".replace("'", "")

    def __bool__(self) -> bool:
        return bool(self.simplexes)

    def sorted_simplexes(self) -> list:
        return sorted(self.simplexes, key=lambda s: (len(s), s))

    @property
    def dim(self) -> int:
        """Largest simplex size minus one; -1 for the empty complex."""
        return max((len(s) for s in self.simplexes), default=0) - 1

    def f_vector(self) -> list:
        """Number of simplexes with 1, 2, 3, ... vertices."""
        counts = [0] * (self.dim + 1)
        for s in self.simplexes:
            counts[len(s) - 1] += 1
        return counts


EMPTY = Complex()


class LazyComplex(SimplicialComplex):
    """A finite complex known only through a membership predicate.

    ``contains`` is called for simplexes with at least two vertices, all of
    them in ``vertices``; it must describe a downward-closed family.  Answers
    are cached.
    """

    def __init__(self, vertices: Iterable[int], contains: Callable[[Simplex], bool], *, name: str = "lazy"):
        self.vertices = frozenset(vertices)
        self._contains = contains
        self._memo: dict = {}
        self.name = name

    def __contains__(self, sigma) -> bool:
        sigma = tuple(sigma)
        if len(sigma) == 1:
            return sigma[0] in self.vertices
        if not sigma:
            return False
        hit = self._memo.get(sigma)
        if hit is None:
            hit = self.vertices.issuperset(sigma) and bool(self._contains(sigma))
            self._memo[sigma] = hit
        return hit

    def __repr__(self) -> str:
        return f"LazyComplex({self.name}, {len(self.vertices)} vertices)"


@dataclass(frozen=True)
class SubcomplexRelation:
    """A pair ``part ⊆ ambient`` together with the induced flag."""

    ambient: SimplicialComplex
    part: Complex

    def __post_init__(self):
        if not is_subcomplex(self.part, self.ambient):
            raise SubcomplexError("part is not a subcomplex of ambient")

    @property
    def induced(self) -> bool:
        return is_induced(self.part, self.ambient)


def is_subcomplex(part: Complex, ambient: SimplicialComplex) -> bool:
    return part.vertices <= ambient.vertices and all(s in ambient for s in part.simplexes)


def is_induced(part: Complex, ambient: SimplicialComplex) -> bool:
    """True iff ``part`` is a subcomplex equal to the ambient complex restricted to its vertices."""
    return is_subcomplex(part, ambient) and materialize(induced(ambient, part.vertices)) == part


def from_facets(facet_list: Iterable[Iterable[int]]) -> Complex:
    """Downward closure of the given simplexes."""
    closed: set = set()
    vertices: set = set()
    for f in facet_list:
        f = check_simplex(f)
        if f in closed:
            continue
        vertices.update(f)
        for k in range(len(f), 0, -1):
            closed.update(combinations(f, k))
    return Complex(vertices, closed, check=False)


def facets(X: SimplicialComplex) -> set:
    """Inclusion-maximal simplexes of ``X``."""
    X = materialize(X)
    out = set()
    for sigma in X.simplexes:
        maximal = True
        for v in X.vertices:
            if v in sigma:
                continue
            if join(sigma, (v,)) in X.simplexes:
                maximal = False
                break
        if maximal:
            out.add(sigma)
    return out


def materialize(X: SimplicialComplex, max_size: int | None = None, limit: int | None = None) -> Complex:
    """Explicit copy of ``X`` (optionally truncated to simplexes of at most ``max_size`` vertices).

    Simplexes are discovered level by level, extending only simplexes whose
    faces are all present, so the cost is proportional to the output.
    ``limit`` caps the number of simplexes and raises :class:`SizeLimitError`.
    """
    if isinstance(X, Complex):
        if max_size is None:
            return X
        return Complex(X.vertices, (s for s in X.simplexes if len(s) <= max_size), check=False)
    verts = sorted(X.vertices)
    level = [(v,) for v in verts]
    found = list(level)
    nbrs: dict = {v: [] for v in verts}
    if (max_size is None or max_size >= 2) and len(verts) > 1:
        pairs = []
        for i, a in enumerate(verts):
            for b in verts[i + 1:]:
                if (a, b) in X:
                    nbrs[a].append(b)
                    pairs.append((a, b))
        level = pairs
        found.extend(pairs)
    else:
        level = []
    upper = {v: frozenset(ws) for v, ws in nbrs.items()}
    size = 2
    while level and (max_size is None or size < max_size):
        current = set(level)
        nxt = []
        for tau in level:
            common = upper[tau[0]]
            for a in tau[1:]:
                common = common & upper[a]
            for w in sorted(common):
                sigma = tau + (w,)
                if _faces_in(sigma, current) and sigma in X:
                    nxt.append(sigma)
        found.extend(nxt)
        if limit is not None and len(found) > limit:
            raise SizeLimitError(f"complex has more than {limit} simplexes")
        level = nxt
        size += 1
    if limit is not None and len(found) > limit:
        raise SizeLimitError(f"complex has more than {limit} simplexes")
    return Complex(X.vertices, found, check=False)


def _faces_in(sigma: Simplex, pool) -> bool:
    return all(f in pool for f in _codim1_faces(sigma))


def induced(X: SimplicialComplex, U: Iterable[int]) -> SimplicialComplex:
    """The induced subcomplex X_U; labels of U outside V(X) are ignored."""
    U = frozenset(U)
    keep = X.vertices & U
    if isinstance(X, Complex):
        return Complex(keep, (s for s in X.simplexes if keep.issuperset(s)), check=False)
    return LazyComplex(keep, X.__contains__, name=f"induced({_describe(X)})")


def link(X: SimplicialComplex, sigma: Simplex) -> SimplicialComplex:
    """Lk_X(sigma): simplexes disjoint from sigma whose join with sigma lies in X."""
    sigma = tuple(sigma)
    if not sigma or sigma not in X:
        raise NotASimplexError(f"{sigma} is not a simplex of the complex")
    s = frozenset(sigma)
    if isinstance(X, Complex):
        found = []
        for rho in X.simplexes:
            if len(rho) > len(s) and s.issubset(rho):
                found.append(tuple(a for a in rho if a not in s))
        verts = {t[0] for t in found if len(t) == 1}
        return Complex(verts, found, check=False)
    verts = [w for w in X.vertices if w not in s and join(sigma, (w,)) in X]
    return LazyComplex(verts, lambda tau: join(tau, sigma) in X, name=f"link({_describe(X)})")


def cone(v: int, A: Complex) -> Complex:
    """The cone vA over ``A`` with apex ``v`` (just the vertex v when A is empty)."""
    check_simplex((v,))
    if v in A.vertices:
        raise ApexCollisionError(f"apex {v} already lies in the base")
    simplexes = set(A.simplexes)
    simplexes.add((v,))
    simplexes.update(join(s, (v,)) for s in A.simplexes)
    return Complex(A.vertices | {v}, simplexes, check=False)


def complex_union(X: Complex, Y: Complex) -> Complex:
    return Complex(X.vertices | Y.vertices, X.simplexes | Y.simplexes, check=False)


def _require_subcomplex(A: Complex, L: SimplicialComplex) -> None:
    if not A.vertices <= L.vertices:
        raise SubcomplexError("vertices of A are not all vertices of L")
    for s in A.simplexes:
        if s not in L:
            raise SubcomplexError(f"simplex {s} of A is not in L")


def external_simplexes(A: Complex, L: SimplicialComplex) -> set:
    """E(A|L): simplexes of L outside A all of whose proper faces lie in A."""
    _require_subcomplex(A, L)
    out = {(v,) for v in L.vertices - A.vertices}
    verts = sorted(A.vertices)
    for tau in A.simplexes:
        last = tau[-1]
        for w in verts:
            if w <= last:
                continue
            sigma = tau + (w,)
            if sigma in A.simplexes:
                continue
            if _faces_in(sigma, A.simplexes) and sigma in L:
                out.add(sigma)
    return out


def external_d(A: Complex, L: SimplicialComplex, d: int) -> set:
    """External simplexes of A in L having exactly ``d - 1`` vertices."""
    if d < 2:
        raise ValidationError("d must be at least 2")
    return {s for s in external_simplexes(A, L) if len(s) == d - 1}


def delete_star(X: SimplicialComplex, F: Iterable[Simplex]) -> SimplicialComplex:
    """Remove every simplex of X having some member of F as a face."""
    F = [tuple(f) for f in F]
    for f in F:
        if f not in X:
            raise NotASimplexError(f"{f} is not a simplex of the complex")
    fsets = [frozenset(f) for f in F]
    dead_vertices = {f[0] for f in F if len(f) == 1}

    def hit(sigma) -> bool:
        ss = frozenset(sigma)
        return any(f <= ss for f in fsets)

    if isinstance(X, Complex):
        return Complex(X.vertices - dead_vertices, (s for s in X.simplexes if not hit(s)), check=False)
    return LazyComplex(X.vertices - dead_vertices, lambda s: s in X and not hit(s), name=f"delete_star({_describe(X)})")


def enumerate_subcomplexes(
    L: SimplicialComplex, max_simplexes: int = 24, *, spanning: bool = False
) -> Iterator[Complex]:
    """Yield every subcomplex of ``L`` (the empty one included) exactly once.

    Simplexes are decided in (size, lexicographic) order; a simplex may be
    kept only when all of its codimension-one faces were kept, which makes
    every branch of the search a distinct downward-closed family.  With
    ``spanning=True`` only subcomplexes containing every vertex of ``L`` are
    produced.
    """
    L = materialize(L)
    if len(L) > max_simplexes:
        raise SizeLimitError(f"complex has {len(L)} simplexes, bound is {max_simplexes}")
    order = L.sorted_simplexes()
    index = {s: i for i, s in enumerate(order)}
    faces = [[index[f] for f in _codim1_faces(s)] if len(s) > 1 else [] for s in order]
    n = len(order)
    chosen = [False] * n

    def rec(i):
        if i == n:
            kept = [order[j] for j in range(n) if chosen[j]]
            yield Complex((s[0] for s in kept if len(s) == 1), kept, check=False)
            return
        if not (spanning and not faces[i]):
            chosen[i] = False
            yield from rec(i + 1)
        if all(chosen[j] for j in faces[i]):
            chosen[i] = True
            yield from rec(i + 1)
            chosen[i] = False

    yield from rec(0)


def _star_signature(X: Complex) -> dict:
    sig = {v: [0] * (X.dim + 2) for v in X.vertices}
    for s in X.simplexes:
        for v in s:
            sig[v][len(s) - 1] += 1
    return {v: tuple(c) for v, c in sig.items()}


def is_isomorphic_small(X: Complex, Y: Complex, max_vertices: int = 10) -> dict | None:
    """A vertex bijection V(X) -> V(Y) inducing a simplex bijection, or None.

    Backtracking over the vertices of X, pruning candidates by the f-vector
    of their stars and checking every simplex that becomes fully mapped.
    """
    X, Y = materialize(X), materialize(Y)
    if len(X.vertices) > max_vertices or len(Y.vertices) > max_vertices:
        raise SizeLimitError(f"isomorphism search is bounded to {max_vertices} vertices")
    if len(X.vertices) != len(Y.vertices) or X.f_vector() != Y.f_vector():
        return None
    sx, sy = _star_signature(X), _star_signature(Y)
    if sorted(sx.values()) != sorted(sy.values()):
        return None
    star_x = {v: [s for s in X.simplexes if v in s] for v in X.vertices}
    star_y = {v: [s for s in Y.simplexes if v in s] for v in Y.vertices}
    xs = sorted(X.vertices, key=lambda v: (-len(star_x[v]), v))
    fwd: dict = {}
    bwd: dict = {}

    def consistent(x, y) -> bool:
        for s in star_x[x]:
            if all(a in fwd for a in s) and tuple(sorted(fwd[a] for a in s)) not in Y.simplexes:
                return False
        for s in star_y[y]:
            if all(b in bwd for b in s) and tuple(sorted(bwd[b] for b in s)) not in X.simplexes:
                return False
        return True

    def rec(i):
        if i == len(xs):
            return True
        x = xs[i]
        for y in sorted(Y.vertices):
            if y in bwd or sy[y] != sx[x]:
                continue
            fwd[x], bwd[y] = y, x
            if consistent(x, y) and rec(i + 1):
                return True
            del fwd[x], bwd[y]
        return False

    return dict(fwd) if rec(0) else None


def full_simplex(vertices: Iterable[int], lazy: bool = True) -> SimplicialComplex:
    """The simplex spanned by ``vertices`` (Δ_U); lazy by default."""
    verts = frozenset(vertices)
    if lazy:
        return LazyComplex(verts, lambda s: True, name=f"simplex({len(verts)})")
    vs = sorted(verts)
    return Complex(verts, (c for k in range(1, len(vs) + 1) for c in combinations(vs, k)), check=False)


def boundary_of_simplex(vertices: Iterable[int]) -> Complex:
    """All nonempty proper subsets of ``vertices``."""
    vs = sorted(set(vertices))
    return Complex(vs, (c for k in range(1, len(vs)) for c in combinations(vs, k)), check=False)


def relabel(X: Complex, mapping: Mapping[int, int]) -> Complex:
    """Image of ``X`` under an injective vertex map."""
    return Complex(
        (mapping[v] for v in X.vertices),
        (tuple(sorted(mapping[a] for a in s)) for s in X.simplexes),
        check=False,
    )
