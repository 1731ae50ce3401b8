"""Random simplicial complexes: probability systems, measures and samplers.

A probability system assigns ``p_sigma`` to every finite simplex of the
positive integers.  The measure of the set of complexes inducing ``Y`` on
``{1..n}`` is

    prod(p_s for s in Y) * prod(1 - p_s for s in E(Y | Δ_n))

where ``E`` collects the external simplexes (outside Y, all proper faces
inside Y).  :func:`sample_complex` draws from exactly this law by visiting
simplexes in (size, lexicographic) order and keeping a simplex with
probability ``p_sigma`` when all its faces were kept.

Values are floats by default.  Systems built with ``exact=True`` (or
:meth:`ProbabilitySystem.exact`) return :class:`fractions.Fraction` values,
and every formula below then evaluates in exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Callable, Iterable, Mapping

import numpy as np

from rado.core import (
    Complex,
    LazyComplex,
    SimplicialComplex,
    check_simplex,
    enumerate_subcomplexes,
    external_simplexes,
    full_simplex,
    induced,
    join,
    materialize,
)
from rado.errors import (
    ApexCollisionError,
    SizeLimitError,
    SubcomplexError,
    ValidationError,
)
from rado.hashrng import PARAM_STREAM, SAMPLE_STREAM, SELECT_STREAM, simplex_uniform, vertex_uniforms


def _check_prob(p, what="probability"):
    if not isinstance(p, Real) or not 0 <= p <= 1:
        raise ValidationError(f"{what} must lie in [0, 1], got {p!r}")
    return p


class ProbabilitySystem:
    """A total rule ``simplex -> p_sigma`` with declared bounds ``p_minus <= p_sigma <= p_plus``."""

    def __init__(self, rule: Callable, p_minus, p_plus, *, spec: dict | None = None, name: str = "custom"):
        _check_prob(p_minus, "p_minus")
        _check_prob(p_plus, "p_plus")
        if p_minus > p_plus:
            raise ValidationError("p_minus must not exceed p_plus")
        self._rule = rule
        self.p_minus = p_minus
        self.p_plus = p_plus
        self.spec = spec
        self.name = name

    def __repr__(self) -> str:
        return f"ProbabilitySystem({self.name}, [{self.p_minus}, {self.p_plus}])"

    def p(self, sigma):
        return self._rule(tuple(sigma))

    def q(self, sigma):
        return 1 - self._rule(tuple(sigma))

    @property
    def medial(self) -> bool:
        return 0 < self.p_minus and self.p_plus < 1

    @property
    def is_exact(self) -> bool:
        return isinstance(self.p_minus, Fraction)

    def exact(self) -> "ProbabilitySystem":
        """The same system with every value converted to an exact fraction."""
        rule = self._rule
        return ProbabilitySystem(
            lambda s: Fraction(rule(s)),
            Fraction(self.p_minus),
            Fraction(self.p_plus),
            spec=self.spec,
            name=self.name + "/exact",
        )

    # constructors -------------------------------------------------------------

    @classmethod
    def constant(cls, p) -> "ProbabilitySystem":
        _check_prob(p)
        spec = {"kind": "constant", "p": str(p) if isinstance(p, Fraction) else p}
        return cls(lambda s: p, p, p, spec=spec, name=f"constant({p})")

    @classmethod
    def per_size(cls, table: Mapping[int, Real], default=None) -> "ProbabilitySystem":
        """``p_sigma`` looked up by the number of vertices of sigma."""
        table = {int(k): _check_prob(v) for k, v in table.items()}
        if default is not None:
            _check_prob(default)
        values = list(table.values()) + ([default] if default is not None else [])
        if not values:
            raise ValidationError("per-size system needs at least one value")

        def rule(s):
            p = table.get(len(s), default)
            if p is None:
                raise ValidationError(f"no probability for simplexes with {len(s)} vertices")
            return p

        spec = {"kind": "per-size", "table": {str(k): v for k, v in sorted(table.items())}, "default": default}
        return cls(rule, min(values), max(values), spec=spec, name="per-size")

    @classmethod
    def table(cls, entries: Mapping, default) -> "ProbabilitySystem":
        """Explicit values for finitely many simplexes, ``default`` elsewhere."""
        _check_prob(default)
        entries = {check_simplex(k): _check_prob(v) for k, v in entries.items()}
        values = list(entries.values()) + [default]
        spec = {
            "kind": "table",
            "default": default,
            "table": [{"simplex": [str(a) for a in k], "p": v} for k, v in sorted(entries.items())],
        }
        return cls(lambda s: entries.get(s, default), min(values), max(values), spec=spec, name="table")

    @classmethod
    def seeded(cls, low, high, seed: int, *, exact: bool = False) -> "ProbabilitySystem":
        """Pseudo-random values in ``[low, high]`` fixed per simplex by ``seed``."""
        _check_prob(low)
        _check_prob(high)
        if low > high:
            raise ValidationError("low must not exceed high")
        if exact:
            lo, hi = Fraction(low), Fraction(high)

            def rule(s):
                return lo + (hi - lo) * Fraction(simplex_uniform(seed, s, PARAM_STREAM))

        else:

            def rule(s):
                return low + (high - low) * simplex_uniform(seed, s, PARAM_STREAM)

        spec = {"kind": "seeded", "low": low, "high": high, "seed": seed}
        bounds = (Fraction(low), Fraction(high)) if exact else (low, high)
        return cls(rule, *bounds, spec=spec, name=f"seeded({low}, {high}, {seed})")

    @classmethod
    def from_spec(cls, spec: Mapping, *, exact: bool = False) -> "ProbabilitySystem":
        """Build from the JSON probability-spec document (see README)."""
        num = Fraction if exact else float

        def val(x):
            return num(str(x)) if exact else float(x)

        kind = spec.get("kind")
        try:
            if kind == "constant":
                return cls.constant(val(spec["p"]))
            if kind == "per-size":
                default = spec.get("default")
                return cls.per_size(
                    {int(k): val(v) for k, v in spec["table"].items()},
                    None if default is None else val(default),
                )
            if kind == "table":
                entries = {tuple(int(a) for a in row["simplex"]): val(row["p"]) for row in spec.get("table", [])}
                return cls.table(entries, val(spec["default"]))
            if kind == "seeded":
                return cls.seeded(val(spec["low"]), val(spec["high"]), int(spec["seed"]), exact=exact)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"bad probability spec: {exc}") from exc
        raise ValidationError(f"unknown probability-spec kind {kind!r}")


@dataclass(frozen=True)
class CylinderSet:
    """All complexes on the positive integers whose induced complex on {1..n} is Y."""

    Y: Complex
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("n must be nonnegative")
        if any(v > self.n for v in self.Y.vertices):
            raise ValidationError(f"Y uses vertices outside 1..{self.n}")


def _product(values, start=1):
    return math.prod(values, start=start)


def _total(values):
    values = list(values)
    if any(isinstance(v, Fraction) for v in values):
        return sum(values, Fraction(0))
    return math.fsum(values)


def p_of_subcomplex(A: Complex, L: SimplicialComplex, P: ProbabilitySystem):
    """Weight of ``A`` inside ``L``: p over the simplexes of A times q over its external simplexes."""
    ext = external_simplexes(A, L)
    return _product(P.p(s) for s in A.simplexes) * _product(P.q(s) for s in ext)


def lemma21_sum(L: SimplicialComplex, P: ProbabilitySystem, max_simplexes: int = 24):
    """Sum of :func:`p_of_subcomplex` over every subcomplex of ``L``; always 1."""
    L = materialize(L)
    ps = {s: P.p(s) for s in L.simplexes}
    qs = {s: 1 - p for s, p in ps.items()}
    terms = []
    for A in enumerate_subcomplexes(L, max_simplexes):
        ext = external_simplexes(A, L)
        terms.append(_product(ps[s] for s in A.simplexes) * _product(qs[s] for s in ext))
    return _total(terms)


def lemma21_bruteforce(L: Complex, P: ProbabilitySystem, max_simplexes: int = 20):
    """Independent check of the normalisation by expanding prod(p + q).

    Every subset J of the simplexes of L carries weight
    prod(p over J) * prod(q over the rest).  Grouping subsets by the largest
    subcomplex contained in J gives one marginal per subcomplex.  Returns
    ``(total, {subcomplex: marginal})``.
    """
    order = sorted(L.simplexes, key=lambda s: (len(s), s))
    m = len(order)
    if m > max_simplexes:
        raise SizeLimitError(f"brute force over 2**{m} subsets exceeds the bound 2**{max_simplexes}")
    index = {s: i for i, s in enumerate(order)}
    faces = [[index[s[:i] + s[i + 1:]] for i in range(len(s))] if len(s) > 1 else [] for s in order]
    ps = [P.p(s) for s in order]
    qs = [P.q(s) for s in order]
    marginals: dict = {}
    for mask in range(1 << m):
        weight = 1
        closed = 0
        for i in range(m):
            if mask >> i & 1:
                weight *= ps[i]
                if all(closed >> j & 1 for j in faces[i]):
                    closed |= 1 << i
            else:
                weight *= qs[i]
        marginals[closed] = marginals.get(closed, 0) + weight
    out = {}
    for closed, w in marginals.items():
        kept = [order[i] for i in range(m) if closed >> i & 1]
        out[Complex((s[0] for s in kept if len(s) == 1), kept, check=False)] = w
    return _total(out.values()), out


def cylinder_measure(c: CylinderSet, P: ProbabilitySystem, max_n: int = 12):
    if c.n > max_n:
        raise SizeLimitError(f"cylinder measure is bounded to n <= {max_n}")
    delta = full_simplex(range(1, c.n + 1))
    ext = external_simplexes(c.Y, delta)
    return _product(P.p(s) for s in c.Y.simplexes) * _product(P.q(s) for s in ext)


def induced_measure(U: Iterable[int], L: Complex, P: ProbabilitySystem, max_vertices: int = 12):
    """Probability that a random complex induces exactly ``L`` on the finite set ``U``."""
    U = frozenset(U)
    if len(U) > max_vertices:
        raise SizeLimitError(f"induced measure is bounded to |U| <= {max_vertices}")
    if not L.vertices <= U:
        raise SubcomplexError("V(L) must be contained in U")
    ext = external_simplexes(L, full_simplex(U))
    return _product(P.p(s) for s in L.simplexes) * _product(P.q(s) for s in ext)


def extension_probability(L: Complex, A: Complex, v: int, P: ProbabilitySystem):
    """Conditional probability that vertex ``v`` cones exactly over ``A`` given X_U = L."""
    if v in L.vertices:
        raise ApexCollisionError(f"{v} already lies in L")
    ext = external_simplexes(A, L)
    return (
        P.p((v,))
        * _product(P.p(join(s, (v,))) for s in A.simplexes)
        * _product(P.q(join(s, (v,))) for s in ext)
    )


def extension_lower_bound(L: Complex, A: Complex, P: ProbabilitySystem):
    """``p_minus ** (1 + |A|) * (1 - p_plus) ** |E(A|L)|``, a floor for the medial regime."""
    ext = external_simplexes(A, L)
    return P.p_minus ** (1 + len(A.simplexes)) * (1 - P.p_plus) ** len(ext)


def _coin(seed: int, sigma, P: ProbabilitySystem) -> bool:
    return simplex_uniform(seed, sigma, SAMPLE_STREAM) < P.p(sigma)


def _vertex_coins(n: int, P: ProbabilitySystem, seed: int) -> list:
    if n == 0:
        return []
    labels = np.arange(1, n + 1, dtype=np.uint64)
    u = vertex_uniforms(seed, labels, SAMPLE_STREAM)
    return [v for v, x in zip(range(1, n + 1), u.tolist()) if x < P.p((v,))]


def sample_complex(n: int, P: ProbabilitySystem, seed: int, max_size: int | None = None) -> Complex:
    """Draw the restriction to {1..n} of a random complex, materialised.

    Simplexes are visited by size, then lexicographically; a simplex whose
    faces are all present is kept when its own uniform falls below p_sigma.
    ``max_size`` truncates to simplexes with at most that many vertices.
    """
    if n < 0:
        raise ValidationError("n must be nonnegative")
    verts = _vertex_coins(n, P, seed)
    found = [(v,) for v in verts]
    level = found
    size = 1
    while level and (max_size is None or size < max_size):
        current = set(level)
        nxt = []
        for tau in level:
            for w in verts:
                if w <= tau[-1]:
                    continue
                sigma = tau + (w,)
                if all(sigma[:i] + sigma[i + 1:] in current for i in range(len(sigma) - 1)) and _coin(seed, sigma, P):
                    nxt.append(sigma)
        found.extend(nxt)
        level = nxt
        size += 1
    return Complex(verts, found, check=False)


class RandomComplex(LazyComplex):
    """The same random complex as :func:`sample_complex`, evaluated on demand.

    Membership of a simplex needs only the uniforms of its faces, so huge
    samples (thousands of vertices, tens of millions of simplexes) can be
    queried without being listed.
    """

    def __init__(self, n: int, P: ProbabilitySystem, seed: int):
        self.n = n
        self.P = P
        self.seed = seed
        super().__init__(_vertex_coins(n, P, seed), self._member, name=f"random(n={n}, seed={seed})")

    def _member(self, sigma) -> bool:
        if not _coin(self.seed, sigma, self.P):
            return False
        return all(sigma[:i] + sigma[i + 1:] in self for i in range(len(sigma)))


def random_complex(n: int, P: ProbabilitySystem, seed: int) -> RandomComplex:
    if n < 0:
        raise ValidationError("n must be nonnegative")
    return RandomComplex(n, P, seed)


def _prob_lookup(vertex_probs) -> Callable:
    if isinstance(vertex_probs, Real):
        p = _check_prob(vertex_probs)
        return lambda v: p
    if isinstance(vertex_probs, Mapping):
        return lambda v: vertex_probs.get(v, 0)
    if callable(vertex_probs):
        return vertex_probs
    raise ValidationError("vertex_probs must be a number, a mapping or a callable")


def select_vertices(vertices: Iterable[int], vertex_probs, seed: int) -> frozenset:
    """Independent Bernoulli selection of each vertex."""
    prob = _prob_lookup(vertex_probs)
    verts = sorted(vertices)
    if verts and verts[-1] < 2**63:
        u = vertex_uniforms(seed, np.asarray(verts, dtype=np.uint64), SELECT_STREAM).tolist()
    else:
        u = [simplex_uniform(seed, (v,), SELECT_STREAM) for v in verts]
    return frozenset(v for v, x in zip(verts, u) if x < prob(v))


def sample_induced(X: SimplicialComplex, vertex_probs, seed: int) -> SimplicialComplex:
    """X restricted to a random vertex set (each vertex kept with its own probability)."""
    return induced(X, select_vertices(X.vertices, vertex_probs, seed))
