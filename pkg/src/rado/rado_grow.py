"""Inductive construction: attach a cone over every subcomplex, level by level.

``X_0`` is the single vertex 1.  ``X_{n+1}`` adds one fresh apex ``v(A)``
for every subcomplex ``A`` of ``X_n`` (the empty one included) and the cone
``v(A) * A``.  Apex labels are consecutive integers handed out in the order
of the bases' sorted facet lists, so equal arguments give identical records.

The number of subcomplexes explodes after two levels; ``base_vertex_bound``
restricts attachment to bases with at most that many vertices, which keeps
every window of that size witnessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from rado.core import Complex, enumerate_subcomplexes, facets, induced
from rado.errors import SizeLimitError, ValidationError, WitnessUnavailableError

DEFAULT_APEX_BUDGET = 250_000


@dataclass(frozen=True)
class GrowthRecord:
    levels: tuple
    apex_of: Mapping = field(repr=False)
    base_vertex_bound: int | None = None

    @property
    def top(self) -> Complex:
        return self.levels[-1]

    def witness_table(self) -> list:
        """Rows ``(level, base facets, apex)`` in apex order."""
        rows = [(n, sorted(facets(A)), v) for (n, A), v in self.apex_of.items()]
        rows.sort(key=lambda r: r[2])
        return rows


def _facet_key(A: Complex) -> tuple:
    return tuple(sorted(facets(A)))


def _bases(X: Complex, bound: int | None, budget: int, level: int) -> list:
    found = []

    def add(A):
        found.append(A)
        if len(found) > budget:
            raise SizeLimitError(
                f"level {level} needs more than {budget} apexes; pass a smaller base_vertex_bound"
            )

    if bound is None:
        for A in enumerate_subcomplexes(X, max_simplexes=max(len(X), 1)):
            add(A)
    else:
        verts = sorted(X.vertices)
        for k in range(0, min(bound, len(verts)) + 1):
            for W in combinations(verts, k):
                XW = induced(X, W)
                for A in enumerate_subcomplexes(XW, max_simplexes=max(len(XW), 1), spanning=True):
                    add(A)
    found.sort(key=_facet_key)
    return found


def grow(levels: int, base_vertex_bound: int | None = None, apex_budget: int = DEFAULT_APEX_BUDGET) -> GrowthRecord:
    """Run the construction for ``levels`` steps starting from a single vertex."""
    if levels < 0:
        raise ValidationError("levels must be nonnegative")
    if base_vertex_bound is not None and base_vertex_bound < 0:
        raise ValidationError("base_vertex_bound must be nonnegative")
    X = Complex([1], [(1,)], check=False)
    out = [X]
    apex_of: dict = {}
    next_label = 2
    for n in range(levels):
        simplexes = set(X.simplexes)
        vertices = set(X.vertices)
        for A in _bases(X, base_vertex_bound, apex_budget, n + 1):
            v = next_label
            next_label += 1
            apex_of[(n, A)] = v
            vertices.add(v)
            simplexes.add((v,))
            simplexes.update(s + (v,) for s in A.simplexes)
        X = Complex(vertices, simplexes, check=False)
        out.append(X)
    return GrowthRecord(tuple(out), apex_of, base_vertex_bound)


def witness_lookup(rec: GrowthRecord, n: int, A: Complex) -> int:
    """The apex attached over ``A`` when level ``n + 1`` was built."""
    try:
        return rec.apex_of[(n, A)]
    except KeyError:
        raise WitnessUnavailableError(f"no apex over {A!r} at level {n}") from None
