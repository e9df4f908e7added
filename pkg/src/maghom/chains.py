"""Bigraded chain complexes of trails in a digraph.

A trail is a vertex tuple whose consecutive entries are distinct and lie
at finite distance; its length is the sum of the step distances.  Three
flavors share one differential:

* eulerian: all entries pairwise distinct.  Finitely supported, and the
  whole table fits under a certified length bound.
* ordinary: only consecutive entries distinct.  Unbounded in general, so
  a length cutoff is mandatory and results are labeled truncated.
* discriminant: the quotient ordinary/eulerian, presented on the basis
  of trails with at least one repeated entry.

The differential deletes interior entries one at a time and keeps a face
only when the deletion preserves total length.  A face with a repeated
consecutive pair always changes length, so faces of trails are trails,
and in the discriminant complex the faces that land on all-distinct
tuples are simply dropped.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import GraphError
from .graphs import (
    DirectedGraph,
    distance_matrix,
    eccentricity_bound,
    morphism_verdict,
    opposite,
)
from .matrices import SparseMatrix

KINDS = ("eulerian", "ordinary", "discriminant")


def _check_kind(kind):
    if kind not in KINDS:
        raise ValueError(f"unknown complex kind {kind!r}; expected one of {KINDS}")


@lru_cache(maxsize=None)
def _finite_targets(G):
    """Per vertex, the (target, distance) pairs with finite positive distance."""
    dist = distance_matrix(G)
    out = []
    for u in range(G.n):
        row = dist[u]
        out.append(tuple((v, row[v]) for v in range(G.n) if v != u and row[v] != float("inf")))
    return tuple(out)


def trail_length(G, trail):
    """Total length of a trail, validating it along the way."""
    dist = distance_matrix(G)
    total = 0
    for a, b in zip(trail, trail[1:]):
        if a == b:
            raise GraphError(f"consecutive repeat {a} in trail {trail}")
        d = dist[a][b]
        if d == float("inf"):
            raise GraphError(f"no path {a} -> {b} in trail {trail}")
        total += d
    return total


def certified_length_bound(G):
    """Length bound below which every all-distinct trail lives.

    A trail on pairwise distinct vertices takes at most n - 1 steps and
    each step is at most the largest finite distance in the graph.
    """
    if G.n <= 1:
        return 0
    return (G.n - 1) * eccentricity_bound(G)


@lru_cache(maxsize=None)
def _eulerian_buckets(G):
    """All all-distinct trails, grouped by (entries - 1, length)."""
    targets = _finite_targets(G)
    buckets = {}
    stack = []

    def extend(last, length):
        key = (len(stack) - 1, length)
        buckets.setdefault(key, []).append(tuple(stack))
        for v, d in targets[last]:
            if v in seen:
                continue
            seen.add(v)
            stack.append(v)
            extend(v, length + d)
            stack.pop()
            seen.discard(v)

    for x0 in range(G.n):
        seen = {x0}
        stack.append(x0)
        extend(x0, 0)
        stack.pop()
    return {key: tuple(sorted(vals)) for key, vals in buckets.items()}


@lru_cache(maxsize=None)
def _trail_buckets(G, l_max):
    """All trails of length at most l_max, grouped by (entries - 1, length)."""
    targets = _finite_targets(G)
    buckets = {}
    stack = []

    def extend(last, length):
        key = (len(stack) - 1, length)
        buckets.setdefault(key, []).append(tuple(stack))
        for v, d in targets[last]:
            if length + d > l_max:
                continue
            stack.append(v)
            extend(v, length + d)
            stack.pop()

    for x0 in range(G.n):
        stack.append(x0)
        extend(x0, 0)
        stack.pop()
    return {key: tuple(sorted(vals)) for key, vals in buckets.items()}


def enumerate_basis(G, kind, k, l):
    """Basis trails at bidegree (k, l), in lexicographic order."""
    _check_kind(kind)
    if k < 0 or l < 0:
        return ()
    if kind == "eulerian":
        return _eulerian_buckets(G).get((k, l), ())
    trails = _trail_buckets(G, l).get((k, l), ())
    if kind == "ordinary":
        return trails
    return tuple(t for t in trails if len(set(t)) < len(t))


def boundary_matrix(G, kind, k, l):
    """Differential from bidegree (k, l) to (k - 1, l).

    Entry deletion is admitted only when the two adjacent steps add up to
    the distance they shortcut; in the discriminant complex, faces where
    the repeat disappears are dropped as well.
    """
    _check_kind(kind)
    domain = enumerate_basis(G, kind, k, l)
    codomain = enumerate_basis(G, kind, k - 1, l)
    index = {t: i for i, t in enumerate(codomain)}
    dist = distance_matrix(G)
    mat = SparseMatrix(len(codomain), len(domain))
    for j, t in enumerate(domain):
        sign = 1
        for i in range(1, k):
            sign = -sign
            if dist[t[i - 1]][t[i]] + dist[t[i]][t[i + 1]] == dist[t[i - 1]][t[i + 1]]:
                face = t[:i] + t[i + 1 :]
                row = index.get(face)
                if row is not None:
                    mat.add_at(row, j, sign)
    return mat


class BigradedComplex:
    """A full bigraded table of trail chain groups for one digraph."""

    def __init__(self, G, kind, l_max, certified, buckets):
        self.G = G
        self.kind = kind
        self.l_max = l_max
        self.certified = certified
        self._buckets = buckets
        self._boundaries = {}

    @classmethod
    def build(cls, G, kind="eulerian", l_max=None):
        _check_kind(kind)
        if kind == "eulerian":
            bound = certified_length_bound(G)
            if l_max is None:
                l_max = bound
            certified = l_max >= bound
            buckets = {
                key: vals
                for key, vals in _eulerian_buckets(G).items()
                if key[1] <= l_max
            }
        else:
            if l_max is None:
                raise ValueError(
                    f"the {kind} complex is unbounded in length; pass l_max"
                )
            certified = False
            raw = _trail_buckets(G, l_max)
            if kind == "ordinary":
                buckets = dict(raw)
            else:
                buckets = {}
                for key, vals in raw.items():
                    kept = tuple(t for t in vals if len(set(t)) < len(t))
                    if kept:
                        buckets[key] = kept
        return cls(G, kind, l_max, certified, buckets)

    def bidegrees(self):
        return sorted(self._buckets)

    def basis(self, k, l):
        return self._buckets.get((k, l), ())

    def dim(self, k, l):
        return len(self._buckets.get((k, l), ()))

    def counts(self):
        return {key: len(vals) for key, vals in sorted(self._buckets.items())}

    @property
    def k_max(self):
        return max((k for k, _ in self._buckets), default=-1)

    def boundary(self, k, l):
        key = (k, l)
        if key not in self._boundaries:
            self._boundaries[key] = boundary_matrix(self.G, self.kind, k, l)
        return self._boundaries[key]


def induced_chain_map(f, G, H, kind, k, l):
    """Matrix of the chain map a regular morphism induces at (k, l).

    A basis trail maps to its image tuple when the image has the same
    total length in the codomain graph, and to zero otherwise.
    """
    _check_kind(kind)
    if callable(f):
        f = [f(v) for v in range(G.n)]
    else:
        f = [f[v] for v in range(G.n)]
    verdict = morphism_verdict(f, G, H)
    if not verdict:
        raise GraphError(f"not a regular morphism: {verdict.reason}")
    domain = enumerate_basis(G, kind, k, l)
    codomain = enumerate_basis(H, kind, k, l)
    index = {t: i for i, t in enumerate(codomain)}
    dist = distance_matrix(H)
    mat = SparseMatrix(len(codomain), len(domain))
    for j, t in enumerate(domain):
        image = tuple(f[x] for x in t)
        total = 0
        for a, b in zip(image, image[1:]):
            total += dist[a][b]
        if total == l:
            row = index.get(image)
            if row is not None:
                mat.add_at(row, j, 1)
    return mat


def reversal_bijection(G, kind, k, l):
    """Basis bijection onto the opposite graph given by reversing trails."""
    _check_kind(kind)
    source = enumerate_basis(G, kind, k, l)
    target = set(enumerate_basis(opposite(G), kind, k, l))
    pairs = {}
    for t in source:
        r = tuple(reversed(t))
        if r not in target:
            raise GraphError(f"reversal of {t} missing from the opposite basis")
        pairs[t] = r
    if len(pairs) != len(target):
        raise GraphError("reversal is not onto the opposite basis")
    return pairs
