"""Complexes built from words in a digraph.

These are complexes in the ordered sense: a cell is a vertex tuple, two
tuples on the same vertex set are different cells, and the boundary is
the full alternating face sum over entry deletions.  Closure under
deletion is part of the construction for each builder here.
"""

from __future__ import annotations

from .chains import _eulerian_buckets
from .errors import GraphError
from .graphs import distance_matrix, reachability_preorder
from .matrices import SparseMatrix
from .snf import smith_normal_form


class WordComplex:
    """Finite complex of ordered cells, closed under entry deletion."""

    def __init__(self, cells_by_dim):
        self._cells = {
            k: tuple(sorted(cells)) for k, cells in cells_by_dim.items() if cells
        }
        self._boundaries = {}

    def dims(self):
        return sorted(self._cells)

    @property
    def dimension(self):
        return max(self._cells, default=-1)

    def cells(self, k):
        return self._cells.get(k, ())

    def f_vector(self):
        return tuple(len(self._cells.get(k, ())) for k in range(self.dimension + 1))

    def euler_characteristic(self):
        return sum((-1) ** k * len(cells) for k, cells in self._cells.items())

    def boundary(self, k):
        if k not in self._boundaries:
            domain = self.cells(k)
            codomain = self.cells(k - 1)
            index = {t: i for i, t in enumerate(codomain)}
            mat = SparseMatrix(len(codomain), len(domain))
            if k >= 1:
                for j, cell in enumerate(domain):
                    for i in range(k + 1):
                        face = cell[:i] + cell[i + 1 :]
                        if face not in index:
                            raise GraphError(f"face {face} of {cell} is missing")
                        mat.add_at(index[face], j, (-1) ** i)
            self._boundaries[k] = mat
        return self._boundaries[k]

    def export_cells(self):
        """One cell per line, vertices space separated, dimensions ascending."""
        lines = []
        for k in self.dims():
            for cell in self.cells(k):
                lines.append(" ".join(str(v) for v in cell))
        return "\n".join(lines) + ("\n" if lines else "")

    def __eq__(self, other):
        return isinstance(other, WordComplex) and self._cells == other._cells


def injective_words(G):
    """Words with pairwise distinct entries and consecutive reachability."""
    by_dim = {}
    for (k, _), trails in _eulerian_buckets(G).items():
        by_dim.setdefault(k, []).extend(trails)
    return WordComplex(by_dim)


def directed_flag(G):
    """Distinct-vertex tuples whose entries are pairwise forward edges."""
    by_dim = {}
    stack = []

    def extend():
        by_dim.setdefault(len(stack) - 1, []).append(tuple(stack))
        for v in range(G.n):
            if v in stack:
                continue
            if all(G.has_edge(u, v) for u in stack):
                stack.append(v)
                extend()
                stack.pop()

    for x0 in range(G.n):
        stack.append(x0)
        extend()
        stack.pop()
    return WordComplex(by_dim)


def order_complex(P):
    """Chains of a poset presented as a transitively closed acyclic digraph."""
    dist = distance_matrix(P)
    for u in range(P.n):
        for v in range(P.n):
            if u == v:
                continue
            if dist[u][v] != float("inf"):
                if not P.has_edge(u, v):
                    raise GraphError(f"not transitively closed: {u} reaches {v}")
                if P.has_edge(v, u):
                    raise GraphError(f"not acyclic: {u} and {v} are comparable both ways")
    return directed_flag(P)


def word_homology(complex_, ring="Z", reduced=False):
    """Homology of a word complex from integer Smith normal form.

    Returns {degree: AbelianGroupInvariant}, trivial groups dropped.
    """
    from .homology import AbelianGroupInvariant, _group_from_snf, parse_ring

    if isinstance(ring, str):
        ring = parse_ring(ring)
    zero = ((), 0)
    stats = {}

    def snf_at(k):
        if k not in stats:
            mat = complex_.boundary(k)
            stats[k] = smith_normal_form(mat) if mat.nnz else ((), 0)
        return stats[k]

    out = {}
    for k in range(complex_.dimension + 1):
        dim = len(complex_.cells(k))
        if not dim:
            continue
        out_stats = snf_at(k) if k >= 1 else zero
        if reduced and k == 0:
            out_stats = ((1,), 1)
        in_stats = snf_at(k + 1) if complex_.cells(k + 1) else zero
        g = _group_from_snf(dim, out_stats, in_stats, ring)
        if not g.trivial:
            out[k] = g
    return out


def injective_words_via_flag(G):
    """Same complex as injective_words, built through the reachability flag."""
    return directed_flag(reachability_preorder(G))
