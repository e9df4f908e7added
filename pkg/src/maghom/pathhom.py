"""Path homology of digraphs over a field.

Chains live on allowed paths (tuples whose consecutive pairs are edges).
The differential is the full alternating face sum on raw vertex tuples,
endpoints included and with no quotient by degenerate tuples, so a face
deleting an interior vertex may leave the allowed span.  The chain
groups are the largest subspaces the differential does not lead astray:

    Omega_n = { x in span(A_n) : d(x) in span(A_{n-1}) }

The strong variant restricts to allowed paths with pairwise distinct
vertices and asks the boundary to stay on those.  Over a field the
homology ranks come from plain rank bookkeeping:

    rank H_n = dim Omega_n - rank(d on Omega_n) - rank(d on Omega_{n+1}).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exactla import RowReducer, nullspace
from .graphs import adjacency
from .matrices import SparseMatrix


def _field(ring):
    if isinstance(ring, str) and ring.startswith("Fp:"):
        from .homology import parse_ring

        ring = parse_ring(ring)
    if ring == "Q":
        return None
    if isinstance(ring, int) and ring >= 2:
        return ring
    raise ValueError(f"path homology needs field coefficients, got {ring!r}")


@lru_cache(maxsize=None)
def allowed_paths(G, n, strong=False):
    """Allowed n-paths: consecutive pairs are edges; strong means injective."""
    if n < 0:
        return ()
    adj = adjacency(G)
    out = []
    stack = []

    def extend(last):
        if len(stack) == n + 1:
            out.append(tuple(stack))
            return
        for v in adj[last]:
            if strong and v in stack:
                continue
            stack.append(v)
            extend(v)
            stack.pop()

    for x0 in range(G.n):
        stack.append(x0)
        extend(x0)
        stack.pop()
    return tuple(sorted(out))


def _faces(path):
    for i in range(len(path)):
        yield (-1) ** i, path[:i] + path[i + 1 :]


def omega_basis(G, n, strong=False, p=None):
    """Basis vectors of Omega_n in allowed-path coordinates."""
    paths = allowed_paths(G, n, strong)
    if not paths:
        return []
    stray_index = {}
    stray_rows = {}
    if n > 0:
        lower = set(allowed_paths(G, n - 1, strong))
        for j, path in enumerate(paths):
            for sign, face in _faces(path):
                if face in lower:
                    continue
                r = stray_index.setdefault(face, len(stray_index))
                row = stray_rows.setdefault(r, {})
                row[j] = row.get(j, 0) + sign
    if not stray_index:
        one = 1 if p else Fraction(1)
        return [
            [one if i == j else 0 for i in range(len(paths))]
            for j in range(len(paths))
        ]
    dense = []
    for r in range(len(stray_index)):
        row = [0] * len(paths)
        for j, v in stray_rows.get(r, {}).items():
            row[j] = v
        dense.append(row)
    return nullspace(dense, len(paths), p)


def _allowed_boundary(G, n, strong):
    """Full face sum from allowed n-paths into allowed (n-1)-path coordinates.

    Stray faces are simply not recorded; on Omega vectors they cancel by
    construction, so the restriction of this matrix is the differential.
    """
    paths = allowed_paths(G, n, strong)
    lower = allowed_paths(G, n - 1, strong)
    index = {t: i for i, t in enumerate(lower)}
    mat = SparseMatrix(len(lower), len(paths))
    for j, path in enumerate(paths):
        for sign, face in _faces(path):
            row = index.get(face)
            if row is not None:
                mat.add_at(row, j, sign)
    return mat


def path_homology(G, kmax=None, strong=False, ring="Q", reduced=False):
    """Ranks of (strong) path homology up to degree kmax.

    The strong variant is bounded by the vertex count, so kmax is only
    mandatory without strong.  Returns {degree: rank} with zeros dropped.
    """
    p = _field(ring)
    if strong:
        top = G.n - 1 if kmax is None else min(kmax, G.n - 1)
    else:
        if kmax is None:
            raise ValueError("path chains are unbounded in degree; pass kmax")
        top = kmax
    if top < 0:
        return {}

    dims = {}
    ranks = {}
    for n in range(top + 2):
        basis = omega_basis(G, n, strong, p)
        dims[n] = len(basis)
        if n >= 1 and basis:
            mat = _allowed_boundary(G, n, strong)
            red = RowReducer(p)
            for vec in basis:
                red.add(mat.apply(vec))
            ranks[n] = red.rank
        elif n >= 1:
            ranks[n] = 0
    ranks[0] = 1 if reduced and dims.get(0, 0) else 0

    out = {}
    for n in range(top + 1):
        h = dims.get(n, 0) - ranks.get(n, 0) - ranks.get(n + 1, 0)
        if h:
            out[n] = h
    return out
