"""Smith normal form over the integers.

The pipeline is a sparse elimination pass that consumes +-1 pivots first
(boundary matrices almost always reduce completely there), followed by a
dense minimal-magnitude-pivot Smith reduction of whatever small residue is
left.  Arithmetic is plain Python int, so there is no overflow to manage.
"""

from __future__ import annotations

from math import gcd

from .matrices import SparseMatrix


def _dense_snf(rows):
    """Diagonal of the Smith form of a small dense integer matrix."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while True:
        # locate a minimal-magnitude nonzero pivot in the active block
        pos = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pos = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pos is None:
            break
        i, j = pos
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            # shrink the pivot until it divides its row and column
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                        changed = True
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        changed = True
            col_clear = all(a[i][t] == 0 for i in range(t + 1, m))
            row_entry = None
            for j in range(t + 1, n):
                if a[t][j]:
                    row_entry = j
                    break
            if col_clear and row_entry is not None:
                q = a[t][row_entry] // a[t][t]
                for row in a:
                    row[row_entry] -= q * row[t]
                if a[t][row_entry]:
                    for row in a:
                        row[t], row[row_entry] = row[row_entry], row[t]
                changed = True
            if col_clear and row_entry is None and not changed:
                break
        # make sure the pivot divides the rest of the block
        piv = a[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % piv:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            continue
        diag.append(abs(piv))
        t += 1
        if t == m or t == n:
            break
    return diag


def _divisor_chain(divs):
    """Normalize positive divisors into a divisibility chain d1 | d2 | ..."""
    d = [abs(x) for x in divs if x]
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    l = d[i] // g * d[j]
                    d[i], d[j] = g, l
                    changed = True
    return tuple(sorted(d))


def smith_normal_form(matrix):
    """Return (divisors, rank) with divisors the nonzero Smith diagonal.

    Accepts a SparseMatrix or a dense list of rows.
    """
    if isinstance(matrix, SparseMatrix):
        items = matrix.entries.items()
    else:
        items = (
            ((i, j), v)
            for i, row in enumerate(matrix)
            for j, v in enumerate(row)
            if v
        )

    rows = {}
    cols = {}
    units = set()
    for (r, c), v in items:
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)
        if v in (1, -1):
            units.add((r, c))

    ones = 0
    while units:
        # Markowitz-style cost keeps fill-in down
        r, c = min(
            units,
            key=lambda rc: (len(rows[rc[0]]) - 1) * (len(cols[rc[1]]) - 1),
        )
        piv = rows[r][c]
        piv_items = list(rows[r].items())
        for r2 in list(cols[c]):
            if r2 == r:
                continue
            f = rows[r2][c] * piv  # piv is +-1 so this is the exact multiplier
            row2 = rows[r2]
            for c2, v in piv_items:
                nv = row2.get(c2, 0) - f * v
                if nv:
                    if c2 not in row2:
                        cols.setdefault(c2, set()).add(r2)
                    row2[c2] = nv
                    if nv in (1, -1):
                        units.add((r2, c2))
                    else:
                        units.discard((r2, c2))
                else:
                    if c2 in row2:
                        del row2[c2]
                        cols[c2].discard(r2)
                        units.discard((r2, c2))
            if not row2:
                del rows[r2]
        # pivot row and column are now spent
        for c2 in rows[r]:
            cols[c2].discard(r)
            units.discard((r, c2))
        del rows[r]
        ones += 1

    divisors = [1] * ones
    if rows:
        live_rows = sorted(rows)
        live_cols = sorted({c for row in rows.values() for c in row})
        cindex = {c: j for j, c in enumerate(live_cols)}
        dense = [[0] * len(live_cols) for _ in live_rows]
        for i, r in enumerate(live_rows):
            for c, v in rows[r].items():
                dense[i][cindex[c]] = v
        divisors.extend(_dense_snf(dense))

    chain = _divisor_chain(divisors)
    return chain, len(chain)


def rank_z(matrix):
    """Rank over the rationals (= number of Smith divisors)."""
    return smith_normal_form(matrix)[1]


def rank_mod_p(matrix, p):
    """Rank over the field with p elements, read off the Smith divisors."""
    divisors, _ = smith_normal_form(matrix)
    return sum(1 for d in divisors if d % p)
