"""Building RBAs from group Cayley tables and association-scheme relations.

Cayley file: line 1 "order m", then m rows of m whitespace-separated
0-based element indices; element 0 is the identity.

Scheme file: line 1 "points v classes r", then r blocks of v rows of 0/1
(blank lines between blocks allowed, "#" comments everywhere).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .core import RBA, StructuralError

__all__ = [
    "parse_cayley",
    "from_group",
    "parse_scheme",
    "from_scheme",
    "thin_scheme",
]


def _content_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_cayley(text: str) -> np.ndarray:
    lines = list(_content_lines(text))
    if not lines or not lines[0].startswith("order"):
        raise StructuralError("Cayley file must start with an 'order m' line")
    try:
        m = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise StructuralError("bad 'order' line") from exc
    rows = []
    for line in lines[1:]:
        rows.append([int(t) for t in line.split()])
    if len(rows) != m or any(len(row) != m for row in rows):
        raise StructuralError(f"expected {m} rows of {m} entries")
    table = np.array(rows, dtype=int)
    if table.min() < 0 or table.max() >= m:
        raise StructuralError("table entries out of range")
    return table


def from_group(table) -> RBA:
    """Group-algebra RBA of a Cayley table: lam[i,j,k] = [g_i g_j = g_k],
    star = inversion. Degrees are all 1 and the order is the group order."""
    if isinstance(table, str):
        table = parse_cayley(table)
    table = np.asarray(table, dtype=int)
    m = table.shape[0]
    if table.shape != (m, m):
        raise StructuralError("Cayley table must be square")
    for i in range(m):
        if sorted(table[i]) != list(range(m)) or sorted(table[:, i]) != list(range(m)):
            raise StructuralError(f"not a Latin square: row/column {i}")
    if not (np.array_equal(table[0], np.arange(m)) and np.array_equal(table[:, 0], np.arange(m))):
        raise StructuralError("element 0 is not a two-sided identity")
    for i, j, k in itertools.product(range(m), repeat=3):
        if table[table[i, j], k] != table[i, table[j, k]]:
            raise StructuralError(f"not associative at triple ({i},{j},{k})")
    inv = np.empty(m, dtype=int)
    for i in range(m):
        js = np.flatnonzero(table[i] == 0)
        if len(js) != 1:
            raise StructuralError(f"element {i} has no unique inverse")
        inv[i] = js[0]
    lam = np.full((m, m, m), Fraction(0), dtype=object)
    for i, j in itertools.product(range(m), repeat=2):
        lam[i, j, table[i, j]] = Fraction(1)
    return RBA(lam, inv)


def parse_scheme(text: str) -> list:
    lines = list(_content_lines(text))
    if not lines or not lines[0].startswith("points"):
        raise StructuralError("scheme file must start with 'points v classes r'")
    fields = lines[0].split()
    try:
        v, r = int(fields[1]), int(fields[3])
    except (IndexError, ValueError) as exc:
        raise StructuralError("bad scheme header") from exc
    rows = [[int(t) for t in line.split()] for line in lines[1:]]
    if len(rows) != v * r or any(len(row) != v for row in rows):
        raise StructuralError(f"expected {r} blocks of {v} rows of {v} entries")
    mats = [np.array(rows[b * v:(b + 1) * v], dtype=int) for b in range(r)]
    return mats


def from_scheme(relations) -> RBA:
    """Adjacency-algebra RBA of an association scheme, in its standard basis.

    lam[i,j,k] is the intersection number read off from R_i R_j = sum_k p R_k;
    star is the transpose permutation and the valencies are the degrees.
    """
    if isinstance(relations, str):
        relations = parse_scheme(relations)
    mats = [np.asarray(m, dtype=int) for m in relations]
    r = len(mats)
    if r == 0:
        raise StructuralError("no relation matrices")
    v = mats[0].shape[0]
    for m in mats:
        if m.shape != (v, v) or not np.isin(m, (0, 1)).all():
            raise StructuralError("relations must be square 0/1 matrices of equal size")
    if not np.array_equal(mats[0], np.eye(v, dtype=int)):
        raise StructuralError("R_0 must be the identity relation")
    if not np.array_equal(sum(mats), np.ones((v, v), dtype=int)):
        raise StructuralError("relations must partition the point pairs (sum to all-ones)")
    star = np.full(r, -1, dtype=int)
    for i in range(r):
        for j in range(r):
            if np.array_equal(mats[i].T, mats[j]):
                star[i] = j
                break
        else:
            raise StructuralError(f"transpose of relation {i} is not a relation")
    lam = np.full((r, r, r), Fraction(0), dtype=object)
    for i, j in itertools.product(range(r), repeat=2):
        prod = mats[i] @ mats[j]
        recon = np.zeros((v, v), dtype=int)
        for k in range(r):
            mask = mats[k].astype(bool)
            if not mask.any():
                raise StructuralError(f"relation {k} is empty")
            vals = prod[mask]
            if vals.min() != vals.max():
                raise StructuralError(
                    f"not a scheme: R_{i} R_{j} is not constant on R_{k}"
                )
            lam[i, j, k] = Fraction(int(vals[0]))
            recon += int(vals[0]) * mats[k]
        if not np.array_equal(recon, prod):
            raise StructuralError(f"not a scheme: R_{i} R_{j} leaves the span")
    return RBA(lam, star)


def thin_scheme(table) -> list:
    """Relation matrices of the regular action of a group: R_g[u, v] = [v = u g].

    from_scheme of this output reproduces from_group of the same table.
    """
    if isinstance(table, str):
        table = parse_cayley(table)
    table = np.asarray(table, dtype=int)
    m = table.shape[0]
    mats = []
    for g in range(m):
        rel = np.zeros((m, m), dtype=int)
        rel[np.arange(m), table[np.arange(m), g]] = 1
        mats.append(rel)
    return mats
