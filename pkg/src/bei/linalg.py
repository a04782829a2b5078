"""Exact rank of sparse matrices over F_p or Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


def rank(rows: Iterable[dict[int, int]], p: int) -> int:
    """Rank of the matrix whose rows are {column: entry} dicts.

    Row reduction against a growing set of monic pivot rows; p = 0 means the
    rationals (entries become Fractions).
    """
    if p:
        return _rank_mod_p(rows, p)
    return _rank_q(rows)


def _rank_mod_p(rows: Iterable[dict[int, int]], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], p - 2, p)
                pivots[c] = {k: v * inv % p for k, v in row.items()}
                r += 1
                break
            f = row[c]
            for k, v in piv.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return r


def _rank_q(rows: Iterable[dict[int, int]]) -> int:
    pivots: dict[int, dict[int, Fraction]] = {}
    r = 0
    for row in rows:
        row = {c: Fraction(v) for c, v in row.items() if v}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                lead = row[c]
                pivots[c] = {k: v / lead for k, v in row.items()}
                r += 1
                break
            f = row[c]
            for k, v in piv.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return r
