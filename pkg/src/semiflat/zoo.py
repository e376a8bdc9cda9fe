"""Exhaustive enumeration of small semimodules up to isomorphism.

Commutative monoids of order ``n`` are generated by backtracking over the
upper triangle of the addition table; a semimodule structure on a monoid is
a semiring homomorphism ``S -> End(M)`` (reversed multiplication for right
modules), found by backtracking over scalar images.  Isomorphism classes are
represented by the lexicographically least relabelling that keeps 0 fixed.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .semimodule import (
    LEFT,
    FiniteCommutativeMonoid,
    FiniteSemimodule,
    enumerate_morphisms,
)
from .semiring import FiniteSemiring


def _assoc_ok(table, n) -> bool:
    for a in range(1, n):
        for b in range(1, n):
            ab = table[a][b]
            if ab is None:
                continue
            for c in range(1, n):
                bc = table[b][c]
                if bc is None:
                    continue
                l, r = table[ab][c], table[a][bc]
                if l is not None and r is not None and l != r:
                    return False
    return True


def _canonical_tables(add, action, n):
    best = None
    for perm in itertools.permutations(range(1, n)):
        p = (0,) + perm  # old -> new
        inv = [0] * n
        for old, new in enumerate(p):
            inv[new] = old
        a = tuple(tuple(p[add[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
        s = tuple(tuple(p[row[inv[i]]] for i in range(n)) for row in action) if action is not None else ()
        key = (a, s)
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def commutative_monoids(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Addition tables (identity 0) of all commutative monoids of order ``n`` up to isomorphism."""
    if n == 1:
        return (((0,),),)
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        table[0][i] = table[i][0] = i
    found = set()

    def rec(k):
        if k == len(cells):
            found.add(_canonical_tables(table, None, n)[0])
            return
        i, j = cells[k]
        for v in range(n):
            table[i][j] = table[j][i] = v
            if _assoc_ok(table, n):
                rec(k + 1)
        table[i][j] = table[j][i] = None

    rec(0)
    return tuple(sorted(found))


def _homs_into_end(S: FiniteSemiring, side: str, add, ends):
    """All assignments ``s -> endomorphism`` that form a semiring (anti)homomorphism."""
    n = len(add)
    zero = tuple([0] * n)
    ident = tuple(range(n))
    order = list(range(2, S.size))
    assigned = {0: zero, 1: ident}

    def compose(f, g):  # f o g
        return tuple(f[g[x]] for x in range(n))

    def plus(f, g):
        return tuple(add[f[x]][g[x]] for x in range(n))

    def consistent():
        for s, fs in assigned.items():
            for t, ft in assigned.items():
                u = S.add[s][t]
                if u in assigned and assigned[u] != plus(fs, ft):
                    return False
                u = S.mul[s][t]
                if u in assigned:
                    # left: rho(st) = rho(s) o rho(t); right: m(st) = (ms)t
                    want = compose(fs, ft) if side == LEFT else compose(ft, fs)
                    if assigned[u] != want:
                        return False
        return True

    if not consistent():
        return

    def rec(k):
        if k == len(order):
            yield dict(assigned)
            return
        s = order[k]
        for e in ends:
            assigned[s] = e
            if consistent():
                yield from rec(k + 1)
        del assigned[s]

    yield from rec(0)


@lru_cache(maxsize=None)
def _semimodule_tables(S: FiniteSemiring, n: int, side: str):
    out = set()
    for add in commutative_monoids(n):
        mon = FiniteCommutativeMonoid(add=add)
        ends = sorted({f.map for f in enumerate_morphisms(mon, mon)})
        for rho in _homs_into_end(S, side, add, ends):
            action = tuple(rho[s] for s in S.elements)
            out.add(_canonical_tables(add, action, n))
    return tuple(sorted(out))


def enumerate_semimodules(S: FiniteSemiring, size: int, side: str = LEFT) -> list[FiniteSemimodule]:
    """Every ``side`` ``S``-semimodule with exactly ``size`` elements, up to isomorphism."""
    out = []
    for k, (add, action) in enumerate(_semimodule_tables(S, size, side)):
        out.append(FiniteSemimodule(add=add, action=action, base=S, side=side, name=f"{S.name}:{side[0]}{size}.{k}"))
    return out


def semimodules_up_to(S: FiniteSemiring, bound: int, side: str = LEFT, min_size: int = 1) -> list[FiniteSemimodule]:
    out = []
    for n in range(min_size, bound + 1):
        out.extend(enumerate_semimodules(S, n, side))
    return out


def canonical_key(M):
    """Isomorphism-invariant key (tables of the least relabelling plus base and side)."""
    action = M.action if M.has_action else None
    tables = _canonical_tables(M.add, action, M.size)
    if M.has_action:
        return (M.base.name, M.side, tables)
    return ("monoid", tables)
