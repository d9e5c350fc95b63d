"""Subfunctions, separable sets, distributive sets and s-systems.

A simple subfunction fixes one currently-essential variable to a constant;
the subfunction preorder is the reflexive-transitive closure of that step.
Because restrictions keep the arity, subfunctions are deduplicated by plain
table equality.  A non-empty variable set M is separable in f when it is
exactly the essential set of some subfunction.

A distributive set of an inseparable M is a minimal set J, disjoint from M,
such that every way of fixing all of J kills the essentiality of some member
of M.  An s-system of a family is a transversal in which every element is
the sole representative of some member set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from . import bitops
from .kfun import KFunction, VarSet


# ---------------------------------------------------------------------------
# subfunction closure
# ---------------------------------------------------------------------------

def _closure_generic(f: KFunction) -> dict[bytes, frozenset[int]]:
    seen = {f.values: f.essential_set()}
    stack = [f]
    while stack:
        cur = stack.pop()
        for i in seen[cur.values]:
            for c in range(cur.k):
                sub = cur.cofactor(i, c)
                if sub.values not in seen:
                    seen[sub.values] = sub.essential_set()
                    stack.append(sub)
    return seen


def _closure(f: KFunction) -> dict[bytes, frozenset[int]]:
    """Map table -> essential set over Sub(f) (f included)."""
    if f.k == 2:
        words = bitops.sub_closure_word(f.word, f.n)
        return {
            bitops.values_from_word(w, f.n):
                frozenset(i + 1 for i in range(f.n) if m & (1 << i))
            for w, m in words.items()
        }
    return _closure_generic(f)


def subfunctions(f: KFunction) -> set[KFunction]:
    """Sub(f): every table reachable by fixing essential variables, plus f."""
    return {KFunction(f.k, f.n, vals) for vals in _closure(f)}


def sub_vector(f: KFunction) -> tuple[int, ...]:
    """(sub_0, ..., sub_n): subfunction counts grouped by essential arity."""
    prof = [0] * (f.n + 1)
    for ess in _closure(f).values():
        prof[len(ess)] += 1
    return tuple(prof)


def separable_sets(f: KFunction) -> set[VarSet]:
    """Sep(f) = { Ess(g) : g in Sub(f), Ess(g) non-empty }."""
    return {ess for ess in _closure(f).values() if ess}


def sep_vector(f: KFunction) -> tuple[int, ...]:
    """(sep_1, ..., sep_n): separable-set counts by cardinality."""
    prof = [0] * f.n
    for m in separable_sets(f):
        prof[len(m) - 1] += 1
    return tuple(prof)


def is_separable(f: KFunction, m: Iterable[int]) -> bool:
    """Direct oracle: scan every assignment of Ess(f) \\ M for Ess = M.

    This deliberately does not reuse the subfunction closure, so it can
    cross-check membership in separable_sets(f).
    """
    mset = frozenset(m)
    ess = f.essential_set()
    if not mset:
        raise ValueError("the empty set is not eligible for separability")
    if not mset <= ess:
        raise ValueError(f"{sorted(mset)} is not a subset of Ess(f) = {sorted(ess)}")
    others = sorted(ess - mset)
    for consts in itertools.product(range(f.k), repeat=len(others)):
        g = f.restrict(dict(zip(others, consts)))
        if g.essential_set() == mset:
            return True
    return False


# ---------------------------------------------------------------------------
# distributive sets and s-systems
# ---------------------------------------------------------------------------

def _blocks(f: KFunction, mset: frozenset[int], j: tuple[int, ...]) -> bool:
    # J blocks M iff no assignment of J leaves all of M essential.
    for consts in itertools.product(range(f.k), repeat=len(j)):
        g = f.restrict(dict(zip(j, consts)))
        if mset <= g.essential_set():
            return False
    return True


def distributive_sets(m: Iterable[int], f: KFunction,
                      minimal_only: bool = True) -> frozenset[VarSet]:
    """Dis(M, f): the blocking sets J of M in f, minimal under inclusion.

    `minimal_only=False` returns the full (upward-closed) blocking family
    instead of just its minimal elements.  Empty iff M is separable.
    """
    mset = frozenset(m)
    ess = f.essential_set()
    if not mset:
        raise ValueError("M must be non-empty")
    if not mset <= ess:
        raise ValueError(f"{sorted(mset)} is not a subset of Ess(f) = {sorted(ess)}")
    pool = sorted(ess - mset)
    found: list[frozenset[int]] = []
    for size in range(1, len(pool) + 1):
        for j in itertools.combinations(pool, size):
            jset = frozenset(j)
            if minimal_only and any(base <= jset for base in found):
                continue
            if any(base <= jset for base in found):
                # blocking is upward monotone: supersets need no re-check
                found.append(jset)
                continue
            if _blocks(f, mset, j):
                found.append(jset)
    return frozenset(found)


def s_systems(family: Iterable[Iterable[int]]) -> frozenset[VarSet]:
    """Sys(F): subsets hitting every member, each element a sole hit somewhere.

    Exhaustive subset enumeration; families arising from distributive sets
    are tiny, and this doubles as the reference oracle.
    """
    fam = {frozenset(p) for p in family}
    if any(not p for p in fam):
        raise ValueError("family members must be non-empty")
    universe = sorted(set().union(*fam)) if fam else []
    out = set()
    for size in range(len(universe) + 1):
        for beta in itertools.combinations(universe, size):
            bset = frozenset(beta)
            if any(not (bset & p) for p in fam):
                continue
            if all(any(bset & p == {x} for p in fam) for x in bset):
                out.add(bset)
    return frozenset(out)


def minimal_transversals(family: Iterable[Iterable[int]]) -> frozenset[VarSet]:
    """Hitting sets none of whose proper subsets still hit everything.

    Independent of s_systems; the two agree on every family (the
    characterization of s-systems as minimal transversals).
    """
    fam = {frozenset(p) for p in family}
    if any(not p for p in fam):
        raise ValueError("family members must be non-empty")
    universe = sorted(set().union(*fam)) if fam else []
    hitting = []
    for size in range(len(universe) + 1):
        for beta in itertools.combinations(universe, size):
            bset = frozenset(beta)
            if all(bset & p for p in fam):
                hitting.append(bset)
    return frozenset(b for b in hitting
                     if not any(h < b for h in hitting))


# ---------------------------------------------------------------------------
# subfunction chains
# ---------------------------------------------------------------------------

def subfunction_chain(f: KFunction, g: KFunction) -> list[KFunction]:
    """A chain g = h_0 < h_1 < ... < h_t = f with ess rising by 1 per link.

    Each link fixes a single essential variable of the larger function.
    Existence for any g in Sub(f) is a theorem; the search backtracks over
    single-variable restrictions.
    """
    if (g.k, g.n) != (f.k, f.n):
        raise ValueError("g must live in the same space as f")
    if g.values not in _closure(f):
        raise ValueError("g is not a subfunction of f")

    closure_cache: dict[bytes, dict[bytes, frozenset[int]]] = {}

    def closure_of(h: KFunction) -> dict[bytes, frozenset[int]]:
        if h.values not in closure_cache:
            closure_cache[h.values] = _closure(h)
        return closure_cache[h.values]

    target = g.values
    dead: set[bytes] = set()

    def descend(h: KFunction) -> list[KFunction] | None:
        if h.values == target:
            return [h]
        want = len(closure_of(h)[h.values]) - 1
        if want < len(_closure(f)[target]):
            return None
        for i in sorted(h.essential_set()):
            for c in range(h.k):
                nxt = h.cofactor(i, c)
                if nxt.values in dead:
                    continue
                sub = closure_of(nxt)
                if len(sub[nxt.values]) != want or target not in sub:
                    continue
                tail = descend(nxt)
                if tail is not None:
                    return tail + [h]
                dead.add(nxt.values)
        return None

    chain = descend(f)
    if chain is None:  # unreachable if the chain theorem holds
        raise RuntimeError("no essential-increment chain found")
    return chain


# ---------------------------------------------------------------------------
# complexity profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexityProfile:
    """The three per-function complexity measures in one record."""

    imp: int
    sub: tuple[int, ...]
    sep: tuple[int, ...]

    @property
    def sub_total(self) -> int:
        return sum(self.sub)

    @property
    def sep_total(self) -> int:
        return sum(self.sep)

    def to_json_dict(self, f: KFunction) -> dict:
        return {"k": f.k, "n": f.n, "table": f.table_text(),
                "imp": self.imp, "sub": list(self.sub), "sep": list(self.sep)}

    @staticmethod
    def csv_header(n: int) -> list[str]:
        return (["k", "n", "table", "imp"]
                + [f"sub_{m}" for m in range(n + 1)]
                + [f"sep_{m}" for m in range(1, n + 1)])

    def csv_row(self, f: KFunction) -> list:
        return [f.k, f.n, f.table_text(), self.imp, *self.sub, *self.sep]
