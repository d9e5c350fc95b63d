"""Machine-word kernels for binary truth tables.

A binary (k=2) truth table of arity n is packed into a Python int: bit i of
the word is the function value at table index i, index = sum a_j * 2^(j-1)
(variable 1 is the least significant index bit).  All kernels below work on
plain ints, so they are usable both on single functions and inside the tight
loops of exhaustive space scans.
"""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def low_mask(n: int, i: int) -> int:
    """Bitmask of the table indices whose i-th coordinate (1-based) is 0."""
    size = 1 << n
    s = 1 << (i - 1)
    m = 0
    for idx in range(size):
        if not idx & s:
            m |= 1 << idx
    return m


def word_from_values(values) -> int:
    w = 0
    for i, v in enumerate(values):
        if v:
            w |= 1 << i
    return w


def values_from_word(w: int, n: int) -> bytes:
    return bytes((w >> i) & 1 for i in range(1 << n))


def is_essential_word(w: int, n: int, i: int) -> bool:
    s = 1 << (i - 1)
    return bool((w ^ (w >> s)) & low_mask(n, i))


def essential_mask(w: int, n: int) -> int:
    """Bitmask over variables: bit (i-1) set iff variable i is essential."""
    m = 0
    for i in range(1, n + 1):
        s = 1 << (i - 1)
        if (w ^ (w >> s)) & low_mask(n, i):
            m |= s
    return m


def cofactor_word(w: int, n: int, i: int, c: int) -> int:
    """Restriction x_i = c, keeping arity n (the fixed slot goes inessential)."""
    s = 1 << (i - 1)
    lo = low_mask(n, i)
    if c == 0:
        half = w & lo
        return half | (half << s)
    half = w & (lo << s)
    return half | (half >> s)


@lru_cache(maxsize=None)
def _var_masks(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((1 << i, low_mask(n, i + 1)) for i in range(n))


def sub_closure_word(w: int, n: int) -> dict[int, int]:
    """All subfunction tables of w with their essential-variable masks.

    Closure of repeatedly fixing a currently-essential variable to 0/1;
    includes w itself.  Keys are table words, values essential masks
    (bit i-1 set iff variable i essential).  This is the hot kernel of the
    space scans, hence the inlined cofactor arithmetic.
    """
    masks = _var_masks(n)
    seen: dict[int, int] = {}
    stack = [w]
    while stack:
        cur = stack.pop()
        if cur in seen:
            continue
        ess = 0
        for s, lo in masks:
            if (cur ^ (cur >> s)) & lo:
                ess |= s
                h = cur & lo
                sub = h | (h << s)
                if sub not in seen:
                    stack.append(sub)
                h = (cur >> s) & lo
                sub = h | (h << s)
                if sub not in seen:
                    stack.append(sub)
        seen[cur] = ess
    return seen


def sep_profile_word(w: int, n: int) -> tuple[int, ...]:
    """(sep_1, ..., sep_n): separable-set counts by cardinality."""
    masks = set(sub_closure_word(w, n).values())
    masks.discard(0)
    prof = [0] * n
    for m in masks:
        prof[bin(m).count("1") - 1] += 1
    return tuple(prof)

