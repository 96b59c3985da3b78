"""Pure-Python hot kernels (reference implementation and fallback).

Terms are ``{mono: coeff}`` dicts where ``mono = (pos, e_1, ..., e_n)``;
ideals use ``pos == 0`` throughout.  ``modulus == 0`` means rational
coefficients (``Fraction``), otherwise ints mod a prime.

A basis entry is ``(lm, lc_inv, terms)``.
"""

from heapq import heapify, heappop, heappush


def divides(a, b):
    if a[0] != b[0]:
        return False
    for i in range(1, len(a)):
        if a[i] > b[i]:
            return False
    return True


def reduce(f, basis, negkey, modulus, full=True):
    """Normal form of ``f`` modulo ``basis`` (leading terms first).

    With ``full=False`` stop at the first irreducible leading term.
    """
    f = dict(f)
    heap = [(negkey(m), m) for m in f]
    heapify(heap)
    rem = {}
    n = 0
    while heap:
        _, m = heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        for lm, lcinv, g in basis:
            if lm[0] != m[0]:
                continue
            ok = True
            for i in range(1, len(m)):
                if lm[i] > m[i]:
                    ok = False
                    break
            if ok:
                break
        else:
            rem[m] = c
            if not full:
                for k, v in f.items():
                    rem[k] = v
                return rem
            continue
        n += 1
        q = c * lcinv
        if modulus:
            q %= modulus
        shift = tuple(a - b for a, b in zip(m, lm))
        for gm, gc in g.items():
            if gm == lm:
                continue
            nm = tuple(a + b for a, b in zip(gm, shift))
            v = f.get(nm)
            if modulus:
                d = (q * gc) % modulus
                if v is None:
                    f[nm] = modulus - d
                    heappush(heap, (negkey(nm), nm))
                else:
                    v = (v - d) % modulus
                    if v:
                        f[nm] = v
                    else:
                        del f[nm]
            else:
                if v is None:
                    f[nm] = -q * gc
                    heappush(heap, (negkey(nm), nm))
                else:
                    v = v - q * gc
                    if v:
                        f[nm] = v
                    else:
                        del f[nm]
    return rem


def count_standard(bounds, leads):
    """Count exponent vectors ``e < bounds`` divisible by none of ``leads``.

    ``leads`` are plain exponent tuples (no position slot).
    """
    n = len(bounds)
    if n == 0:
        return 0 if any(len(l) == 0 for l in leads) else 1
    total = 0
    e = [0] * n
    # odometer over the box, skipping the rest of a row once e[-1] is divisible
    while True:
        blocked = False
        for l in leads:
            for i in range(n):
                if l[i] > e[i]:
                    break
            else:
                blocked = True
                break
        if blocked:
            # every larger last exponent is blocked too
            e[n - 1] = bounds[n - 1]
        else:
            total += 1
            e[n - 1] += 1
        i = n - 1
        while i >= 0 and e[i] >= bounds[i]:
            e[i] = 0
            i -= 1
            if i >= 0:
                e[i] += 1
        if i < 0:
            return total
