# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernel_py``; same signatures and results."""

from heapq import heapify, heappop, heappush


def divides(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    if a[0] != b[0]:
        return False
    for i in range(1, n):
        if <long> a[i] > <long> b[i]:
            return False
    return True


def reduce(dict f, list basis, negkey, modulus, bint full=True):
    cdef dict rem = {}
    cdef list heap
    cdef tuple m, lm, nm, gm, shift, entry
    cdef dict g
    cdef Py_ssize_t i, k, nv
    cdef bint ok
    cdef long long p = modulus
    cdef long long qi, di, vi
    cdef Py_ssize_t j, nb = len(basis)
    cdef long[:] LM
    cdef long[:] ME
    f = dict(f)
    if not f:
        return rem
    nv = len(next(iter(f)))
    LM = _flat([<tuple> entry[0] for entry in basis], nv)
    ME = _zeros(nv)
    heap = [(negkey(m), m) for m in f]
    heapify(heap)
    while heap:
        m = heappop(heap)[1]
        c = f.pop(m, None)
        if c is None:
            continue
        for i in range(nv):
            ME[i] = <long> m[i]
        ok = False
        for j in range(nb):
            if LM[j * nv] != ME[0]:
                continue
            ok = True
            for i in range(1, nv):
                if LM[j * nv + i] > ME[i]:
                    ok = False
                    break
            if ok:
                break
        if ok:
            entry = <tuple> basis[j]
            lm = <tuple> entry[0]
        if not ok:
            rem[m] = c
            if not full:
                for k_, v_ in f.items():
                    rem[k_] = v_
                return rem
            continue
        lcinv = entry[1]
        g = <dict> entry[2]
        shift = tuple([<long> m[i] - <long> lm[i] for i in range(nv)])
        if p:
            qi = (<long long> c * <long long> lcinv) % p
            for gm, gc in g.items():
                if gm == lm:
                    continue
                nm = tuple([<long> gm[i] + <long> shift[i] for i in range(nv)])
                di = (qi * <long long> gc) % p
                v = f.get(nm)
                if v is None:
                    f[nm] = p - di
                    heappush(heap, (negkey(nm), nm))
                else:
                    vi = (<long long> v - di) % p
                    if vi < 0:
                        vi += p
                    if vi:
                        f[nm] = vi
                    else:
                        del f[nm]
        else:
            q = c * lcinv
            for gm, gc in g.items():
                if gm == lm:
                    continue
                nm = tuple([<long> gm[i] + <long> shift[i] for i in range(nv)])
                v = f.get(nm)
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


def count_standard(tuple bounds, list leads):
    cdef Py_ssize_t n = len(bounds), i, j, nl = len(leads)
    cdef long total = 0
    cdef bint blocked, div
    if n == 0:
        return 0 if any(len(l) == 0 for l in leads) else 1
    cdef long[:] e = _zeros(n)
    cdef long[:] b = _fromtuple(bounds)
    cdef long[:] L = _flat(leads, n)
    while True:
        blocked = False
        for j in range(nl):
            div = True
            for i in range(n):
                if L[j * n + i] > e[i]:
                    div = False
                    break
            if div:
                blocked = True
                break
        if blocked:
            e[n - 1] = b[n - 1]
        else:
            total += 1
            e[n - 1] += 1
        i = n - 1
        while i >= 0 and e[i] >= b[i]:
            e[i] = 0
            i -= 1
            if i >= 0:
                e[i] += 1
        if i < 0:
            return total


def _zeros(Py_ssize_t n):
    import array
    return array.array("l", [0] * n)


def _fromtuple(tuple t):
    import array
    return array.array("l", t)


def _flat(list leads, Py_ssize_t n):
    import array
    out = array.array("l")
    for l in leads:
        out.extend(l)
    if not leads:
        out.append(0)
    return out
