# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""
Compiled multiplicity search.  Same exploration order as ``_feasible_py`` so
both return the same first solution.  Instances whose numbers or memo key
space do not fit in 64 bits return ``NotImplemented`` and the caller falls
back to Python.
"""
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector
from libc.stdint cimport int64_t, uint64_t

from .errors import ResourceLimitError
from ._feasible_py import suffix_bounds

cdef int64_t MAG = 1 << 60
cdef object KEYSPACE = 1 << 63


cdef inline bint t_range(const int64_t* v, int64_t size, const int64_t* R,
                         const int64_t* lo, const int64_t* hi, int dim,
                         int64_t* tlo_out, int64_t* thi_out) noexcept nogil:
    cdef int64_t tlo = 0, thi = size, a, b
    cdef int m
    for m in range(dim):
        if v[m] == 0:
            if R[m] < lo[m] or R[m] > hi[m]:
                tlo_out[0] = 1
                thi_out[0] = 0
                return False
        elif v[m] > 0:
            a = R[m] - hi[m]
            b = R[m] - lo[m]
            if a > tlo: tlo = a
            if b < thi: thi = b
        else:
            a = lo[m] - R[m]
            b = hi[m] - R[m]
            if a > tlo: tlo = a
            if b < thi: thi = b
    tlo_out[0] = tlo
    thi_out[0] = thi
    return tlo <= thi


cdef inline uint64_t encode(int g, const int64_t* R, const int64_t* base,
                            const uint64_t* stride, int dim, uint64_t G) noexcept nogil:
    cdef uint64_t key = 0
    cdef int m
    for m in range(dim):
        key += <uint64_t>(R[m] - base[m]) * stride[m]
    return key * G + <uint64_t>g


def search(vectors, sizes, target, max_states=10**7):
    cdef int G = len(vectors)
    cdef int dim = len(target)
    cdef int g, m
    cdef uint64_t acc = 1
    cdef vector[int64_t] V, S, LO, HI, base, R, T, TH
    cdef vector[uint64_t] stride
    cdef unordered_set[uint64_t] failed
    cdef int64_t states = 1, cap = max_states
    cdef int depth = 0, found = 0, over = 0
    cdef int64_t t, tlo, thi
    cdef uint64_t key, UG
    if G == 0:
        return [] if not any(target) else None
    lo_py, hi_py = suffix_bounds(vectors, sizes, dim)
    for m in range(dim):
        if not lo_py[0][m] <= target[m] <= hi_py[0][m]:
            return None

    # fit checks, in Python integers
    if any(abs(x) >= MAG for x in lo_py[0]) or any(abs(x) >= MAG for x in hi_py[0]):
        return NotImplemented
    if any(s >= MAG for s in sizes) or any(abs(x) >= MAG for x in target):
        return NotImplemented
    if any(x not in (-1, 0, 1) for v in vectors for x in v):
        return NotImplemented
    space = G
    for m in range(dim):
        space *= hi_py[0][m] - lo_py[0][m] + 1
    if space >= KEYSPACE:
        return NotImplemented

    V.resize(G * dim)
    S.resize(G)
    LO.resize((G + 1) * dim)
    HI.resize((G + 1) * dim)
    base.resize(dim)
    stride.resize(dim)
    for g in range(G):
        S[g] = sizes[g]
        for m in range(dim):
            V[g * dim + m] = vectors[g][m]
    for g in range(G + 1):
        for m in range(dim):
            LO[g * dim + m] = lo_py[g][m]
            HI[g * dim + m] = hi_py[g][m]
    for m in range(dim):
        base[m] = lo_py[0][m]
        stride[m] = acc
        acc *= <uint64_t>(hi_py[0][m] - lo_py[0][m] + 1)

    R.resize((G + 1) * dim)
    T.resize(G)
    TH.resize(G)
    UG = <uint64_t>G

    for m in range(dim):
        R[m] = target[m]

    with nogil:
        t_range(&V[0], S[0], &R[0], &LO[dim], &HI[dim], dim, &T[0], &TH[0])
        while depth >= 0:
            t = T[depth]
            if t > TH[depth]:
                failed.insert(encode(depth, &R[depth * dim], &base[0], &stride[0], dim, UG))
                depth -= 1
                if depth >= 0:
                    T[depth] += 1
                continue
            for m in range(dim):
                R[(depth + 1) * dim + m] = R[depth * dim + m] - t * V[depth * dim + m]
            if depth + 1 == G:
                found = 1
                break
            key = encode(depth + 1, &R[(depth + 1) * dim], &base[0], &stride[0], dim, UG)
            if failed.count(key):
                T[depth] += 1
                continue
            states += 1
            if states > cap:
                over = 1
                break
            depth += 1
            t_range(&V[depth * dim], S[depth], &R[depth * dim],
                    &LO[(depth + 1) * dim], &HI[(depth + 1) * dim], dim,
                    &tlo, &thi)
            T[depth] = tlo
            TH[depth] = thi

    if over:
        raise ResourceLimitError(f"feasibility search exceeded {max_states} states")
    if found:
        return [T[g] for g in range(G)]
    return None
