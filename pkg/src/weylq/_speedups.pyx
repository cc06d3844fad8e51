# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernel.

Same algorithm as the pure backend: the last coordinate is solved per
congruence item through precomputed bitmask tables, so the loop runs over
q^(rank-1) prefixes.  Here the masks are flat arrays of machine words
merged with hardware popcount instead of Python big integers.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

from weylq.errors import ValidationError

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline unsigned long long _tail_word(int q, int w) nogil:
    """Word w of the mask with bits 0..q-1 set."""
    cdef int width = q - (w << 6)
    if width >= 64:
        return <unsigned long long> -1
    return ((<unsigned long long> 1) << width) - 1


def complement_count(int q, int rank, items):
    """Number of points of (Z/q)^rank on which, for every (coeffs, offsets)
    item, the inner product avoids every offset mod q."""
    if q < 1:
        raise ValidationError("modulus must be a positive integer")
    if rank < 1:
        raise ValidationError("rank must be a positive integer")

    # the double reduction pins the floored residue whether the operands sit
    # in Python or C integer arithmetic after type inference
    cdef list prepared = []
    for coeffs, offsets in items:
        if len(coeffs) != rank:
            raise ValidationError("item length does not match the rank")
        bad = sorted({(m % q + q) % q for m in offsets})
        if bad:
            prepared.append((coeffs, bad))
    cdef int n = len(prepared)
    if n == 0:
        return q ** rank

    cdef int words = (q + 63) >> 6
    cdef int m = rank - 1  # prefix length; the last coordinate is tabulated
    cdef long *A = <long *> PyMem_Malloc(max(1, n * m) * sizeof(long))
    cdef unsigned long long *tables = <unsigned long long *> PyMem_Malloc(
        (<size_t> n) * q * words * sizeof(unsigned long long))
    cdef unsigned long long *zmask = <unsigned long long *> PyMem_Malloc(
        (<size_t> q) * words * sizeof(unsigned long long))
    cdef unsigned long long *acc = <unsigned long long *> PyMem_Malloc(
        words * sizeof(unsigned long long))
    cdef long *part = <long *> PyMem_Malloc((m + 1) * n * sizeof(long))
    cdef int *z = <int *> PyMem_Malloc(max(1, m) * sizeof(int))
    if A == NULL or tables == NULL or zmask == NULL or acc == NULL or part == NULL or z == NULL:
        PyMem_Free(A); PyMem_Free(tables); PyMem_Free(zmask)
        PyMem_Free(acc); PyMem_Free(part); PyMem_Free(z)
        raise MemoryError()

    cdef int i, j, d, r, w, zz, a_last, src, hits
    cdef size_t base
    cdef long long total = 0
    cdef long long count
    try:
        for j in range(n):
            coeffs, bad = prepared[j]
            for i in range(m):
                A[j * m + i] = (coeffs[i] % q + q) % q
            a_last = (coeffs[rank - 1] % q + q) % q
            if a_last == 0:
                # the last coordinate never moves the residue: a bad prefix
                # forbids every z, a good one forbids none
                for r in range(q):
                    base = ((<size_t> j) * q + r) * words
                    for w in range(words):
                        tables[base + w] = 0
                for b in bad:
                    base = ((<size_t> j) * q + <int> b) * words
                    for w in range(words):
                        tables[base + w] = _tail_word(q, w)
            else:
                # zmask[s] is the set of z with a_last * z == s (mod q)
                for r in range(q):
                    for w in range(words):
                        zmask[(<size_t> r) * words + w] = 0
                for zz in range(q):
                    r = (a_last * zz) % q
                    zmask[(<size_t> r) * words + (zz >> 6)] |= (<unsigned long long> 1) << (zz & 63)
                for r in range(q):
                    base = ((<size_t> j) * q + r) * words
                    for w in range(words):
                        tables[base + w] = 0
                    for b in bad:
                        src = (<int> b - r + q) % q
                        for w in range(words):
                            tables[base + w] |= zmask[(<size_t> src) * words + w]

        for j in range(n):
            part[j] = 0
        if m == 0:
            for w in range(words):
                acc[w] = 0
            for j in range(n):
                base = ((<size_t> j) * q + part[j]) * words
                for w in range(words):
                    acc[w] |= tables[base + w]
            hits = 0
            for w in range(words):
                hits += __builtin_popcountll(acc[w])
            total = q - hits
        else:
            for d in range(m):
                z[d] = -1
            d = 0
            while d >= 0:
                if d == m:
                    for w in range(words):
                        acc[w] = 0
                    for j in range(n):
                        base = ((<size_t> j) * q + part[m * n + j]) * words
                        for w in range(words):
                            acc[w] |= tables[base + w]
                    hits = 0
                    for w in range(words):
                        hits += __builtin_popcountll(acc[w])
                    count = q - hits
                    total += count
                    d -= 1
                    continue
                z[d] += 1
                if z[d] == q:
                    z[d] = -1
                    d -= 1
                    continue
                for j in range(n):
                    part[(d + 1) * n + j] = (part[d * n + j] + A[j * m + d] * z[d]) % q
                d += 1
    finally:
        PyMem_Free(A)
        PyMem_Free(tables)
        PyMem_Free(zmask)
        PyMem_Free(acc)
        PyMem_Free(part)
        PyMem_Free(z)
    return total
