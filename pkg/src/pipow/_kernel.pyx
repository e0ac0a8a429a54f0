# cython: language_level=3
# cython: cdivision=True
"""Compiled fixed-point sweep kernel (hot path).

Contract mirrors `pipow._kernel_py`; rows must be bit-identical. Two
paths: a 128-bit integer loop for depth-1 sweeps at scales up to 37
digits (mantissas below 2**124, squares below 2**64), and a general loop
on Python integers that still compiles away the interpreter overhead.
"""

BACKEND_NAME = "compiled"

ctypedef unsigned long long u64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

# Depth-1 fast-path limits: 10**scale and the accumulated sum must stay
# below 2**124 (the sum is under 1.7 * 10**scale), and ell**2 must fit u64.
DEF MAX_U128_SCALE = 37
DEF MAX_U64_SQUARE_INDEX = 4294967295


cdef object _u128_to_pyint(u128 value):
    cdef u64 hi = <u64> (value >> 64)
    cdef u64 lo = <u64> value
    if hi == 0:
        return lo
    return ((<object> hi) << 64) | lo


cdef u128 _u128_from_pyint(object value):
    cdef u64 hi = <u64> (value >> 64)
    cdef u64 lo = <u64> (value & 0xFFFFFFFFFFFFFFFF)
    return ((<u128> hi) << 64) | (<u128> lo)


cdef list _dp_row_depth1_u128(long long truncation, object one_obj):
    cdef u128 one = _u128_from_pyint(one_obj)
    cdef u128 total = 0
    cdef u128 q, r, twice
    cdef u64 sq
    cdef long long ell
    for ell in range(1, truncation + 1):
        sq = (<u64> ell) * (<u64> ell)
        q = one // (<u128> sq)
        r = one - q * (<u128> sq)
        twice = r << 1
        if twice > (<u128> sq) or (twice == (<u128> sq) and (q & 1)):
            q += 1
        total += q
    return [_u128_to_pyint(one), _u128_to_pyint(total)]


cdef list _dp_row_object(int depth, long long truncation, object one):
    cdef list row = [one] + [0] * depth
    cdef object term, prod, q, r
    cdef long long ell
    cdef u64 sq
    cdef int k, top
    for ell in range(1, truncation + 1):
        sq = (<u64> ell) * (<u64> ell)
        q, r = divmod(one, sq)
        if 2 * r > sq or (2 * r == sq and q & 1):
            q = q + 1
        term = q
        top = depth if depth < ell else <int> ell
        for k in range(top, 1, -1):
            prod = term * row[k - 1]
            q, r = divmod(prod, one)
            if 2 * r > one or (2 * r == one and q & 1):
                q = q + 1
            row[k] = row[k] + q
        if depth >= 1:
            row[1] = row[1] + term
    return row


def dp_row_scaled(depth, truncation, scale):
    """Mantissa row [S_0 .. S_depth] at scale 10**-scale after one sweep.

    See pipow._kernel_py.dp_row_scaled for the full contract; this entry
    point only dispatches between the 128-bit and object-integer loops.
    """
    if truncation > MAX_U64_SQUARE_INDEX:
        # Squares would overflow the unsigned 64-bit index path; callers
        # route such requests to the pure-Python kernel instead.
        raise OverflowError("truncation too large for the compiled kernel")
    one = 10 ** scale
    if depth == 1 and scale <= MAX_U128_SCALE:
        return _dp_row_depth1_u128(truncation, one)
    return _dp_row_object(depth, truncation, one)
