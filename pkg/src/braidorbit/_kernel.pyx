# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel for matrix groups over cyclotomic rings.

Same blob layout and API as `_kernel_py`: little-endian int64 blobs
[den, coefficients...], phi coefficients per entry, `red` the flattened
reduction table for x^(phi+t).  Arithmetic runs in C int64; a guard
raises OverflowError long before wraparound can happen so callers can
fall back to the pure-Python twin.
"""

from cpython.bytes cimport PyBytes_AsString, PyBytes_FromStringAndSize, PyBytes_Size
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

BACKEND = "cython"

GUARD = 1 << 61


class BoundExceeded(RuntimeError):
    pass


cdef long long c_gcd(long long a, long long b) noexcept nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


INPUT_GUARD = 1 << 25


cdef const long long* blob_ptr(bytes blob) except NULL:
    cdef const long long* ptr = <const long long*> PyBytes_AsString(blob)
    cdef Py_ssize_t n = PyBytes_Size(blob) // 8
    cdef Py_ssize_t i
    cdef long long lim = INPUT_GUARD
    for i in range(n):
        if ptr[i] > lim or ptr[i] < -lim:
            raise OverflowError(
                "kernel input exceeds the compiled-range guard; "
                "use the pure-Python backend for big coefficients"
            )
    return ptr


cdef bytes pack_normalized(long long den, long long* nums, Py_ssize_t count):
    cdef long long g = den if den > 0 else -den
    cdef Py_ssize_t i
    cdef long long x
    if den < 0:
        for i in range(count):
            nums[i] = -nums[i]
        den = -den
    for i in range(count):
        if g == 1:
            break
        g = c_gcd(g, nums[i])
    if g > 1:
        den //= g
        for i in range(count):
            nums[i] //= g
    for i in range(count):
        x = nums[i]
        if x > GUARD or x < -GUARD:
            raise OverflowError("kernel value exceeded the int64 guard")
    if den > GUARD:
        raise OverflowError("kernel denominator exceeded the int64 guard")
    cdef bytes out = PyBytes_FromStringAndSize(NULL, 8 * (count + 1))
    cdef long long* optr = <long long*> PyBytes_AsString(out)
    optr[0] = den
    memcpy(optr + 1, nums, 8 * count)
    return out


cdef void vmul(const long long* u, const long long* v, int phi,
               const long long* red, long long* out, long long* conv) noexcept:
    cdef int i, j, t
    cdef long long x, c
    memset(conv, 0, 8 * (2 * phi - 1))
    for i in range(phi):
        x = u[i]
        if x != 0:
            for j in range(phi):
                if v[j] != 0:
                    conv[i + j] += x * v[j]
    for j in range(phi):
        out[j] = conv[j]
    for t in range(phi - 1):
        c = conv[phi + t]
        if c != 0:
            for j in range(phi):
                out[j] += c * red[t * phi + j]


cdef long long* red_array(object red_obj, int phi) except NULL:
    cdef Py_ssize_t n = len(red_obj)
    cdef long long* arr = <long long*> malloc(8 * (n if n else 1))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        arr[i] = red_obj[i]
    return arr


def mat_mul(bytes a, bytes b, int d, int phi, red):
    cdef const long long* av = blob_ptr(a)
    cdef const long long* bv = blob_ptr(b)
    cdef long long* red_c = red_array(red, phi)
    cdef long long* out = <long long*> malloc(8 * phi * d * d)
    cdef long long* acc = <long long*> malloc(8 * phi)
    cdef long long* prod = <long long*> malloc(8 * phi)
    cdef long long* conv = <long long*> malloc(8 * (2 * phi - 1))
    cdef int i, j, k, t
    cdef bint nz
    try:
        for i in range(d):
            for j in range(d):
                memset(acc, 0, 8 * phi)
                for k in range(d):
                    nz = False
                    for t in range(phi):
                        if av[1 + phi * (i * d + k) + t] != 0:
                            nz = True
                            break
                    if not nz:
                        continue
                    vmul(av + 1 + phi * (i * d + k), bv + 1 + phi * (k * d + j),
                         phi, red_c, prod, conv)
                    for t in range(phi):
                        acc[t] += prod[t]
                for t in range(phi):
                    out[phi * (i * d + j) + t] = acc[t]
        return pack_normalized(av[0] * bv[0], out, phi * d * d)
    finally:
        free(red_c)
        free(out)
        free(acc)
        free(prod)
        free(conv)


def mat_vec(bytes m, bytes v, int d, int phi, red):
    cdef const long long* mv = blob_ptr(m)
    cdef const long long* vv = blob_ptr(v)
    cdef long long* red_c = red_array(red, phi)
    cdef long long* out = <long long*> malloc(8 * phi * d)
    cdef long long* prod = <long long*> malloc(8 * phi)
    cdef long long* conv = <long long*> malloc(8 * (2 * phi - 1))
    cdef int i, k, t
    cdef bint nz
    try:
        for i in range(d):
            memset(out + phi * i, 0, 8 * phi)
            for k in range(d):
                nz = False
                for t in range(phi):
                    if mv[1 + phi * (i * d + k) + t] != 0:
                        nz = True
                        break
                if not nz:
                    continue
                vmul(mv + 1 + phi * (i * d + k), vv + 1 + phi * k, phi, red_c,
                     prod, conv)
                for t in range(phi):
                    out[phi * i + t] += prod[t]
        return pack_normalized(mv[0] * vv[0], out, phi * d)
    finally:
        free(red_c)
        free(out)
        free(prod)
        free(conv)


def identity_blob(int d, int phi=2):
    cdef long long* out = <long long*> malloc(8 * phi * d * d)
    cdef int i
    try:
        memset(out, 0, 8 * phi * d * d)
        for i in range(d):
            out[phi * (i * d + i)] = 1
        return pack_normalized(1, out, phi * d * d)
    finally:
        free(out)


def closure(gens, int d, int phi, red, Py_ssize_t bound):
    ident = identity_blob(d, phi)
    seen = {ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                prod = mat_mul(g, m, d, phi, red)
                if prod not in seen:
                    if len(seen) >= bound:
                        raise BoundExceeded(f"closure exceeded bound {bound}")
                    seen.add(prod)
                    order.append(prod)
                    new.append(prod)
        frontier = new
    return order


def stab_count_line(elements, bytes v, int d, int phi, red):
    cdef const long long* vv = blob_ptr(v)
    cdef long long* red_c = red_array(red, phi)
    cdef long long* w = <long long*> malloc(8 * phi * d)
    cdef long long* prod = <long long*> malloc(8 * phi)
    cdef long long* conv = <long long*> malloc(8 * (2 * phi - 1))
    cdef long long* left = <long long*> malloc(8 * phi)
    cdef long long* right = <long long*> malloc(8 * phi)
    cdef int pivot = -1
    cdef int i, k, t
    cdef bint nz, ok
    cdef const long long* mv
    cdef long long count = 0
    try:
        for k in range(d):
            for t in range(phi):
                if vv[1 + phi * k + t] != 0:
                    pivot = k
                    break
            if pivot >= 0:
                break
        if pivot < 0:
            raise ValueError("zero vector has no stabilizer line")
        for m in elements:
            mv = blob_ptr(m)
            for i in range(d):
                memset(w + phi * i, 0, 8 * phi)
                for k in range(d):
                    nz = False
                    for t in range(phi):
                        if mv[1 + phi * (i * d + k) + t] != 0:
                            nz = True
                            break
                    if not nz:
                        continue
                    vmul(mv + 1 + phi * (i * d + k), vv + 1 + phi * k, phi,
                         red_c, prod, conv)
                    for t in range(phi):
                        w[phi * i + t] += prod[t]
            ok = True
            for i in range(d):
                if i == pivot:
                    continue
                vmul(w + phi * i, vv + 1 + phi * pivot, phi, red_c, left, conv)
                vmul(w + phi * pivot, vv + 1 + phi * i, phi, red_c, right, conv)
                for t in range(phi):
                    if left[t] != right[t]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                count += 1
        return count
    finally:
        free(red_c)
        free(w)
        free(prod)
        free(conv)
        free(left)
        free(right)


def stab_count_point(elements, bytes v, int d, int phi, red):
    cdef long long count = 0
    for m in elements:
        if mat_vec(m, v, d, phi, red) == v:
            count += 1
    return count


def _require_quadratic(int phi):
    if phi != 2:
        raise ValueError("projective kernel operations need a quadratic ring")


def line_canon(bytes v, int d, int phi, red):
    _require_quadratic(phi)
    cdef long long p = red[0]
    cdef long long q = red[1]
    cdef const long long* vv = blob_ptr(v)
    cdef long long* out = <long long*> malloc(8 * 2 * d)
    cdef int pivot = -1
    cdef int k
    cdef long long a, b, ca, cb, n, x0, x1
    try:
        for k in range(d):
            if vv[1 + 2 * k] != 0 or vv[2 + 2 * k] != 0:
                pivot = k
                break
        if pivot < 0:
            memset(out, 0, 8 * 2 * d)
            return pack_normalized(1, out, 2 * d)
        a = vv[1 + 2 * pivot]
        b = vv[2 + 2 * pivot]
        ca = a + b * q
        cb = -b
        n = a * a + a * b * q - b * b * p
        for k in range(d):
            x0 = vv[1 + 2 * k]
            x1 = vv[2 + 2 * k]
            out[2 * k] = x0 * ca + x1 * cb * p
            out[2 * k + 1] = x0 * cb + x1 * ca + x1 * cb * q
        return pack_normalized(n, out, 2 * d)
    finally:
        free(out)


def line_orbit(gens, bytes v, int d, int phi, red, Py_ssize_t bound):
    _require_quadratic(phi)
    start = line_canon(v, d, phi, red)
    seen = {start}
    order = [start]
    frontier = [start]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                img = line_canon(mat_vec(g, w, d, phi, red), d, phi, red)
                if img not in seen:
                    if len(seen) >= bound:
                        raise BoundExceeded(f"line orbit exceeded bound {bound}")
                    seen.add(img)
                    order.append(img)
                    new.append(img)
        frontier = new
    return order


# The 2-row RREF and the reflection scan share little hot-loop structure
# with the rest; delegate to the pure implementations for them.
from . import _kernel_py as _py

plane_canon = _py.plane_canon


def plane_orbit(gens, plane, int d, int phi, red, Py_ssize_t bound):
    _require_quadratic(phi)
    start = _py.plane_canon(plane, d, phi, red)
    seen = {start}
    order = [start]
    frontier = [start]
    cdef Py_ssize_t half
    while frontier:
        new = []
        for w in frontier:
            den_nums = _py.unpack_values(w)
            den = den_nums[0]
            nums = den_nums[1]
            half = len(nums) // 2
            r0 = _py.pack_values(den, nums[:half])
            r1 = _py.pack_values(den, nums[half:])
            for g in gens:
                i0 = mat_vec(g, r0, d, phi, red)
                i1 = mat_vec(g, r1, d, phi, red)
                v0 = _py.unpack_values(i0)
                v1 = _py.unpack_values(i1)
                flat = [x * v1[0] for x in v0[1]] + [x * v0[0] for x in v1[1]]
                img = _py.plane_canon(
                    _py.pack_values(v0[0] * v1[0], flat), d, phi, red
                )
                if img not in seen:
                    if len(seen) >= bound:
                        raise BoundExceeded(f"plane orbit exceeded bound {bound}")
                    seen.add(img)
                    order.append(img)
                    new.append(img)
        frontier = new
    return order


def reflection_indices(elements, int d, int phi, red):
    """Indices of elements m with rank(m - I) == 1 (fraction-free Gauss)."""
    cdef long long* red_c = red_array(red, phi)
    cdef long long* rows = <long long*> malloc(8 * phi * d * d)
    cdef long long* newrow = <long long*> malloc(8 * phi * d)
    cdef long long* u = <long long*> malloc(8 * phi)
    cdef long long* vb = <long long*> malloc(8 * phi)
    cdef long long* conv = <long long*> malloc(8 * (2 * phi - 1))
    cdef long long* pv = <long long*> malloc(8 * phi)
    cdef long long* fv = <long long*> malloc(8 * phi)
    cdef const long long* mv
    cdef int i, j, t, rank, col, piv, r, k
    cdef bint nz
    out = []
    cdef Py_ssize_t idx = 0
    try:
        for m in elements:
            mv = blob_ptr(m)
            for i in range(d):
                for j in range(d):
                    for t in range(phi):
                        rows[phi * (i * d + j) + t] = mv[1 + phi * (i * d + j) + t]
                    if i == j:
                        rows[phi * (i * d + j)] -= mv[0]
            rank = 0
            col = 0
            while rank < d and col < d:
                piv = -1
                for r in range(rank, d):
                    nz = False
                    for t in range(phi):
                        if rows[phi * (r * d + col) + t] != 0:
                            nz = True
                            break
                    if nz:
                        piv = r
                        break
                if piv < 0:
                    col += 1
                    continue
                if piv != rank:
                    for k in range(d):
                        for t in range(phi):
                            u[t] = rows[phi * (rank * d + k) + t]
                            rows[phi * (rank * d + k) + t] = rows[phi * (piv * d + k) + t]
                            rows[phi * (piv * d + k) + t] = u[t]
                for t in range(phi):
                    pv[t] = rows[phi * (rank * d + col) + t]
                for r in range(rank + 1, d):
                    nz = False
                    for t in range(phi):
                        fv[t] = rows[phi * (r * d + col) + t]
                        if fv[t] != 0:
                            nz = True
                    if not nz:
                        continue
                    for k in range(d):
                        vmul(pv, rows + phi * (r * d + k), phi, red_c, u, conv)
                        vmul(fv, rows + phi * (rank * d + k), phi, red_c, vb, conv)
                        for t in range(phi):
                            newrow[phi * k + t] = u[t] - vb[t]
                    memcpy(rows + phi * (r * d), newrow, 8 * phi * d)
                rank += 1
                col += 1
            if rank == 1:
                out.append(idx)
            idx += 1
        return out
    finally:
        free(red_c)
        free(rows)
        free(newrow)
        free(u)
        free(vb)
        free(conv)
        free(pv)
        free(fv)
