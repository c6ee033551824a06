"""Pure-Python kernel for matrix groups over cyclotomic rings.

Entries live in Z[x]/Phi_N over a common positive denominator; phi =
deg Phi_N coefficients per entry.  A matrix is a bytes blob of
little-endian int64: [den, c(0,0,0..phi-1), c(0,1,*), ...]; blobs are
content-normalized with den > 0, so equal matrices have equal blobs.
Vectors and 2-row plane bases use the same layout.

`red` is the flattened reduction table: row t (phi ints) expresses
x^(phi+t) in the power basis, t = 0 .. phi-2.  Projective operations
(line_canon and friends) are implemented for quadratic rings only,
where red = (p, q) gives the closed-form inverse.

This module is the fallback twin of the compiled `_kernel` extension;
both expose the same functions.
"""

from __future__ import annotations

import struct
from math import gcd

BACKEND = "python"


class BoundExceeded(RuntimeError):
    pass


def _pack(ints):
    return struct.pack(f"<{len(ints)}q", *ints)


def _unpack(blob):
    return struct.unpack(f"<{len(blob) // 8}q", blob)


def _normalize(den, nums):
    if den < 0:
        den = -den
        nums = [-x for x in nums]
    g = den
    for x in nums:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        den //= g
        nums = [x // g for x in nums]
    return _pack([den] + list(nums))


def pack_values(den, nums):
    """Build a normalized blob from a denominator and coefficient ints."""
    return _normalize(den, list(nums))


def unpack_values(blob):
    vals = _unpack(blob)
    return vals[0], vals[1:]


def _vmul(u, v, phi, red):
    """Product of two coefficient vectors, reduced into the power basis."""
    conv = [0] * (2 * phi - 1)
    for i in range(phi):
        x = u[i]
        if x:
            for j in range(phi):
                y = v[j]
                if y:
                    conv[i + j] += x * y
    out = conv[:phi]
    for t in range(phi - 1):
        c = conv[phi + t]
        if c:
            base = t * phi
            for j in range(phi):
                out[j] += c * red[base + j]
    return out


def _accumulate_row(mv, vn, i, d, phi, red):
    """Row i of (matrix coefficients mv) times vector coefficients vn."""
    acc = [0] * phi
    row_base = 1 + phi * d * i
    for k in range(d):
        u = mv[row_base + phi * k : row_base + phi * (k + 1)]
        if not any(u):
            continue
        v = vn[phi * k : phi * (k + 1)]
        if not any(v):
            continue
        prod = _vmul(u, v, phi, red)
        for j in range(phi):
            acc[j] += prod[j]
    return acc


def mat_mul(a, b, d, phi, red):
    av = _unpack(a)
    bv = _unpack(b)
    den = av[0] * bv[0]
    out = [0] * (phi * d * d)
    for i in range(d):
        for j in range(d):
            acc = [0] * phi
            for k in range(d):
                u = av[1 + phi * (i * d + k) : 1 + phi * (i * d + k + 1)]
                if not any(u):
                    continue
                v = bv[1 + phi * (k * d + j) : 1 + phi * (k * d + j + 1)]
                if not any(v):
                    continue
                prod = _vmul(u, v, phi, red)
                for t in range(phi):
                    acc[t] += prod[t]
            base = phi * (i * d + j)
            out[base : base + phi] = acc
    return _normalize(den, out)


def mat_vec(m, v, d, phi, red):
    mv = _unpack(m)
    vv = _unpack(v)
    den = mv[0] * vv[0]
    vn = vv[1:]
    out = []
    for i in range(d):
        out.extend(_accumulate_row(mv, vn, i, d, phi, red))
    return _normalize(den, out)


def identity_blob(d, phi=2):
    out = [0] * (phi * d * d)
    for i in range(d):
        out[phi * (i * d + i)] = 1
    return _pack([1] + out)


def closure(gens, d, phi, red, bound):
    """Multiplicative closure of the generators; raises past the bound."""
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


def stab_count_line(elements, v, d, phi, red):
    vv = _unpack(v)
    vn = vv[1:]
    pivot = next(k for k in range(d) if any(vn[phi * k : phi * (k + 1)]))
    pv = vn[phi * pivot : phi * (pivot + 1)]
    count = 0
    for m in elements:
        mv = _unpack(m)
        w = [_accumulate_row(mv, vn, i, d, phi, red) for i in range(d)]
        wp = w[pivot]
        ok = True
        for i in range(d):
            if i == pivot:
                continue
            left = _vmul(w[i], pv, phi, red)
            right = _vmul(wp, vn[phi * i : phi * (i + 1)], phi, red)
            if left != right:
                ok = False
                break
        if ok:
            count += 1
    return count


def stab_count_point(elements, v, d, phi, red):
    count = 0
    for m in elements:
        if mat_vec(m, v, d, phi, red) == v:
            count += 1
    return count


def _require_quadratic(phi):
    if phi != 2:
        raise ValueError("projective kernel operations need a quadratic ring")


def _qmul(a0, a1, b0, b1, p, q):
    t = a1 * b1
    return a0 * b0 + t * p, a0 * b1 + a1 * b0 + t * q


def _qinv_scaled(a, b, p, q):
    """(a+bx)^-1 = (a + b q - b x) / N with N = a^2 + a b q - b^2 p."""
    return a + b * q, -b, a * a + a * b * q - b * b * p


def line_canon(v, d, phi, red):
    """Scale so the first nonzero entry is exactly 1, then normalize."""
    _require_quadratic(phi)
    p, q = red
    vv = _unpack(v)
    nums = list(vv[1:])
    pivot = next((k for k in range(d) if nums[2 * k] or nums[2 * k + 1]), None)
    if pivot is None:
        return _pack([1] + nums)
    ca, cb, n = _qinv_scaled(nums[2 * pivot], nums[2 * pivot + 1], p, q)
    out = [0] * (2 * d)
    for k in range(d):
        r0, r1 = _qmul(nums[2 * k], nums[2 * k + 1], ca, cb, p, q)
        out[2 * k] = r0
        out[2 * k + 1] = r1
    return _normalize(n, out)


def line_orbit(gens, v, d, phi, red, bound):
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


def plane_canon(rows, d, phi, red):
    """Reduced row-echelon form of a 2-row basis, content-normalized.

    Row values are tracked as (integer coefficient list, denominator);
    the reduced values are unique, so the final common-denominator blob
    is a canonical key for the subspace.
    """
    _require_quadratic(phi)
    p, q = red
    vv = _unpack(rows)
    r = [[list(vv[1 : 1 + 2 * d]), vv[0]], [list(vv[1 + 2 * d :]), vv[0]]]

    def pivot_col(nums):
        return next((k for k in range(d) if nums[2 * k] or nums[2 * k + 1]), None)

    def reduce_row(row):
        nums, den = row
        g = den
        for x in nums:
            g = gcd(g, x)
        if g > 1:
            row[0] = [x // g for x in nums]
            row[1] = den // g
        return row

    def scale_to_unit(row, pc):
        nums, _den = row
        ca, cb, n = _qinv_scaled(nums[2 * pc], nums[2 * pc + 1], p, q)
        out = []
        for k in range(d):
            out.extend(_qmul(nums[2 * k], nums[2 * k + 1], ca, cb, p, q))
        return reduce_row([out, n])

    def eliminate(target, source, pc):
        # target -= (target value at pc) * source; source has unit pivot
        tn, td = target
        sn, sd = source
        f0, f1 = tn[2 * pc], tn[2 * pc + 1]
        if not (f0 or f1):
            return reduce_row(target)
        out = []
        for k in range(d):
            s0, s1 = _qmul(f0, f1, sn[2 * k], sn[2 * k + 1], p, q)
            out.extend([sd * tn[2 * k] - s0, sd * tn[2 * k + 1] - s1])
        return reduce_row([out, td * sd])

    if pivot_col(r[1][0]) is not None and (
        pivot_col(r[0][0]) is None or pivot_col(r[1][0]) < pivot_col(r[0][0])
    ):
        r = [r[1], r[0]]
    p0 = pivot_col(r[0][0])
    if p0 is not None:
        r[0] = scale_to_unit(r[0], p0)
        r[1] = eliminate(r[1], r[0], p0)
        p1 = pivot_col(r[1][0])
        if p1 is not None:
            r[1] = scale_to_unit(r[1], p1)
            r[0] = eliminate(r[0], r[1], p1)
    d0, d1 = r[0][1], r[1][1]
    den = d0 * d1 // gcd(d0, d1)
    flat = [x * (den // d0) for x in r[0][0]] + [x * (den // d1) for x in r[1][0]]
    return _normalize(den, flat)


def plane_orbit(gens, plane, d, phi, red, bound):
    _require_quadratic(phi)
    start = plane_canon(plane, d, phi, red)
    seen = {start}
    order = [start]
    frontier = [start]
    while frontier:
        new = []
        for w in frontier:
            vv = _unpack(w)
            den = vv[0]
            rows = [vv[1 : 1 + 2 * d], vv[1 + 2 * d :]]
            for g in gens:
                imgs = []
                for row in rows:
                    rv = _pack([den] + list(row))
                    mv = _unpack(mat_vec(g, rv, d, phi, red))
                    imgs.append(mv)
                # recombine at a common denominator
                d0, d1 = imgs[0][0], imgs[1][0]
                flat = [x * d1 for x in imgs[0][1:]] + [x * d0 for x in imgs[1][1:]]
                img = plane_canon(_pack([d0 * d1] + flat), d, phi, red)
                if img not in seen:
                    if len(seen) >= bound:
                        raise BoundExceeded(f"plane orbit exceeded bound {bound}")
                    seen.add(img)
                    order.append(img)
                    new.append(img)
        frontier = new
    return order


def reflection_indices(elements, d, phi, red):
    """Indices of elements m with rank(m - I) == 1 (fraction-free Gauss)."""
    out = []
    for idx, m in enumerate(elements):
        mv = _unpack(m)
        den = mv[0]
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                coeffs = list(mv[1 + phi * (i * d + j) : 1 + phi * (i * d + j + 1)])
                if i == j:
                    coeffs[0] -= den
                row.extend(coeffs)
            rows.append(row)
        if _rank_ff(rows, d, phi, red) == 1:
            out.append(idx)
    return out


def _rank_ff(rows, d, phi, red):
    rank = 0
    col = 0
    nrows = len(rows)
    while rank < nrows and col < d:
        piv = next(
            (
                r
                for r in range(rank, nrows)
                if any(rows[r][phi * col : phi * (col + 1)])
            ),
            None,
        )
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][phi * col : phi * (col + 1)]
        for r in range(rank + 1, nrows):
            fv = rows[r][phi * col : phi * (col + 1)]
            if not any(fv):
                continue
            new = []
            for k in range(d):
                u = _vmul(pv, rows[r][phi * k : phi * (k + 1)], phi, red)
                v = _vmul(fv, rows[rank][phi * k : phi * (k + 1)], phi, red)
                new.extend([a - b for a, b in zip(u, v)])
            rows[r] = new
        rank += 1
        col += 1
    return rank
