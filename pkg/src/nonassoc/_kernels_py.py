"""Pure-Python kernels over monomial multiplication tables.

A monomial table stores ``e_i e_j = sign[i*dim+j] * e_{idx[i*dim+j]}``.
The compiled twin in ``_kernels.pyx`` exposes the same functions.
"""

IDENTITY_CODES = {
    "associative": 0,
    "commutative": 1,
    "alternative": 2,
    "flexible": 3,
    "moufang": 4,
}


def mul_monomial(sign, idx, dim, a, b):
    """Bilinear product of coefficient sequences ``a`` and ``b``."""
    out = [0] * dim
    for i in range(dim):
        ai = a[i]
        if not ai:
            continue
        row = i * dim
        for j in range(dim):
            bj = b[j]
            if not bj:
                continue
            s = sign[row + j]
            if s:
                out[idx[row + j]] += s * ai * bj
    return out


def _bb(sign, idx, dim, i, j):
    k = i * dim + j
    return sign[k], idx[k]


def _assoc_into(sign, idx, dim, i, j, k, out, scale):
    # out += scale * ((e_i e_j) e_k - e_i (e_j e_k))
    s1, m1 = _bb(sign, idx, dim, i, j)
    s2, m2 = _bb(sign, idx, dim, m1, k)
    out[m2] += scale * s1 * s2
    s3, m3 = _bb(sign, idx, dim, j, k)
    s4, m4 = _bb(sign, idx, dim, i, m3)
    out[m4] -= scale * s3 * s4


def associator_tensor(sign, idx, dim):
    """Flat list ``T[((i*dim+j)*dim+k)*dim+m]`` = m-th coefficient of (e_i,e_j,e_k)."""
    out = [0] * (dim ** 4)
    vec = [0] * dim
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                for m in range(dim):
                    vec[m] = 0
                _assoc_into(sign, idx, dim, i, j, k, vec, 1)
                base = ((i * dim + j) * dim + k) * dim
                for m in range(dim):
                    out[base + m] = vec[m]
    return out


def _chain(sign, idx, dim, ops):
    """Evaluate a bracketed monomial; ``ops`` is a nested tuple of basis ints."""
    if isinstance(ops, int):
        return 1, ops
    sl, l = _chain(sign, idx, dim, ops[0])
    sr, r = _chain(sign, idx, dim, ops[1])
    s, m = _bb(sign, idx, dim, l, r)
    return sl * sr * s, m


def _combo(sign, idx, dim, plus, minus):
    vec = [0] * dim
    for t in plus:
        s, m = _chain(sign, idx, dim, t)
        vec[m] += s
    for t in minus:
        s, m = _chain(sign, idx, dim, t)
        vec[m] -= s
    return any(vec)


def scan_identity(sign, idx, dim, code):
    """First basis tuple violating the (linearized) identity, or None."""
    r = range(dim)
    if code == 0:
        for i in r:
            for j in r:
                for k in r:
                    if _combo(sign, idx, dim, [((i, j), k)], [(i, (j, k))]):
                        return (i, j, k)
    elif code == 1:
        for i in r:
            for j in r:
                if _combo(sign, idx, dim, [(i, j)], [(j, i)]):
                    return (i, j)
    elif code == 2:
        # (x,x,y) = 0 and (y,x,x) = 0, polarized in x
        for i in r:
            for j in range(i, dim):
                for k in r:
                    if _combo(sign, idx, dim, [((i, j), k), ((j, i), k)],
                              [(i, (j, k)), (j, (i, k))]):
                        return (i, j, k)
                    if _combo(sign, idx, dim, [((k, i), j), ((k, j), i)],
                              [(k, (i, j)), (k, (j, i))]):
                        return (k, i, j)
    elif code == 3:
        for i in r:
            for j in range(i, dim):
                for k in r:
                    if _combo(sign, idx, dim, [((i, k), j), ((j, k), i)],
                              [(i, (k, j)), (j, (k, i))]):
                        return (i, k, j)
    elif code == 4:
        # z(x(zy)) = ((zx)z)y ; x(z(yz)) = ((xz)y)z ; (zx)(yz) = (z(xy))z, polarized in z
        for a in r:
            for b in range(a, dim):
                for x in r:
                    for y in r:
                        if _combo(sign, idx, dim,
                                  [(a, (x, (b, y))), (b, (x, (a, y)))],
                                  [(((a, x), b), y), (((b, x), a), y)]):
                            return (a, b, x, y)
                        if _combo(sign, idx, dim,
                                  [(x, (a, (y, b))), (x, (b, (y, a)))],
                                  [(((x, a), y), b), (((x, b), y), a)]):
                            return (a, b, x, y)
                        if _combo(sign, idx, dim,
                                  [((a, x), (y, b)), ((b, x), (y, a))],
                                  [((a, (x, y)), b), ((b, (x, y)), a)]):
                            return (a, b, x, y)
    else:
        raise ValueError(f"unknown identity code {code}")
    return None
