"""Pure-Python integer kernels used when the compiled extension is absent."""


def conv(a, b):
    """Dense product of two integer coefficient lists (ascending order)."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def sparse_mul(p, q):
    """Product of two sparse integer polynomials keyed by exponent tuples."""
    out = {}
    get = out.get
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out
