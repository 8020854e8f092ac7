"""Pure-Python kernels; reference twin of ``_ckernels.pyx``.

All functions take the exponent matrix as a list of rows and return plain
Python objects. Enumeration order is odometer order with the last
coordinate moving fastest.
"""

from itertools import product


def image_count(h, ell):
    """Number of distinct H s mod ell over s in (Z/ell)^n."""
    n = len(h)
    seen = set()
    for s in product(range(ell), repeat=n):
        seen.add(tuple(sum(h[i][j] * s[j] for j in range(n)) % ell for i in range(n)))
    return len(seen)


def _central(h, ell, s):
    n = len(h)
    for j in range(n):
        if sum(h[i][j] * s[i] for i in range(n)) % ell:
            return False
    return True


def central_box_mask(h, ell, radius):
    """Byte per point of [-radius, radius]^n: 1 iff x^s commutes with every x_j."""
    n = len(h)
    rng = range(-radius, radius + 1)
    return bytes(int(_central(h, ell, s)) for s in product(rng, repeat=n))


def first_central_in_box(h, ell, bounds):
    """First nonzero s in prod [0, bounds_i) with x^s central, else None."""
    for s in product(*(range(b) for b in bounds)):
        if any(s) and _central(h, ell, s):
            return s
    return None


def ordering_table(h, ell, lhs, rhs):
    """Matrix of sum_{i>j} h_ij s_i t_j mod ell for s in lhs, t in rhs."""
    n = len(h)
    out = []
    for s in lhs:
        w = [sum(h[i][j] * s[i] for i in range(j + 1, n)) % ell for j in range(n)]
        out.append([sum(a * b for a, b in zip(w, t)) % ell for t in rhs])
    return out
