"""
Independent checks that share no code path with the package's own algorithms.

* closed-form volumes written out by hand per solid kind;
* volume by slicing: exact integration of cross-section areas between
  consecutive vertex heights (Simpson's rule is exact for cubic section areas);
* tiling by lattice sampling: count how many placed pieces strictly contain
  each point of a shifted rational lattice;
* congruence of axis-aligned solids by trying all 48 signed permutations.
"""
from fractions import Fraction
from itertools import permutations, product


def closed_form(kind, *ps):
    F = Fraction
    if kind == "box":
        p, q, r = ps
        return F(p) * q * r
    if kind == "frustum":
        a, b, h = ps
        return F(h) * (a * a + a * b + b * b) / 3
    if kind == "pyramid":
        a, h = ps
        return F(h) * a * a / 3
    if kind == "yangma":
        p, q, r = ps
        return F(p) * q * r / 3
    if kind == "qiandu":
        p, q, r = ps
        return F(p) * q * r / 2
    if kind == "juel":
        (a,) = ps
        return F(a) ** 3 / 6
    raise KeyError(kind)


def _inside(planes, pt):
    return all(n[0] * pt[0] + n[1] * pt[1] + n[2] * pt[2] <= off for n, off in planes)


def _strict(planes, pt):
    return all(n[0] * pt[0] + n[1] * pt[1] + n[2] * pt[2] < off for n, off in planes)


def planes_of(poly):
    """Half-spaces re-derived from the vertex list alone (all facets of the hull)."""
    vs = [tuple(v) for v in poly.vertices]
    out = set()
    n = len(vs)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = vs[i], vs[j], vs[k]
                u = [b[t] - a[t] for t in range(3)]
                w = [c[t] - a[t] for t in range(3)]
                nrm = (u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0])
                if nrm == (0, 0, 0):
                    continue
                off = sum(nrm[t] * a[t] for t in range(3))
                vals = [sum(nrm[t] * v[t] for t in range(3)) - off for v in vs]
                if all(x <= 0 for x in vals):
                    pass
                elif all(x >= 0 for x in vals):
                    nrm, off = tuple(-x for x in nrm), -off
                else:
                    continue
                g = max(abs(x) for x in nrm)
                out.add((tuple(x / g for x in nrm), off / g))
    return list(out)


def _section_area(vs, z):
    """Area of the horizontal section of the hull of vs at height z (2D hull of edge crossings)."""
    pts = set()
    for i in range(len(vs)):
        for j in range(len(vs)):
            a, b = vs[i], vs[j]
            if a[2] == z:
                pts.add((a[0], a[1]))
            elif (a[2] - z) * (b[2] - z) < 0:
                t = (z - a[2]) / (b[2] - a[2])
                pts.add((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    pts = sorted(pts)
    if len(pts) < 3:
        return Fraction(0)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    s = Fraction(0)
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


def slice_volume(poly):
    """Volume of the convex hull of poly's vertices by exact slab integration along z."""
    vs = [tuple(v) for v in poly.vertices]
    zs = sorted({v[2] for v in vs})
    total = Fraction(0)
    for z0, z1 in zip(zs, zs[1:]):
        # strictly inside the slab the section is a fixed polygon whose area is quadratic in z
        e = (z1 - z0) / 1000
        lo, mid, hi = z0 + e, (z0 + z1) / 2, z1 - e
        a_lo, a_mid, a_hi = (_section_area(vs, z) for z in (lo, mid, hi))
        # fit the quadratic through the three samples and integrate it over [z0, z1]
        total += _integrate_quadratic((lo, a_lo), (mid, a_mid), (hi, a_hi), z0, z1)
    return total


def _integrate_quadratic(p0, p1, p2, a, b):
    (x0, y0), (x1, y1), (x2, y2) = p0, p1, p2

    def basis_integral(xi, xj, xk):
        # integral over [a, b] of (x - xj)(x - xk) / ((xi - xj)(xi - xk))
        def prim(x):
            return x ** 3 / 3 - (xj + xk) * x ** 2 / 2 + xj * xk * x
        return (prim(b) - prim(a)) / ((xi - xj) * (xi - xk))

    return y0 * basis_integral(x0, x1, x2) + y1 * basis_integral(x1, x0, x2) + y2 * basis_integral(x2, x0, x1)


def lattice_tiling_check(container_polys, pieces, steps=7):
    """Sample a shifted lattice over the container bounding box.

    Returns (uncovered, overlapped): sample points strictly inside a container
    cell but in no piece, and points strictly inside two or more pieces.
    """
    cells = [planes_of(c) for c in container_polys]
    pcs = [planes_of(p) for p in pieces]
    xs = [v[0] for c in container_polys for v in c.vertices]
    ys = [v[1] for c in container_polys for v in c.vertices]
    zs = [v[2] for c in container_polys for v in c.vertices]
    lo = (min(xs), min(ys), min(zs))
    span = (max(xs) - lo[0], max(ys) - lo[1], max(zs) - lo[2])
    shift = (Fraction(1, 97), Fraction(3, 89), Fraction(5, 83))
    uncovered = overlapped = 0
    for i, j, k in product(range(steps), repeat=3):
        pt = tuple(lo[t] + span[t] * (Fraction((i, j, k)[t]) + shift[t]) / steps for t in range(3))
        if not any(_strict(c, pt) for c in cells):
            continue
        hits = sum(_strict(p, pt) for p in pcs)
        if hits == 0 and not any(_inside(p, pt) for p in pcs):
            uncovered += 1
        if hits > 1:
            overlapped += 1
    return uncovered, overlapped


def signed_permutation_congruent(p, q):
    """True iff some signed axis permutation plus translation maps vertex set p onto q."""
    pv = [tuple(v) for v in p.vertices]
    qset = {tuple(v) for v in q.vertices}
    if len(pv) != len(qset):
        return False
    for perm in permutations(range(3)):
        for signs in product((1, -1), repeat=3):
            img = [tuple(signs[t] * v[perm[t]] for t in range(3)) for v in pv]
            mins_i = tuple(min(v[t] for v in img) for t in range(3))
            mins_q = tuple(min(v[t] for v in qset) for t in range(3))
            shift = tuple(mins_q[t] - mins_i[t] for t in range(3))
            if {tuple(v[t] + shift[t] for t in range(3)) for v in img} == qset:
                return True
    return False
