"""Brute-force reference routines, independent of the production code paths.

Everything here works on plain nested lists and evaluates multilinear maps
on explicit vectors; no numpy tensors, no shared helpers.
"""

from fractions import Fraction
from itertools import product


def vadd(*vs):
    return [sum(xs, Fraction(0)) for xs in zip(*vs)]


def vscale(a, v):
    return [a * x for x in v]


def matvec(M, v):
    return [sum((Fraction(M[r][c]) * v[c] for c in range(len(v))), Fraction(0)) for r in range(len(M))]


def bracket(c, x, y):
    dim = len(c)
    out = [Fraction(0)] * dim
    for i in range(dim):
        if x[i] == 0:
            continue
        for j in range(dim):
            if y[j] == 0:
                continue
            for k in range(dim):
                out[k] += x[i] * y[j] * c[i][j][k]
    return out


def op_of(rho, x):
    """sum_a x_a rho[a] as a nested-list matrix."""
    m = len(rho[0]) if rho else 0
    return [[sum((x[a] * Fraction(rho[a][r][q]) for a in range(len(x))), Fraction(0))
              for q in range(m)] for r in range(m)]


def evaluate(f, n, vectors, m):
    """f: dict basis-tuple -> value list; multilinear evaluation."""
    out = [Fraction(0)] * m
    if n == 0:
        return list(f.get((), out))
    for idx, val in f.items():
        coeff = Fraction(1)
        for v, i in zip(vectors, idx):
            coeff *= v[i]
            if coeff == 0:
                break
        if coeff:
            out = vadd(out, vscale(coeff, val))
    return out


def unit(dim, i):
    v = [Fraction(0)] * dim
    v[i] = Fraction(1)
    return v


def naive_delta_leib(f, n, cg, ch, rhoL, rhoR, H):
    """Twisted Loday-Pirashvili coboundary, term by term, on basis tuples."""
    d = len(cg)
    m = len(ch)
    Hx = lambda x: matvec(H, x) if m else []
    out = {}
    for args in product(range(d), repeat=n + 1):
        xs = [unit(d, a) for a in args]
        total = [Fraction(0)] * m
        for i in range(1, n + 1):
            rest = xs[:i - 1] + xs[i:]
            val = evaluate(f, n, rest, m)
            s = (-1) ** (i + 1)
            term = vadd(matvec(op_of(rhoL, xs[i - 1]), val), bracket(ch, Hx(xs[i - 1]), val))
            total = vadd(total, vscale(s, term))
        val = evaluate(f, n, xs[:n], m)
        s = (-1) ** (n + 1)
        term = vadd(matvec(op_of(rhoR, xs[n]), val), bracket(ch, val, Hx(xs[n])))
        total = vadd(total, vscale(s, term))
        for i in range(1, n + 2):
            for j in range(i + 1, n + 2):
                br = bracket(cg, xs[i - 1], xs[j - 1])
                new = xs[:i - 1] + xs[i:j - 1] + [br] + xs[j:]
                total = vadd(total, vscale((-1) ** i, evaluate(f, n, new, m)))
        out[args] = total
    return out


def naive_matrix(k, cg, ch, rhoL, rhoR, H):
    """Columns: coboundary of each basis k-cochain, rows/cols lexicographic in (args, out)."""
    d, m = len(cg), len(ch)
    cols = []
    for args in product(range(d), repeat=k):
        for r in range(m):
            f = {args: unit(m, r)}
            img = naive_delta_leib(f, k, cg, ch, rhoL, rhoR, H)
            col = []
            for a2 in product(range(d), repeat=k + 1):
                col.extend(img[a2])
            cols.append(col)
    nrows = m * d ** (k + 1)
    return [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]


def bareiss_rank(M):
    """Rank via fraction-free elimination after clearing denominators row by row."""
    rows = []
    for row in M:
        den = 1
        for x in row:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
        rows.append([int(Fraction(x) * den) for x in row])
    if not rows or not rows[0]:
        return 0
    nr, nc = len(rows), len(rows[0])
    r, prev = 0, 1
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                rows[i][j] = (rows[i][j] * rows[r][c] - rows[i][c] * rows[r][j]) // prev
            rows[i][c] = 0
        prev = rows[r][c]
        r += 1
        if r == nr:
            break
    return r


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a




def brute_dims(k, cg, ch, rhoL, rhoR, H):
    """(dim C^k, dim Z^k, dim B^k, dim H^k) by brute force."""
    d, m = len(cg), len(ch)
    dim_c = m * d ** k
    z = dim_c - bareiss_rank(naive_matrix(k, cg, ch, rhoL, rhoR, H))
    b = bareiss_rank(naive_matrix(k - 1, cg, ch, rhoL, rhoR, H)) if k >= 1 else 0
    return dim_c, z, b, z - b


def naive_is_crossed(cg, ch, rhoL, rhoR, H):
    """H[x,y] == rhoL(x)Hy + rhoR(y)Hx + [Hx,Hy] on every basis pair."""
    d = len(cg)
    for a in range(d):
        for b in range(d):
            x, y = unit(d, a), unit(d, b)
            Hx, Hy = matvec(H, x), matvec(H, y)
            lhs = matvec(H, bracket(cg, x, y))
            rhs = vadd(matvec(op_of(rhoL, x), Hy), matvec(op_of(rhoR, y), Hx), bracket(ch, Hx, Hy))
            if lhs != rhs:
                return False
    return True


def naive_is_leibniz(c):
    d = len(c)
    for a, b, e in product(range(d), repeat=3):
        x, y, z = unit(d, a), unit(d, b), unit(d, e)
        lhs = bracket(c, x, bracket(c, y, z))
        rhs = vadd(bracket(c, bracket(c, x, y), z), bracket(c, y, bracket(c, x, z)))
        if lhs != rhs:
            return False
    return True


def lists_of(rep):
    """Nested-list views (cg, ch, rhoL, rhoR) of a representation object."""
    conv = lambda arr: [[[Fraction(v) for v in row] for row in mat] for mat in arr]
    return conv(rep.g.structure), conv(rep.h.structure), conv(rep.rhoL), conv(rep.rhoR)
