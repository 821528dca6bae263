"""Exact integer and rational linear algebra for lattice computations.

Everything here is over Z or Q; no floating point is used anywhere so that
downstream residuals (Stokes, Green, balancing) come out exactly zero.
Lattices are sublattices of Z^r given by basis rows kept in Hermite normal
form, so equal lattices have identical representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# small vector/matrix helpers (integers or Fractions)

def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    return tuple(c * x for x in a)


def vec_neg(a):
    return tuple(-x for x in a)


def is_zero_vec(a):
    return all(x == 0 for x in a)


def primitive(v):
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    if not b:
        return [[] for _ in a]
    cols = len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def _addmul(row, other, q):
    for i in range(len(row)):
        row[i] += q * other[i]


# ---------------------------------------------------------------------------
# exact rational Gaussian elimination

def solve_exact(a_rows, b):
    """Solve A x = b over Q.  Returns one solution as a list of Fractions,
    or None when the system is inconsistent."""
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        piv = aug[r][c]
        aug[r] = [x / piv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def rational_rank(rows):
    """Rank of a matrix with integer or Fraction entries."""
    m = [[Fraction(x) for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    rank = 0
    for c in range(nc):
        pr = next((i for i in range(rank, nr) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[rank], m[pr] = m[pr], m[rank]
        piv = m[rank][c]
        for i in range(rank + 1, nr):
            if m[i][c] != 0:
                f = m[i][c] / piv
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == nr:
            break
    return rank


def in_span(rows, v):
    """Whether v lies in the rational row span of rows."""
    if is_zero_vec(v):
        return True
    if not rows:
        return False
    return solve_exact(transpose(rows), v) is not None


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms

def hnf(m):
    """Row-style Hermite normal form.

    Returns (h, u) with u unimodular and u*m == h.  Pivots are positive,
    entries above each pivot are reduced into [0, pivot), zero rows come
    last.  The form is canonical: hnf(w*m) == hnf(m) for unimodular w.
    """
    rows = [list(map(int, r)) for r in m]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    u = identity_matrix(nr)
    pr = 0
    for col in range(nc):
        if pr == nr:
            break
        for i in range(pr + 1, nr):
            while rows[i][col] != 0:
                if rows[pr][col] != 0:
                    q = rows[i][col] // rows[pr][col]
                    _addmul(rows[i], rows[pr], -q)
                    _addmul(u[i], u[pr], -q)
                if rows[i][col] != 0:
                    rows[pr], rows[i] = rows[i], rows[pr]
                    u[pr], u[i] = u[i], u[pr]
        if rows[pr][col] == 0:
            continue
        if rows[pr][col] < 0:
            rows[pr] = [-x for x in rows[pr]]
            u[pr] = [-x for x in u[pr]]
        for i in range(pr):
            q = rows[i][col] // rows[pr][col]
            if q:
                _addmul(rows[i], rows[pr], -q)
                _addmul(u[i], u[pr], -q)
        pr += 1
    return rows, u


def snf_transform(m):
    """Smith normal form with transforms.

    Returns (d, u, vinv) where u*m*v == d is diagonal with the divisibility
    chain d[0][0] | d[1][1] | ..., u and v unimodular, and vinv == v^{-1}.
    """
    a = [list(map(int, r)) for r in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = identity_matrix(nr)
    vinv = identity_matrix(nc)

    def row_addmul(i, j, q):
        _addmul(a[i], a[j], q)
        _addmul(u[i], u[j], q)

    def col_addmul(j, i, q):
        # column j += q * column i; vinv row i -= q * vinv row j
        for r in range(nr):
            a[r][j] += q * a[r][i]
        _addmul(vinv[i], vinv[j], -q)

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(nr):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    t = 0
    while t < min(nr, nc):
        # locate a nonzero entry of minimal absolute value in a[t:, t:]
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            done = True
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_addmul(i, t, -q)
                    if a[i][t] != 0:
                        row_swap(t, i)
                        done = False
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_addmul(j, t, -q)
                    if a[t][j] != 0:
                        col_swap(t, j)
                        done = False
            if done and all(a[i][t] == 0 for i in range(t + 1, nr)) \
                    and all(a[t][j] == 0 for j in range(t + 1, nc)):
                break
        # enforce divisibility of the remaining block by a[t][t]
        fixed = False
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    row_addmul(t, i, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, vinv


def snf(m):
    """Elementary divisors d_1 | d_2 | ... | d_k with k = min(rows, cols)."""
    if not m or not m[0]:
        return []
    d, _, _ = snf_transform(m)
    return [d[i][i] for i in range(min(len(d), len(d[0])))]


# ---------------------------------------------------------------------------
# lattices

@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^r spanned by the rows of ``basis`` (HNF, no zero rows)."""

    ambient_rank: int
    basis: tuple

    @property
    def rank(self):
        return len(self.basis)


def lattice_from_rows(rows, ambient_rank):
    """Lattice spanned by integer row vectors, brought to canonical HNF."""
    for r in rows:
        if len(r) != ambient_rank:
            raise ValueError("row length does not match ambient rank")
    h, _ = hnf(rows)
    basis = tuple(tuple(r) for r in h if not is_zero_vec(r))
    return Lattice(ambient_rank, basis)


def full_lattice(r):
    return Lattice(r, tuple(tuple(row) for row in identity_matrix(r)))


def zero_lattice(r):
    return Lattice(r, ())


def member(v, lat):
    """Exact membership test v in lat, via the HNF basis."""
    if len(v) != lat.ambient_rank:
        raise ValueError("vector length does not match ambient rank")
    w = list(map(int, v))
    for row in lat.basis:
        p = next(i for i, x in enumerate(row) if x != 0)
        if w[p] % row[p] != 0:
            return False
        q = w[p] // row[p]
        if q:
            for i in range(len(w)):
                w[i] -= q * row[i]
    return is_zero_vec(w)


def saturate(lat):
    """Saturation span_R(lat) cap Z^r; idempotent."""
    if lat.rank == 0:
        return lat
    _, _, vinv = snf_transform([list(r) for r in lat.basis])
    rows = [vinv[i] for i in range(lat.rank)]
    return lattice_from_rows(rows, lat.ambient_rank)


def lattice_index(sub, sup):
    """Index of sub inside sup: the product of the elementary divisors of the
    matrix of sub's basis in a basis of sup.  Returns None (infinite) when
    rank(sub) < rank(sup).  Requires span(sub) subseteq span(sup) and sub to
    be an actual sublattice of sup."""
    if sub.ambient_rank != sup.ambient_rank:
        raise ValueError("ambient rank mismatch")
    coords = []
    supt = transpose([list(r) for r in sup.basis])
    for b in sub.basis:
        sol = solve_exact(supt, list(b)) if sup.rank else (None if not is_zero_vec(b) else [])
        if sol is None:
            raise ValueError("sub is not contained in the span of sup")
        for x in sol:
            if x.denominator != 1:
                raise ValueError("sub is not a sublattice of sup")
        coords.append([int(x) for x in sol])
    if sub.rank < sup.rank:
        return None
    idx = 1
    for d in snf(coords):
        idx *= d
    return idx


def coords_in_basis(basis_rows, v):
    """Rational coordinates of v in the given independent rows, or None."""
    if not basis_rows:
        return [] if is_zero_vec(v) else None
    return solve_exact(transpose([list(r) for r in basis_rows]), list(v))


def reduce_mod_lattice(v, lat):
    """Canonical representative of v modulo lat.

    Decomposes v = l + t with l in span(lat) (orthogonal projection) and
    subtracts the floor part of l's coordinates in the HNF basis, so the
    reduction coefficients land in [0, 1).  Works for rational v."""
    if lat.rank == 0:
        return tuple(Fraction(x) for x in v)
    b = [list(r) for r in lat.basis]
    gram = [[Fraction(dot(x, y)) for y in b] for x in b]
    rhs = [Fraction(dot(x, v)) for x in b]
    lam = solve_exact(gram, rhs)
    out = [Fraction(x) for x in v]
    for c, row in zip(lam, b):
        q = c.numerator // c.denominator  # floor
        if q:
            for i in range(len(out)):
                out[i] -= q * row[i]
    return tuple(out)


def primitive_outward(n_sigma, n_rho, outward_functional):
    """Primitive generator of n_sigma / n_rho pointing outwards.

    ``outward_functional`` is an integer vector u with <u, .> constant on the
    facet and <u, x> smaller on the cell, i.e. the facet's inequality normal;
    the result w satisfies <u, w> > 0.  The representative is canonicalized
    modulo n_rho (reduction coefficients in [0, 1))."""
    if n_rho.rank != n_sigma.rank - 1:
        raise ValueError("rho is not of codimension one in sigma")
    n = n_sigma.rank
    bs = [list(r) for r in n_sigma.basis]
    coords = []
    for b in n_rho.basis:
        sol = coords_in_basis(bs, b)
        if sol is None or any(x.denominator != 1 for x in sol):
            raise ValueError("n_rho is not a sublattice of n_sigma")
        coords.append([int(x) for x in sol])
    if coords:
        _, _, vinv = snf_transform(coords)
        w_coords = vinv[n - 1]
    else:
        w_coords = [1]
    omega = [0] * n_sigma.ambient_rank
    for c, row in zip(w_coords, bs):
        for i in range(len(omega)):
            omega[i] += c * row[i]
    s = dot(outward_functional, omega)
    if s == 0:
        raise ValueError("outward functional does not separate across the facet")
    if s < 0:
        omega = [-x for x in omega]
    red = reduce_mod_lattice(omega, n_rho)
    return tuple(int(x) for x in red)
