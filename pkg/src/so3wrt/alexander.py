"""Alexander polynomials from planar diagrams, and the classical filters.

The Alexander matrix comes from the Wirtinger presentation read off the PD
code: one generator per over-strand, one Fox-derivative row per crossing,
abelianised to Z[t, t^-1].  Deleting one row and one column and taking an
exact determinant (Bareiss elimination over Z[t]) gives the polynomial up
to units; it is then symmetrised and pinned by Delta(1) = 1.

The screening logic only consumes two integers computed here exactly:
Delta''(1) and the third derivative of the Jones polynomial at 1.
"""

from __future__ import annotations

from functools import lru_cache

from .cyclo import LaurentPoly
from .knots import DiagramError, PlanarDiagram
from .skein import jones_polynomial

__all__ = [
    "alexander_polynomial",
    "finite_type_filters",
    "knot_determinant",
]


class InternalInvariantError(RuntimeError):
    """A structural identity failed; the input cannot be a valid knot."""


def _wirtinger_generators(d: PlanarDiagram):
    """Map each arc label to its over-strand (Wirtinger) generator index."""
    parent = {a: a for a in d.arcs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in d.crossings:
        a, b = find(c[1]), find(c[3])
        if a != b:
            parent[a] = b
    gens = {}
    index = {}
    for arc in d.arcs:
        root = find(arc)
        if root not in index:
            index[root] = len(index)
        gens[arc] = index[root]
    return gens, len(index)


def _poly_matrix_det(rows):
    """Exact determinant of a square matrix over Z[t] by Bareiss elimination."""
    from .skein import _laurent_div

    n = len(rows)
    if n == 0:
        return LaurentPoly.const(1)
    m = [row[:] for row in rows]
    prev = LaurentPoly.const(1)
    sign = 1
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                continue
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = _laurent_div(num, prev) if prev != LaurentPoly.const(1) \
                    else num
            m[i][k] = LaurentPoly()
        prev = m[k][k]
        if not prev:
            return LaurentPoly()
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


@lru_cache(maxsize=100000)
def alexander_polynomial(d: PlanarDiagram) -> LaurentPoly:
    """The symmetrised Alexander polynomial with Delta(1) = 1 (variable t)."""
    if d.n_components != 1:
        raise DiagramError("Alexander polynomial implemented for knots")
    n = d.n_crossings
    if n == 0:
        return LaurentPoly.const(1)
    gens, ngen = _wirtinger_generators(d)
    t = LaurentPoly.monomial(1, 1)
    one = LaurentPoly.const(1)
    rows = []
    for i, c in enumerate(d.crossings):
        row = [LaurentPoly() for _ in range(ngen)]
        u_in, u_out, over = gens[c[0]], gens[c[2]], gens[c[1]]
        if d.signs[i] > 0:
            contrib = ((u_in, t), (u_out, -one), (over, one - t))
        else:
            # the Fox row scaled by t to stay in Z[t]
            contrib = ((u_in, one), (u_out, -t), (over, t - one))
        for g, val in contrib:
            row[g] = row[g] + val
        rows.append(row)
    # delete one row and one column
    sub = [row[:-1] for row in rows[:-1]]
    det = _poly_matrix_det(sub)
    if not det:
        raise InternalInvariantError("degenerate Alexander matrix")
    # normalise: strip units, centre the exponents, fix Delta(1) = 1
    lo, hi = det.degrees()
    coeffs = {e - lo: c for e, c in det.coeffs.items()}
    span = hi - lo
    if span % 2:
        raise InternalInvariantError("odd Alexander breadth for a knot")
    centred = LaurentPoly({e - span // 2: c for e, c in coeffs.items()})
    at_one = centred(1)
    if at_one == -1:
        centred = -centred
    elif at_one != 1:
        raise InternalInvariantError(
            f"Alexander value at 1 is {at_one}, expected a unit")
    if centred != centred.inverted():
        raise InternalInvariantError("Alexander polynomial not symmetric")
    return centred


def finite_type_filters(d: PlanarDiagram):
    """(Delta''(1), J'''(1)) -- the two classical purely-cosmetic filters.

    Both are exact integers obtained by formal differentiation; a knot with
    either value nonzero admits no purely cosmetic surgery pair.
    """
    delta = alexander_polynomial(d)
    d2 = sum(c * k * (k - 1) for k, c in delta.coeffs.items())
    jones = jones_polynomial(d)
    j3 = sum(c * k * (k - 1) * (k - 2) for k, c in jones.coeffs.items())
    return d2, j3


def knot_determinant(d: PlanarDiagram) -> int:
    """|Delta(-1)|, the knot determinant."""
    return abs(alexander_polynomial(d)(-1))
