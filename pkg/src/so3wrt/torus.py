"""The level-r torus TQFT: quantum representation, Maslov weights, surgery.

The TQFT space of the torus has the orthonormal basis f_1, ..., f_m with
m = (r-1)/2, indexed by the Chebyshev colours of the core of a solid torus.
The mapping class group SL(2,Z) acts projectively through the matrices

    T f_i = (-A)^(i^2-1) f_i,        S f_i = eta * sum_j (-1)^(i+j) [ij] f_j,

and linearly on the integral extension, where a class carries an integer
weight composed via Maslov indices with respect to the meridian Lagrangian.
The central generator (Id, 1) acts by the anomaly constant kappa.

Two flavours of evaluation are exposed:

* :func:`rho_word` -- the bare product of generator matrices, the usual
  abuse of notation for words in S and T (so ``rho_word("STSTST")`` equals
  kappa^-1 times the identity);
* :func:`rho` -- the honest linear representation of an
  :class:`ExtendedClass`, which corrects by kappa to the stored weight.

Dehn fillings of a knot complement are computed by pairing the knot vector
(eta times the column of coloured brackets) against rho(phi) f_1, where phi
is built from a continued-fraction word sending the meridian to the filling
slope, with the kappa correction accumulated through Maslov indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence, Union

from . import cyclo
from .cyclo import CycloScalar, conjugate, scalar
from .knots import DiagramError, PlanarDiagram
from .skein import colored_bracket

__all__ = [
    "QQLine",
    "MERIDIAN",
    "LONGITUDE",
    "maslov",
    "maslov_from_form",
    "ExtendedClass",
    "compose",
    "from_word",
    "identity_class",
    "S_WORD",
    "t_word",
    "rho",
    "rho_word",
    "s_matrix",
    "t_matrix",
    "TqftVector",
    "basis_vector",
    "hermitian",
    "knot_vector",
    "slope_word",
    "surgery_invariant",
    "one_over_k_invariant",
    "two_invariant",
    "mat_mul",
    "mat_vec",
]


# ---------------------------------------------------------------------------
# Lines in H_1(T^2; Q) and the Maslov index.
# ---------------------------------------------------------------------------

def _omega(x, y) -> Fraction:
    """The symplectic form with omega(meridian, longitude) = +1."""
    return Fraction(x[0]) * y[1] - Fraction(x[1]) * y[0]


@dataclass(frozen=True)
class QQLine:
    """A line through the origin of Q^2, held as a primitive (p, q) pair.

    The basis is (meridian a, longitude b); the sign is normalised so that
    q > 0, or p > 0 when q = 0.
    """

    p: int
    q: int

    def __init__(self, p, q):
        if isinstance(p, Fraction) or isinstance(q, Fraction):
            common = Fraction(p).denominator * Fraction(q).denominator
            p, q = int(Fraction(p) * common), int(Fraction(q) * common)
        if p == 0 and q == 0:
            raise ValueError("a line needs a nonzero direction")
        g = gcd(abs(p), abs(q))
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def vector(self):
        return (self.p, self.q)


MERIDIAN = QQLine(1, 0)
LONGITUDE = QQLine(0, 1)


def _as_line(x) -> QQLine:
    if isinstance(x, QQLine):
        return x
    return QQLine(x[0], x[1])


def maslov(x, y, z) -> int:
    """Maslov index of three lines: 0 when two coincide, else the sign rule.

    For z = alpha x + beta y the index is sign(alpha beta omega(x, y)); this
    is the convention fixed by the torus computations it must reproduce,
    e.g. maslov(b, a, p a + q b) = -sign(p/q).
    """
    lx, ly, lz = _as_line(x), _as_line(y), _as_line(z)
    if lx == ly or lx == lz or ly == lz:
        return 0
    vx, vy, vz = lx.vector(), ly.vector(), lz.vector()
    det = _omega(vx, vy)
    alpha = _omega(vz, vy) / det
    beta = _omega(vx, vz) / det
    value = alpha * beta * det
    return (value > 0) - (value < 0)


def maslov_from_form(x, y, z) -> int:
    """The same index as the signature of the pairing form on
    W = {(u, v) in L1 x L2 : u + v in L3}, with the orientation convention
    matching :func:`maslov`."""
    lx, ly, lz = _as_line(x), _as_line(y), _as_line(z)
    vx, vy, vz = lx.vector(), ly.vector(), lz.vector()
    # W is cut out of (s, t) space by s*omega(x,z) + t*omega(y,z) = 0
    c1, c2 = _omega(vx, vz), _omega(vy, vz)
    if c1 == 0 and c2 == 0:
        # all three lines coincide; the form vanishes
        return 0
    if c2 != 0:
        basis = [(c2, -c1)]
    else:
        basis = [(Fraction(0), Fraction(1))]
    sig = 0
    for (s, t) in basis:
        val = s * t * _omega(vx, vy)
        sig += (val > 0) - (val < 0)
    return sig


# ---------------------------------------------------------------------------
# The extended mapping class group of the torus.
# ---------------------------------------------------------------------------

_GEN_MATS = {
    "S": ((0, -1), (1, 0)),
    "T": ((1, 1), (0, 1)),
    "T'": ((1, -1), (0, 1)),
}

S_WORD = ("S",)


def t_word(k: int):
    """The word T^k (negative k uses the inverse generator)."""
    return ("T",) * k if k >= 0 else ("T'",) * (-k)


def _sl2_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0],
         a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0],
         a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _sl2_of_word(word):
    m = ((1, 0), (0, 1))
    for g in word:
        m = _sl2_mul(m, _GEN_MATS[g])
    return m


@dataclass(frozen=True)
class ExtendedClass:
    """A torus mapping class as a word in S, T, T^-1 plus an integer weight.

    The weight is the absolute weight of the extended class; composing
    extended classes adds weights and a Maslov correction with respect to
    the meridian Lagrangian.
    """

    word: tuple
    weight: int = 0

    def __post_init__(self):
        bad = [g for g in self.word if g not in _GEN_MATS]
        if bad:
            raise ValueError(f"unknown generators {bad}")

    @property
    def matrix(self):
        return _sl2_of_word(self.word)

    def image_of_meridian(self) -> QQLine:
        m = self.matrix
        return QQLine(m[0][0], m[1][0])


def identity_class() -> ExtendedClass:
    return ExtendedClass((), 0)


def compose(e1: ExtendedClass, e2: ExtendedClass) -> ExtendedClass:
    """(f, n) (g, m) = (fg, n + m + mu(L, f L, fg L)) with L the meridian."""
    f = e1.matrix
    fg = _sl2_mul(f, e2.matrix)
    mu = maslov(
        MERIDIAN,
        QQLine(f[0][0], f[1][0]),
        QQLine(fg[0][0], fg[1][0]),
    )
    return ExtendedClass(e1.word + e2.word, e1.weight + e2.weight + mu)


def from_word(word) -> ExtendedClass:
    """Compose the generators of the word, each at weight zero."""
    out = identity_class()
    for g in word:
        out = compose(out, ExtendedClass((g,), 0))
    return out


# ---------------------------------------------------------------------------
# The quantum representation.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def t_matrix(r: int, twist: int = 1):
    """Diagonal matrix of the Dehn twist: entries (-A)^(i^2-1)."""
    m = (r - 1) // 2
    a = cyclo.embed_a(r, twist)
    zero = scalar(r, 0)
    rows = []
    for i in range(1, m + 1):
        k = i * i - 1
        val = (-1 if k % 2 else 1) * a ** (k % (2 * r))
        rows.append(tuple(val if j == i else zero for j in range(1, m + 1)))
    return tuple(rows)


@lru_cache(maxsize=None)
def t_inv_matrix(r: int, twist: int = 1):
    m = (r - 1) // 2
    a = cyclo.embed_a(r, twist)
    zero = scalar(r, 0)
    rows = []
    for i in range(1, m + 1):
        k = i * i - 1
        val = (-1 if k % 2 else 1) * a ** ((-k) % (2 * r))
        rows.append(tuple(val if j == i else zero for j in range(1, m + 1)))
    return tuple(rows)


@lru_cache(maxsize=None)
def s_matrix(r: int, twist: int = 1):
    """The S-matrix: eta (-1)^(i+j) [ij]."""
    m = (r - 1) // 2
    et = cyclo.eta(r, twist)
    rows = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m + 1):
            sign = 1 if (i + j) % 2 == 0 else -1
            row.append(sign * et * cyclo.quantum_int(i * j, r, twist))
        rows.append(tuple(row))
    return tuple(rows)


def mat_mul(a, b):
    n, k, m2 = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m2):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v):
    out = []
    for row in a:
        acc = row[0] * v[0]
        for t in range(1, len(v)):
            acc = acc + row[t] * v[t]
        out.append(acc)
    return tuple(out)


def rho_word(word, r: int, twist: int = 1):
    """Bare product of generator matrices (the paper-style rho of a word)."""
    m = (r - 1) // 2
    out = tuple(
        tuple(scalar(r, 1 if i == j else 0) for j in range(m))
        for i in range(m)
    )
    mats = {
        "S": s_matrix(r, twist),
        "T": t_matrix(r, twist),
        "T'": t_inv_matrix(r, twist),
    }
    for g in word:
        out = mat_mul(out, mats[g])
    return out


def rho(e: ExtendedClass, r: int, twist: int = 1):
    """The linear representation of the extended class.

    Word-independent: kappa^(weight - accumulated word weight) times the
    word product, so rho of (Id, 1) is kappa times the identity.
    """
    base = rho_word(e.word, r, twist)
    drift = e.weight - from_word(e.word).weight
    if drift == 0:
        return base
    factor = cyclo.kappa(r, twist) ** (drift % (4 * r))
    return tuple(tuple(factor * x for x in row) for row in base)


# ---------------------------------------------------------------------------
# TQFT vectors and the knot-complement vector.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TqftVector:
    """A vector in the torus TQFT space at level r, in the basis f_1..f_m."""

    level: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != (self.level - 1) // 2:
            raise ValueError(
                f"level {self.level} vectors have {(self.level - 1) // 2} entries")

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __sub__(self, other):
        if self.level != other.level:
            raise ValueError("mixed levels")
        return TqftVector(
            self.level,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )

    def scale(self, c) -> "TqftVector":
        return TqftVector(self.level, tuple(c * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def serialize(self) -> str:
        return "[" + "; ".join(e.serialize() for e in self.entries) + "]"


def basis_vector(r: int, i: int) -> TqftVector:
    m = (r - 1) // 2
    if not 1 <= i <= m:
        raise ValueError(f"basis index {i} out of range")
    return TqftVector(r, tuple(
        scalar(r, 1 if j == i else 0) for j in range(1, m + 1)
    ))


def hermitian(u: TqftVector, v: TqftVector) -> CycloScalar:
    """The Hermitian pairing: sum_i u_i conj(v_i); anti-linear on the right."""
    if u.level != v.level:
        raise ValueError(f"mixed levels {u.level} vs {v.level}")
    acc = scalar(u.level, 0)
    for a, b in zip(u.entries, v.entries):
        acc = acc + a * conjugate(b)
    return acc


@lru_cache(maxsize=4096)
def knot_vector(knot: PlanarDiagram, r: int, twist: int = 1) -> TqftVector:
    """The vector of the knot exterior: eta times the coloured brackets.

    The first entry is eta (colour 1 is the empty cable); for the unknot the
    result equals rho(S) f_1 exactly.
    """
    if knot.n_components != 1:
        raise DiagramError("knot vector requires a one-component diagram")
    m = (r - 1) // 2
    et = cyclo.eta(r, twist)
    entries = [et]
    for i in range(2, m + 1):
        entries.append(et * colored_bracket(knot, i, r, twist))
    return TqftVector(r, tuple(entries))


# ---------------------------------------------------------------------------
# Surgery formulas.
# ---------------------------------------------------------------------------

SlopeLike = Union[Fraction, int, tuple, None, float, str]


def _slope_pair(s: SlopeLike):
    """Normalise a slope to a coprime pair (p, q) with q >= 0; None/'inf' is
    the meridian filling (1, 0)."""
    if s is None or s == "inf" or (isinstance(s, float) and s == float("inf")):
        return (1, 0)
    if isinstance(s, tuple):
        p, q = s
    elif isinstance(s, Fraction):
        p, q = s.numerator, s.denominator
    elif isinstance(s, int):
        p, q = s, 1
    else:
        raise TypeError(f"cannot interpret slope {s!r}")
    if q == 0:
        if p == 0:
            raise ValueError("0/0 is not a slope")
        return (1, 0)
    g = gcd(abs(p), abs(q))
    p, q = p // g, q // g
    if q < 0:
        p, q = -p, -q
    return (p, q)


def slope_word(p: int, q: int):
    """A word in S and T sending the meridian line to the line of slope p/q.

    Built from a continued-fraction expansion; any other valid choice
    differs by right T-factors and leaves the surgery pairing unchanged.
    """
    if (p, q) == (1, 0):
        return ()
    # peel syllables: T^k S sends (q, k q - p) to (p, q), so the word
    # T^(k_1) S T^(k_2) S ... T^(k_j) S sends (1, 0) to (p, q) up to sign
    syllables = []
    while q != 0:
        if q < 0:
            p, q = -p, -q
        k = 0 if p < 0 else -((-p) // q)  # ceil(p/q)
        syllables.append(k)
        p, q = q, k * q - p
    word = ()
    for k in syllables:
        word = word + t_word(k) + S_WORD
    return word


def surgery_invariant(knot: PlanarDiagram, s: SlopeLike, r: int,
                      twist: int = 1) -> CycloScalar:
    """The level-r invariant of the s-filling of the knot exterior, weight 0.

    kappa^(mu - sign s) <<Z(E_K), rho(phi) f_1>> with phi a word sending the
    meridian line to the filling line and mu its accumulated Maslov weight;
    the kappa correction always comes from extended-class composition, never
    from closed Dedekind-sum formulas.

    Orientation: the twist generator T acts on colours by the same
    eigenvalues as a positive kink of the bracket evaluator, which forces
    the filling of slope s to pair against the word built for the line of
    -s.  This is the choice that makes the pairing agree exactly with the
    state-sum invariant of the integer-framed surgery presentations.
    """
    p, q = _slope_pair(s)
    word = slope_word(p, -q)
    cls = from_word(word)
    if cls.image_of_meridian() != QQLine(p, -q):
        raise AssertionError(f"slope word for {p}/{q} is wrong")
    sign_s = 0 if (p == 0 or q == 0) else (1 if p * q > 0 else -1)
    v = knot_vector(knot, r, twist)
    mat = rho_word(word, r, twist)
    u = TqftVector(r, tuple(row[0] for row in mat))  # rho(word) f_1
    power = (cls.weight + sign_s) % (4 * r)
    return cyclo.kappa(r, twist) ** power * hermitian(v, u)


def one_over_k_invariant(knot: PlanarDiagram, k: int, r: int,
                         twist: int = 1) -> CycloScalar:
    """Closed form for 1/k fillings: <<Z(E_K), rho(S T^k S) f_1>>.

    The exponent follows the twist orientation fixed in
    :func:`surgery_invariant`; agrees with it at every slope 1/k.
    """
    word = S_WORD + t_word(k) + S_WORD
    mat = rho_word(word, r, twist)
    u = TqftVector(r, tuple(row[0] for row in mat))
    return hermitian(knot_vector(knot, r, twist), u)


def two_invariant(knot: PlanarDiagram, sign: int, r: int,
                  twist: int = 1) -> CycloScalar:
    """Closed form for the +2 or -2 filling:
    kappa^(+/-1) <<Z(E_K), rho(T^(-/+2) S) f_1>>."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    word = t_word(-2 * sign) + S_WORD
    mat = rho_word(word, r, twist)
    u = TqftVector(r, tuple(row[0] for row in mat))
    power = sign % (4 * r)
    return cyclo.kappa(r, twist) ** power * \
        hermitian(knot_vector(knot, r, twist), u)
