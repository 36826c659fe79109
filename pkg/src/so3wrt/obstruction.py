"""Purely cosmetic surgery obstructions: the finite vector set F_r,
orthogonality tests, slope-family bookkeeping and per-knot verdicts.

A knot passes the screen ("excluded") when every slope family that could
carry a purely cosmetic surgery pair is killed by some filter:

1. composite knots are excluded outright (metadata gate);
2. Delta''(1) != 0 or J'''(1) != 0 excludes the knot (classical filters);
3. genus and Heegaard Floer thickness metadata bound the candidate slope
   families to {+-2} or {+-1/k} with k below an explicit bound;
4. the Jones value at the fifth root of unity kills every {+-1/k} with k
   not divisible by 5 and the pair {+-2}, unless it equals 1 exactly;
5. at each prime level r >= 5, non-orthogonality of the knot-exterior
   vector to the F_r element of a residue class kills that class.

All orthogonality decisions are exact scalar comparisons in Q(zeta_{4r});
nothing downstream of a verdict ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from . import cyclo
from .cyclo import scalar, zeta
from .knots import KnotRecord, PlanarDiagram
from .skein import jones_polynomial
from .alexander import finite_type_filters
from .torus import (
    S_WORD,
    TqftVector,
    basis_vector,
    hermitian,
    knot_vector,
    mat_vec,
    rho_word,
    t_word,
)

__all__ = [
    "SlopeFamily",
    "TWO_FAMILY",
    "one_over_k_family",
    "all_one_over_k_family",
    "f_r_set",
    "unknot_orthogonality",
    "zeta5_test",
    "fr_orthogonality_report",
    "candidate_slopes",
    "full_verdict",
    "ObstructionVerdict",
    "ALL_FILTERS",
]

ALL_FILTERS = ("finite_type", "zeta5", "fr", "slopes")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


# ---------------------------------------------------------------------------
# Slope families.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SlopeFamily:
    """A family of candidate purely cosmetic slope pairs.

    kind "two" is the pair {+2, -2}; "one_over_k" is {+1/k, -1/k} for the
    stored k >= 1; "all_one_over_k" is the unbounded family used when genus
    or thickness metadata is missing, optionally cut down to residue classes
    (k must lie in ``residues[r]`` mod r for every recorded level r).
    """

    kind: str
    k: Optional[int] = None
    residues: tuple = ()  # sorted tuple of (r, tuple of allowed residues)

    def label(self) -> str:
        if self.kind == "two":
            return "{±2}"
        if self.kind == "one_over_k":
            return f"{{±1/{self.k}}}"
        if not self.residues:
            return "all {±1/k}"
        conds = ", ".join(
            "k ≡ " + " or ".join(str(c) for c in classes) + f" (mod {r})"
            for r, classes in self.residues
        )
        return "all {±1/k} with " + conds


TWO_FAMILY = SlopeFamily("two")


def one_over_k_family(k: int) -> SlopeFamily:
    return SlopeFamily("one_over_k", k)


def all_one_over_k_family() -> SlopeFamily:
    return SlopeFamily("all_one_over_k")


# ---------------------------------------------------------------------------
# The obstruction vectors F_r.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def f_r_set(r: int, twist: int = 1):
    """The labelled obstruction vectors at an odd prime level r >= 5.

    One vector per slope-pair family: for each residue class k in
    1..(r-1)/2 the difference rho(S T^k S) f_1 - rho(S T^-k S) f_1, and for
    {+-2} the combination kappa^-2 rho(T^-2 S) f_1 - rho(T^2 S) f_1.  The
    representatives are normalised so that pairing the knot-exterior vector
    against them gives the surgery-invariant differences directly:

        << Z(E_K), f_{k} >>  = Z(E_K(1/k)) - Z(E_K(-1/k)),
        << Z(E_K), f_{2} >>  = kappa (Z(E_K(2)) - Z(E_K(-2))).

    A knot with a purely cosmetic pair in a family must have exterior
    vector exactly orthogonal to that family's element.
    """
    if r == 3:
        raise ValueError(
            "level 3 is degenerate: every obstruction vector vanishes")
    if r < 5 or not _is_prime(r):
        raise ValueError(f"level must be an odd prime >= 5, got {r}")
    m = (r - 1) // 2
    out = []
    for k in range(1, m + 1):
        plus = rho_word(S_WORD + t_word(k) + S_WORD, r, twist)
        minus = rho_word(S_WORD + t_word(-k) + S_WORD, r, twist)
        vec = TqftVector(r, tuple(
            p[0] - q[0] for p, q in zip(plus, minus)
        ))
        out.append((one_over_k_family(k).label(), vec))
    km2 = cyclo.kappa(r, twist) ** (4 * r - 2)
    mat_minus = rho_word(t_word(-2) + S_WORD, r, twist)
    mat_plus = rho_word(t_word(2) + S_WORD, r, twist)
    vec2 = TqftVector(r, tuple(
        km2 * a[0] - b[0] for a, b in zip(mat_minus, mat_plus)
    ))
    out.append((TWO_FAMILY.label(), vec2))
    return tuple(out)


def unknot_orthogonality(r: int, twist: int = 1) -> bool:
    """The unknot-exterior vector rho(S) f_1 is orthogonal to all of F_r."""
    u = TqftVector(r, mat_vec(rho_word(S_WORD, r, twist),
                              basis_vector(r, 1).entries))
    zero = scalar(r, 0)
    return all(hermitian(u, vec) == zero for _, vec in f_r_set(r, twist))


# ---------------------------------------------------------------------------
# The level-5 Jones test.
# ---------------------------------------------------------------------------

def zeta5_test(knot: PlanarDiagram) -> bool:
    """True exactly when the Jones polynomial equals 1 at the fifth root of
    unity (tested at zeta_5^2; by the Galois action the value at any
    primitive fifth root is 1 simultaneously)."""
    j = jones_polynomial(knot)
    return j(zeta(5, 8)) == scalar(5, 1)


def fr_orthogonality_report(knot: PlanarDiagram, r: int, twist: int = 1):
    """Labels of the F_r elements exactly orthogonal to the exterior vector."""
    v = knot_vector(knot, r, twist)
    zero = scalar(r, 0)
    return [label for label, vec in f_r_set(r, twist)
            if hermitian(v, vec) == zero]


# ---------------------------------------------------------------------------
# Candidate slope families from external metadata.
# ---------------------------------------------------------------------------

def candidate_slopes(rec: KnotRecord):
    """Slope families compatible with the record's genus/thickness metadata.

    Genus-one knots and composite knots admit no purely cosmetic pair; thin
    knots (thickness 0) are limited to {±1} and {±2}; a known genus g >= 2
    bounds k by (th + 2g) / (2g(g-1)) with the crossing-number fallback
    th <= c/2 when thickness is unknown, and restricts {±2} to genus 2.
    Unknown genus yields the unbounded marker plus {±2}.
    """
    from fractions import Fraction

    if rec.prime is False:
        return []
    g = rec.genus
    th = rec.thickness
    if g == 1:
        return []
    if g is None or g == 0:
        if th == 0:
            return [one_over_k_family(1), TWO_FAMILY]
        return [all_one_over_k_family(), TWO_FAMILY]
    # genus known and >= 2
    eff_th = Fraction(th) if th is not None else Fraction(rec.crossing_number, 2)
    bound = (eff_th + 2 * g) / (2 * g * (g - 1))
    fams = [one_over_k_family(k) for k in range(1, int(bound) + 1)]
    if g == 2:
        fams.append(TWO_FAMILY)
    return fams


# ---------------------------------------------------------------------------
# Verdicts.
# ---------------------------------------------------------------------------

@dataclass
class ObstructionVerdict:
    """Per-knot screening outcome; serialisable via :meth:`to_json`."""

    name: str
    filters_applied: list = field(default_factory=list)
    delta2: Optional[int] = None
    jones3: Optional[int] = None
    zeta5_trivial: Optional[bool] = None
    candidate_slopes: list = field(default_factory=list)
    fr_orthogonal_hits: dict = field(default_factory=dict)
    conclusion: object = None  # "excluded" or {"residual": [...]}

    def excluded(self) -> bool:
        return self.conclusion == "excluded"

    def to_json(self):
        return {
            "name": self.name,
            "filters_applied": list(self.filters_applied),
            "delta2": self.delta2,
            "jones3": self.jones3,
            "zeta5_trivial": self.zeta5_trivial,
            "candidate_slopes": list(self.candidate_slopes),
            "fr_orthogonal_hits": {
                str(r): list(v) for r, v in self.fr_orthogonal_hits.items()
            },
            "conclusion": self.conclusion,
        }


def _kill_by_level(survivors, r: int, hits):
    """Remove the families excluded by the orthogonality report at level r."""
    hit_set = set(hits)
    out = []
    for fam in survivors:
        if fam.kind == "two":
            if TWO_FAMILY.label() in hit_set:
                out.append(fam)
            continue
        if fam.kind == "one_over_k":
            kr = fam.k % r
            if kr == 0:
                out.append(fam)  # residue 0 mod r is invisible at level r
                continue
            l = min(kr, r - kr)
            if one_over_k_family(l).label() in hit_set:
                out.append(fam)
            continue
        # unbounded family: cut down to the surviving residue classes
        allowed = [0]
        for l in range(1, (r - 1) // 2 + 1):
            if one_over_k_family(l).label() in hit_set:
                allowed.append(l)
        if allowed == [0] or len(allowed) < (r + 1) // 2:
            new_res = fam.residues + ((r, tuple(allowed)),)
            out.append(SlopeFamily("all_one_over_k", None, new_res))
        else:
            out.append(fam)
    return out


def full_verdict(rec: KnotRecord, levels=(5,), filters=ALL_FILTERS,
                 twist: int = 1) -> ObstructionVerdict:
    """Run the ordered filter pipeline on one census record.

    The conclusion is "excluded" exactly when no candidate slope family
    survives every enabled filter at every level.
    """
    verdict = ObstructionVerdict(name=rec.name)
    filters = tuple(filters)
    excluded_reason = None

    if rec.prime is False:
        verdict.filters_applied.append("composite: excluded (prime summands only)")
        excluded_reason = "composite"

    if "finite_type" in filters:
        d2, j3 = finite_type_filters(rec.pd)
        verdict.delta2, verdict.jones3 = d2, j3
        if excluded_reason is None and d2 != 0:
            verdict.filters_applied.append("finite_type: Δ''(1) ≠ 0 excludes")
            excluded_reason = "delta2"
        elif excluded_reason is None and j3 != 0:
            verdict.filters_applied.append("finite_type: J'''(1) ≠ 0 excludes")
            excluded_reason = "jones3"
        else:
            verdict.filters_applied.append("finite_type: passed through")

    if "slopes" in filters:
        survivors = candidate_slopes(rec)
        verdict.filters_applied.append(
            f"slopes: {len(survivors)} candidate families")
    else:
        survivors = [all_one_over_k_family(), TWO_FAMILY]
    verdict.candidate_slopes = [f.label() for f in survivors]
    if excluded_reason is None and not survivors:
        excluded_reason = "slopes"

    if "zeta5" in filters and excluded_reason is None:
        trivial = zeta5_test(rec.pd)
        verdict.zeta5_trivial = trivial
        if not trivial:
            kept = []
            for fam in survivors:
                if fam.kind == "two":
                    continue
                if fam.kind == "one_over_k":
                    if fam.k % 5 == 0:
                        kept.append(fam)
                    continue
                kept.append(SlopeFamily(
                    "all_one_over_k", None, fam.residues + ((5, (0,)),)))
            survivors = kept
            verdict.filters_applied.append(
                "zeta5: J(ζ₅) ≠ 1 kills {±2} and every {±1/k} with 5 ∤ k")
            if not survivors:
                excluded_reason = "zeta5"
        else:
            verdict.filters_applied.append("zeta5: J(ζ₅) = 1, no exclusion")
    elif "zeta5" in filters:
        verdict.zeta5_trivial = zeta5_test(rec.pd)

    if "fr" in filters and excluded_reason is None and survivors:
        for r in levels:
            hits = fr_orthogonality_report(rec.pd, r, twist)
            verdict.fr_orthogonal_hits[r] = hits
            survivors = _kill_by_level(survivors, r, hits)
            verdict.filters_applied.append(
                f"fr[{r}]: {len(hits)} orthogonal, "
                f"{len(survivors)} families remain")
            if not survivors:
                excluded_reason = f"fr[{r}]"
                break

    if excluded_reason is not None or not survivors:
        verdict.conclusion = "excluded"
    else:
        verdict.conclusion = {"residual": [f.label() for f in survivors]}
    return verdict
