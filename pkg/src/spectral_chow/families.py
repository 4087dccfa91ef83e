"""One-parameter spectral families over k[s] and their torsion-free quotients.

Over the PID k[s] a finitely presented module splits, via Smith normal form,
into a free part and torsion; dropping the torsion is the Cohen-Macaulay
modification of a finite cover of the parameter line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .fields import FieldError, QQ
from .matrix import Matrix, char_poly_coeffs
from .snf import smith_form
from .spectra import MatrixTuple, trace_powers
from .symtensor import ChowCoords, HitchinCoords, SymTensor, newton_p_to_e
from .unipoly import PolyRing, UniPoly


class IdenticallyDegenerate(ValueError):
    """The discriminant vanishes identically: the family is nowhere multiplicity free."""


class PolyMatrixTuple(MatrixTuple):
    """Commuting matrices with entries in k[s]."""

    @property
    def ring(self) -> PolyRing:
        return self.thetas[0].ring

    def evaluate(self, c) -> MatrixTuple:
        field = self.ring.field
        return MatrixTuple(tuple(t.map(lambda p: p(field(c)), field) for t in self.thetas), field)


class FamilyCoords(NamedTuple):
    a: ChowCoords
    b: HitchinCoords

    def evaluate(self, c):
        return FamilyCoords(self.a.map_coeffs(lambda p: p(p.field(c))),
                            self.b.map_coeffs(lambda p: p(p.field(c))))


def family_spectral_coords(t: PolyMatrixTuple) -> FamilyCoords:
    """Hitchin coordinates b_i(s) by traces, then Chow coordinates a_i(s) by Newton."""
    b = trace_powers(t)
    return FamilyCoords(newton_p_to_e(b), b)


def discriminant_n2(a1, a2):
    """a1^2 - 4 a2 for rank-two data (scalar polynomials or Sym tensors)."""
    if isinstance(a1, SymTensor):
        return a1 * a1 - a2.scale(4)
    return a1 * a1 - a2 * 4


@dataclass(frozen=True)
class ModulePresentation:
    """k[s]^generators modulo the column span of ``relations`` (generators x r)."""

    generators: int
    relations: Matrix

    def __post_init__(self):
        if self.relations.nrows != self.generators:
            raise ValueError("relation matrix needs one row per generator")

    @property
    def ring(self) -> PolyRing:
        return self.relations.ring

    def fiber_dimension(self, c) -> int:
        """dim_k of the module tensored with k[s]/(s - c)."""
        field = self.ring.field
        if self.relations.ncols == 0:
            return self.generators
        spec = self.relations.map(lambda p: p(field(c)), field)
        return self.generators - spec.rank()


class TorsionReport(NamedTuple):
    free_rank: int
    invariant_factors: list

    def fiber_length(self, c) -> int:
        """Fiber dimension at s = c read off the invariant factors."""
        return self.free_rank + sum(1 for f in self.invariant_factors if f(f.field(c)) == 0)


@dataclass(frozen=True)
class TorsionFreeQuotient:
    quotient: ModulePresentation
    report: TorsionReport
    free_indices: tuple
    U: Matrix
    U_inv: Matrix


def _analyse(m: ModulePresentation) -> TorsionFreeQuotient:
    ring = m.ring
    g = m.generators
    if m.relations.ncols == 0:
        ident = Matrix.identity(g, ring)
        return TorsionFreeQuotient(m, TorsionReport(g, []), tuple(range(g)), ident, ident)
    sf = smith_form(m.relations)
    diag = sf.diagonal
    nonzero = [i for i, x in enumerate(diag) if not x.is_zero()]
    factors = [diag[i] for i in nonzero if not diag[i].is_constant()]
    free = tuple(i for i in range(g) if i not in nonzero)
    killed = [sf.U_inv.column(i) for i in nonzero]
    rel = Matrix.from_columns(killed, g, ring) if killed else Matrix.zeros(g, 0, ring)
    quotient = ModulePresentation(g, rel)
    return TorsionFreeQuotient(quotient, TorsionReport(g - len(nonzero), factors), free, sf.U, sf.U_inv)


def torsion_free_quotient(m: ModulePresentation):
    """Return (quotient presentation, torsion report).

    The quotient keeps the original generators and adds the relations that
    kill the torsion submodule, so it presents a free k[s]-module.
    """
    res = _analyse(m)
    return res.quotient, res.report


def induced_endomorphism(m: ModulePresentation, phi: Matrix) -> Matrix:
    """Matrix of the endomorphism ``phi`` (on generator coordinates) on the torsion-free quotient.

    ``phi`` must preserve the relation module; the result is written in the
    free basis produced by the Smith form.
    """
    res = _analyse(m)
    conj = res.U @ phi @ res.U_inv
    free = res.free_indices
    torsion = [i for i in range(m.generators) if i not in free]
    leak = [conj.rows[i][j] for i in free for j in torsion]
    if any(not x.is_zero() for x in leak):
        raise ValueError("endomorphism does not preserve the torsion submodule")
    return conj.submatrix(free, free)


@dataclass(frozen=True)
class RuledExample:
    a1: UniPoly
    a2: UniPoly
    discriminant: UniPoly
    presentation: ModulePresentation
    report: TorsionReport
    quotient: ModulePresentation
    t1_action: Matrix
    quotient_t1_action: Matrix
    quotient_char_poly: tuple

    def fiber_profile(self, samples) -> list[tuple[object, int]]:
        return [(c, self.report.fiber_length(c)) for c in samples]


def ruled_surface_presentation(a1: UniPoly, a2: UniPoly):
    """k[s]-module structure of k[s][t1,t2]/(t1^2+a1 t1+a2, t2(2 t1+a1), t2^2).

    Generators (1, t1, t2); reduction rules t1^2 -> -a1 t1 - a2,
    t1 t2 -> -(a1/2) t2, t2^2 -> 0; the only module relation is
    (a1^2 - 4 a2) t2 = 0. Also returns multiplication by t1 on the generators.
    """
    ring = PolyRing(a1.field, a1.var)
    zero, one = ring.zero, ring.one
    disc = discriminant_n2(a1, a2)
    rel = Matrix([[zero], [zero], [disc]], ring)
    # columns: images of 1, t1, t2 under multiplication by t1
    t1 = Matrix([[zero, -a2, zero],
                 [one, -a1, zero],
                 [zero, zero, -a1 / 2]], ring)
    return ModulePresentation(3, rel), t1


def ruled_example(a1: UniPoly, a2: UniPoly) -> RuledExample:
    """Spectral data of the rank-two family on a product with P^1, and its CM model."""
    field = a1.field
    if field != a2.field:
        raise FieldError("a1 and a2 over different fields")
    if field.characteristic == 2:
        raise FieldError("the ruled example needs characteristic 0 or > 2")
    disc = discriminant_n2(a1, a2)
    if disc.is_zero():
        raise IdenticallyDegenerate("a1^2 - 4 a2 vanishes identically")
    pres, t1 = ruled_surface_presentation(a1, a2)
    quotient, report = torsion_free_quotient(pres)
    q_t1 = induced_endomorphism(pres, t1)
    coeffs = char_poly_coeffs(q_t1)
    return RuledExample(a1, a2, disc, pres, report, quotient, t1, q_t1, (coeffs[1], coeffs[2]))
