"""Graded complexes of free modules over ``Z[q, q^-1]`` and rank certificates
for their exactness, generically and after specializing ``q``.

If ``A -> B -> C`` is a complex and ``rank phi + rank psi = dim B`` at
``q = 1``, the same holds generically: ranks can only grow under
generization, and the complex condition caps the sum at ``dim B``.
Exactness is always certified here by computing both sides independently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .coact import Coaction, block_quotient, coinvariance_matrix
from .exactnum import LaurentMatrix, LaurentPoly, as_rational, rank
from .qalgebra import AlgebraHom, Monomial, NCPoly, multiply

__all__ = [
    "ComplexEntry",
    "GradedComplex",
    "PointRanks",
    "ExactnessReport",
    "check_complex",
    "exactness",
    "hom_matrix",
    "ideal_span_matrix",
    "build_fft_complex",
    "build_sft_complex",
    "witness_complex",
    "GENERIC",
    "Q1",
]

GENERIC = "generic"
Q1 = "q=1"


def _point_label(at) -> str:
    if at is None or at == GENERIC:
        return GENERIC
    lam = as_rational(1 if at == Q1 else at)
    if lam == 0:
        raise ValueError("cannot specialize at q = 0")
    return f"q={lam}"


def _point_value(at):
    if at is None or at == GENERIC:
        return None
    lam = as_rational(1 if at == Q1 else at)
    if lam == 0:
        raise ValueError("cannot specialize at q = 0")
    return lam


@dataclass
class ComplexEntry:
    """Degree-``d`` piece ``A_d --phi--> B_d --psi--> C_d``.

    When ``relations`` is set, ``C_d`` is a quotient: ``psi`` lands in blocks
    of ``relations.rows`` coordinates and each block is read modulo the
    column span of ``relations``.
    """

    d: int
    phi: LaurentMatrix
    psi: LaurentMatrix
    relations: Optional[LaurentMatrix] = None

    def __post_init__(self):
        if self.phi.rows != self.psi.cols:
            raise ValueError(f"degree {self.d}: phi has {self.phi.rows} rows but psi has {self.psi.cols} columns")
        if self.relations is not None and self.relations.rows and self.psi.rows % self.relations.rows:
            raise ValueError(f"degree {self.d}: psi rows are not whole relation blocks")

    @property
    def dim_a(self) -> int:
        return self.phi.cols

    @property
    def dim_b(self) -> int:
        return self.phi.rows

    def psi_effective(self, at=None) -> LaurentMatrix:
        lam = _point_value(at)
        if self.relations is None:
            return self.psi if lam is None else self.psi.specialize(lam)
        return block_quotient(self.psi, self.relations, lam)


@dataclass
class GradedComplex:
    labels: Tuple[str, str, str] = ("A", "B", "C")
    entries: Dict[int, ComplexEntry] = field(default_factory=dict)

    def add(self, entry: ComplexEntry) -> "GradedComplex":
        self.entries[entry.d] = entry
        return self

    def __getitem__(self, d: int) -> ComplexEntry:
        try:
            return self.entries[d]
        except KeyError:
            raise KeyError(f"degree {d} not present in complex") from None

    def degrees(self) -> List[int]:
        return sorted(self.entries)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "entries": [
                {
                    "d": e.d,
                    "phi": _matrix_json(e.phi),
                    "psi": _matrix_json(e.psi),
                    "relations": None if e.relations is None else _matrix_json(e.relations),
                }
                for e in (self.entries[d] for d in self.degrees())
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, doc: dict) -> "GradedComplex":
        out = cls(tuple(doc["labels"]))
        for e in doc["entries"]:
            rel = e.get("relations")
            out.add(
                ComplexEntry(
                    e["d"],
                    _matrix_from_json(e["phi"]),
                    _matrix_from_json(e["psi"]),
                    None if rel is None else _matrix_from_json(rel),
                )
            )
        return out

    @classmethod
    def loads(cls, text: str) -> "GradedComplex":
        return cls.from_json(json.loads(text))


def _matrix_json(M: LaurentMatrix) -> dict:
    ents = sorted(M.entries().items())
    return {"rows": M.rows, "cols": M.cols, "entries": [[i, j, str(v)] for (i, j), v in ents]}


def _matrix_from_json(doc: dict) -> LaurentMatrix:
    return LaurentMatrix(
        doc["rows"], doc["cols"], {(i, j): LaurentPoly.parse(s) for i, j, s in doc["entries"]}
    )


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def check_complex(C: GradedComplex, d: int) -> bool:
    """``psi . phi == 0`` exactly (in the quotient when relations are present)."""
    e = C[d]
    return (e.psi_effective() @ e.phi).is_zero()


@dataclass(frozen=True)
class PointRanks:
    point: str
    rank_phi: int
    rank_psi: int
    dim_b: int

    @property
    def exact(self) -> bool:
        return self.rank_phi + self.rank_psi == self.dim_b

    def to_json(self) -> dict:
        return {
            "point": self.point,
            "rank_phi": self.rank_phi,
            "rank_psi": self.rank_psi,
            "exact": self.exact,
        }


@dataclass
class ExactnessReport:
    degree: int
    dim_b: int
    points: Dict[str, PointRanks] = field(default_factory=dict)

    def exact_at(self, point) -> bool:
        return self.points[_point_label(point)].exact

    def lifting_consistent(self) -> bool:
        """Exact at ``q = 1`` implies exact generically (when both were evaluated)."""
        q1, gen = self.points.get(Q1), self.points.get(GENERIC)
        if q1 is None or gen is None:
            return True
        return gen.exact or not q1.exact

    def to_json(self) -> dict:
        return {
            "d": self.degree,
            "dim_b": self.dim_b,
            "points": [self.points[k].to_json() for k in sorted(self.points)],
        }


def exactness(C: GradedComplex, d: int, at: Union[str, Sequence, None] = (Q1, GENERIC)) -> ExactnessReport:
    """Rank certificate for exactness at ``B_d``.

    ``at`` is one evaluation point or a sequence of them; a point is
    ``"generic"``, ``"q=1"`` or a nonzero rational.
    """
    e = C[d]
    points = [at] if isinstance(at, (str, int, Fraction)) or at is None else list(at)
    rep = ExactnessReport(d, e.dim_b)
    for p in points:
        label = _point_label(p)
        lam = _point_value(p)
        rphi = rank(e.phi) if lam is None else rank(e.phi, at=lam)
        psi = e.psi_effective(lam)
        rpsi = rank(psi) if lam is None else rank(psi, at=lam)
        rep.points[label] = PointRanks(label, rphi, rpsi, e.dim_b)
    return rep


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def hom_matrix(hom: AlgebraHom, src_degree: int, target_basis: Sequence[Monomial]) -> LaurentMatrix:
    """Matrix of ``hom`` on the source component of degree ``src_degree`` in the
    coordinates ``target_basis`` (which must contain the image)."""
    index = {m: i for i, m in enumerate(target_basis)}
    cols = []
    for m in hom.source.basis(src_degree):
        img = hom.on_monomial(m)
        col = {}
        for mm, c in img.terms.items():
            if mm not in index:
                raise ValueError(f"image of {hom.source.format_monomial(m)} leaves the target coordinates")
            col[index[mm]] = c
        cols.append(col)
    return LaurentMatrix.from_columns(len(target_basis), cols)


def ideal_span_matrix(gens: Sequence[NCPoly], d: int) -> LaurentMatrix:
    """Columns ``m1 g m2`` over normal monomials with ``deg m1 + deg g + deg m2 = d``,
    in the coordinates of ``graded_basis(A, d)``.  The column span is the
    degree-``d`` component of the two-sided ideal generated by ``gens``."""
    if not gens:
        return LaurentMatrix(0, 0, {})
    A = gens[0].algebra
    index = A.basis_index(d)
    cols = []
    seen = set()
    for g in gens:
        if g.algebra != A:
            raise ValueError("ideal generators live in different algebras")
        degs = g.degrees()
        if len(degs) != 1:
            raise ValueError("ideal generators must be homogeneous")
        (dg,) = degs
        for k in range(d - dg + 1):
            for m1, m2 in product(A.basis(k), A.basis(d - dg - k)):
                left = NCPoly._raw(A, {m1: LaurentPoly.const(1)})
                right = NCPoly._raw(A, {m2: LaurentPoly.const(1)})
                v = multiply(multiply(left, g), right)
                if v.is_zero():
                    continue
                col = {index[m]: c for m, c in v.terms.items()}
                key = tuple(sorted((i, str(c)) for i, c in col.items()))
                if key in seen:
                    continue
                seen.add(key)
                cols.append(col)
    return LaurentMatrix.from_columns(len(index), cols)


def _source_degree(hom: AlgebraHom, d: int) -> Optional[int]:
    if d % hom.multiplier:
        return None
    return d // hom.multiplier


def build_fft_complex(c: Coaction, hom: Optional[AlgebraHom], d: int, full: bool = False) -> ComplexEntry:
    """``A_s --hom--> B_d --(coaction - unit (x) id)--> C_d`` with ``d = multiplier * s``.

    For ``interior`` and ``conjugation`` the middle term is the torus
    weight-zero summand of the carrier component unless ``full`` is set; the
    kernel of the coinvariance map lies there, so the exactness verdict is
    the same.  When ``d`` is not a multiple of the hom's degree multiplier,
    ``A`` is zero.
    """
    if d < 0:
        raise ValueError("degree must be >= 0")
    if hom is None:
        hom = c.source_hom()
    cm = coinvariance_matrix(c, d, full)
    s = _source_degree(hom, d)
    if s is None:
        phi = LaurentMatrix(len(cm.basis), 0, {})
    else:
        phi = hom_matrix(hom, s, cm.basis)
    return ComplexEntry(d, phi, cm.matrix, cm.relations)


def build_sft_complex(ideal_gens: Sequence[NCPoly], hom: AlgebraHom, d: int) -> ComplexEntry:
    """``I_d --inclusion--> A_d --hom--> B_{multiplier d}`` for the ideal
    generated by ``ideal_gens`` in the source of ``hom``."""
    A = hom.source
    basis = A.basis(d)
    if ideal_gens:
        phi = ideal_span_matrix(list(ideal_gens), d)
    else:
        phi = LaurentMatrix(len(basis), 0, {})
    target = hom.target.basis(hom.multiplier * d)
    psi = hom_matrix(hom, d, target)
    return ComplexEntry(d, phi, psi)


def witness_complex() -> GradedComplex:
    """``R --(q-1)--> R --> 0``: exact generically, not at ``q = 1``."""
    qm1 = LaurentPoly.parse("q - 1")
    return GradedComplex(("R", "R", "0")).add(
        ComplexEntry(0, LaurentMatrix(1, 1, {(0, 0): qm1}), LaurentMatrix(0, 1, {}))
    )
