"""End-to-end degree-by-degree verification of the first and second
fundamental theorems for the interior, SL_r and conjugation coactions,
with a classical ``q = 1`` rerun of the same pipeline."""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import sympy

from .coact import (
    Coaction,
    beta_conjugation,
    minor_generators,
    solve_domain,
    tau,
)
from .exactnum import LaurentMatrix, LaurentPoly, as_rational, kernel_basis, rank
from .lifting import (
    GENERIC,
    Q1,
    ComplexEntry,
    ExactnessReport,
    GradedComplex,
    build_fft_complex,
    build_sft_complex,
    check_complex,
    exactness,
    hom_matrix,
)
from .qalgebra import NCPoly, QuantumMatrix, from_vector, multiply
from .qhopf import quantum_minor_cached

__all__ = [
    "CeilingExceeded",
    "ExperimentParams",
    "Report",
    "DEFAULT_CEILING",
    "verify_interior",
    "verify_slr",
    "verify_conjugation",
    "verify",
    "classical_baseline",
    "classical_trace",
    "weighted_partitions",
]

DEFAULT_CEILING = 4000


class CeilingExceeded(ValueError):
    """A graded component needed by the experiment is larger than the ceiling."""


def default_ceiling() -> int:
    env = os.environ.get("QCOINV_CEILING")
    return int(env) if env else DEFAULT_CEILING


@dataclass(frozen=True)
class ExperimentParams:
    kind: str
    params: Tuple[int, ...]
    dmax: int
    lambdas: Tuple[Fraction, ...] = ()
    baseline: bool = False
    ceiling: Optional[int] = None
    full_domain: bool = False
    qvalue: Optional[Fraction] = None
    corrupt: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        object.__setattr__(self, "lambdas", tuple(as_rational(x) for x in self.lambdas))
        if self.dmax < 0:
            raise ValueError("dmax must be >= 0")
        if any(x == 0 for x in self.lambdas):
            raise ValueError("cannot specialize at q = 0")
        # Coaction validates the shape parameters
        self.coaction()

    def coaction(self) -> Coaction:
        return Coaction(self.kind, self.params, qvalue=self.qvalue, corrupt=self.corrupt)

    @property
    def limit(self) -> int:
        return self.ceiling if self.ceiling is not None else default_ceiling()

    def points(self) -> List:
        return [Q1, GENERIC, *self.lambdas]

    def classical(self) -> "ExperimentParams":
        return replace(self, qvalue=Fraction(1), lambdas=())

    def to_json(self) -> dict:
        names = {"interior": ("m", "n", "t"), "slr": ("n", "r"), "conjugation": ("n",)}[self.kind]
        out = dict(zip(names, self.params))
        out["dmax"] = self.dmax
        out["lambda"] = [str(x) for x in self.lambdas]
        out["q"] = "generic" if self.qvalue is None else str(self.qvalue)
        if self.corrupt:
            out["debug"] = sorted(self.corrupt)
        return out


@dataclass
class Report:
    experiment: str
    params: dict
    degrees: List[dict] = field(default_factory=list)
    checks: List[dict] = field(default_factory=list)
    wall_ms: Optional[int] = None

    @property
    def verdict(self) -> bool:
        return all(r["pass"] for r in self.degrees) and all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "experiment": self.experiment,
            "params": self.params,
            "degrees": self.degrees,
            "checks": self.checks,
            "verdict": "pass" if self.verdict else "fail",
            "wall_ms": self.wall_ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    def dimension_table(self) -> List[Tuple]:
        """The integer dimensions only, for comparing runs."""
        rows = []
        for r in self.degrees:
            rows.append(tuple(sorted((k, v) for k, v in r.items() if k.startswith("dim_"))))
        return rows

    def markdown(self) -> str:
        doc = self.to_json()
        lines = [f"# {doc['experiment']}", ""]
        lines.append(", ".join(f"{k}={doc['params'][k]}" for k in sorted(doc["params"])))
        lines.append("")
        cols = sorted({k for r in doc["degrees"] for k in r if k not in ("exactness",)})
        cols.sort(key=lambda k: (k not in ("section", "d"), k))
        lines.append("| " + " | ".join(cols) + " |")
        lines.append("|" + "---|" * len(cols))
        for r in doc["degrees"]:
            lines.append("| " + " | ".join(_md_cell(r.get(k)) for k in cols) + " |")
        ex = [(r["section"], r["d"], e) for r in doc["degrees"] for e in r.get("exactness", [])]
        if ex:
            lines += ["", "## Exactness", "", "| section | d | complex | point | rank_phi | rank_psi | dim_b | exact |", "|---|---|---|---|---|---|---|---|"]
            for sec, d, e in ex:
                for p in e["points"]:
                    lines.append(
                        f"| {sec} | {d} | {e['complex']} | {p['point']} | {p['rank_phi']} | {p['rank_psi']} | {e['dim_b']} | {_md_cell(p['exact'])} |"
                    )
        if doc["checks"]:
            lines += ["", "## Checks", ""]
            for c in doc["checks"]:
                lines.append(f"- {c['name']}: {'pass' if c['pass'] else 'FAIL'}")
        lines += ["", f"verdict: **{doc['verdict']}**", f"wall_ms: {_md_cell(doc['wall_ms'])}", ""]
        return "\n".join(lines)


def _md_cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _timings_enabled() -> bool:
    return os.environ.get("QCOINV_TIMINGS", "") not in ("", "0")


# ---------------------------------------------------------------------------
# Shared pieces
# ---------------------------------------------------------------------------


def _guard(p: ExperimentParams, label: str, dim: int) -> None:
    if dim > p.limit:
        raise CeilingExceeded(f"{label} has dimension {dim}, above the ceiling {p.limit}")


def _exact_record(name: str, entry: ComplexEntry, points) -> Tuple[dict, ExactnessReport]:
    C = GradedComplex().add(entry)
    rep = exactness(C, entry.d, points)
    doc = rep.to_json()
    doc["complex"] = name
    return doc, rep


def _lifting_ok(rep: ExactnessReport) -> bool:
    return rep.exact_at(Q1) and rep.exact_at(GENERIC) and rep.lifting_consistent()


def _vectors_span_contains(vectors: Sequence[Sequence], target: Sequence) -> bool:
    """Whether ``target`` lies in the span of ``vectors`` (rational entries)."""
    M = LaurentMatrix.from_columns(len(target), [{i: x for i, x in enumerate(v) if x} for v in vectors])
    aug = M.hstack(LaurentMatrix.from_columns(len(target), [{i: x for i, x in enumerate(target) if x}]))
    return rank(M, at=1) == rank(aug, at=1)


def weighted_partitions(d: int, n: int) -> int:
    """Number of partitions of ``d`` into parts of size at most ``n``."""
    ways = [1] + [0] * d
    for part in range(1, n + 1):
        for k in range(part, d + 1):
            ways[k] += ways[k - part]
    return ways[d]


# ---------------------------------------------------------------------------
# Interior action
# ---------------------------------------------------------------------------


def _minor_generators_of(S: QuantumMatrix, k: int) -> List[NCPoly]:
    if k > min(S.m, S.n):
        return []
    return [
        quantum_minor_cached(S, rows, cols)
        for rows in combinations(range(1, S.m + 1), k)
        for cols in combinations(range(1, S.n + 1), k)
    ]


def verify_interior(p: ExperimentParams) -> Report:
    if p.kind != "interior":
        raise ValueError("verify_interior needs an interior experiment")
    m, n, t = p.params
    c = p.coaction()
    hom = c.source_hom()
    S = hom.source
    for e in range(2 * p.dmax + 1):
        _guard(p, f"carrier degree {e}", c.carrier.dimension(e))
    for d in range(p.dmax + 1):
        _guard(p, f"source degree {d}", S.dimension(d))
    points = p.points()
    rep = Report("interior", p.to_json())
    ideal_gens = _minor_generators_of(S, t + 1)
    for d in range(p.dmax + 1):
        if d > 0:
            e = 2 * d - 1
            dom = solve_domain(c, e, p.full_domain)
            entry = build_fft_complex(c, hom, e, p.full_domain)
            ex, _ = _exact_record("coinvariants", entry, [GENERIC])
            rep.degrees.append(
                {
                    "section": "odd",
                    "d": e,
                    "dim_carrier": c.carrier.dimension(e),
                    "dim_domain": len(dom),
                    "dim_coinv": entry.dim_b - ex["points"][0]["rank_psi"],
                    "pass": True,
                }
            )
        e = 2 * d
        fft = build_fft_complex(c, hom, e, p.full_domain)
        contained = check_complex(GradedComplex().add(fft), e)
        ex1, r1 = _exact_record("coinvariants", fft, points)
        g1 = r1.points[GENERIC]
        dim_coinv = fft.dim_b - g1.rank_psi
        dim_image = g1.rank_phi
        sft = build_sft_complex(ideal_gens, hom, d)
        ideal_in_kernel = check_complex(GradedComplex().add(sft), d)
        ex2, r2 = _exact_record("kernel", sft, points)
        g2 = r2.points[GENERIC]
        dim_kernel = sft.dim_b - g2.rank_psi
        dim_ideal = g2.rank_phi
        ok = (
            contained
            and dim_coinv == dim_image
            and ideal_in_kernel
            and dim_kernel == dim_ideal
            and g2.rank_psi == dim_image
            and _lifting_ok(r1)
            and _lifting_ok(r2)
        )
        rep.degrees.append(
            {
                "section": "even",
                "d": e,
                "source_degree": d,
                "dim_carrier": c.carrier.dimension(e),
                "dim_domain": fft.dim_b,
                "dim_coinv": dim_coinv,
                "dim_image": dim_image,
                "image_in_coinv": contained,
                "dim_source": sft.dim_b,
                "dim_kernel": dim_kernel,
                "dim_ideal": dim_ideal,
                "ideal_in_kernel": ideal_in_kernel,
                "exactness": [ex1, ex2],
                "pass": ok,
            }
        )
    return rep


# ---------------------------------------------------------------------------
# SL_r action
# ---------------------------------------------------------------------------


def _kernel_elements(hom, d: int) -> Tuple[List[NCPoly], LaurentMatrix]:
    """Basis of the kernel of ``hom`` on source degree ``d``, as elements."""
    M = hom_matrix(hom, d, hom.target.basis(hom.multiplier * d))
    return [from_vector(hom.source, d, v) for v in kernel_basis(M)], M


def _plucker_vector(F, n: int) -> List[int]:
    """Coordinates of ``L12 L34 - L13 L24 + L14 L23`` in the degree-4 words."""
    idx = {I: g for g, I in enumerate(minor_generators(n, 2))}
    word = {
        (idx[(1, 2)], idx[(3, 4)]): 1,
        (idx[(1, 3)], idx[(2, 4)]): -1,
        (idx[(1, 4)], idx[(2, 3)]): 1,
    }
    return [word.get(m, 0) for m in F.basis(4)]


def verify_slr(p: ExperimentParams) -> Report:
    if p.kind != "slr":
        raise ValueError("verify_slr needs an slr experiment")
    n, r = p.params
    c = p.coaction()
    hom = c.source_hom()
    F = hom.source
    kmax = max(3, p.dmax // r)
    for d in range(p.dmax + 1):
        _guard(p, f"carrier degree {d}", c.carrier.dimension(d))
    for k in range(1, kmax + 1):
        _guard(p, f"carrier degree {k * r}", c.carrier.dimension(k * r))
        _guard(p, f"word degree {k}", F.dimension(k * r))
    points = p.points()
    rep = Report("slr", p.to_json())
    for d in range(p.dmax + 1):
        fft = build_fft_complex(c, hom, d)
        contained = check_complex(GradedComplex().add(fft), d)
        ex, er = _exact_record("coinvariants", fft, points)
        g = er.points[GENERIC]
        dim_coinv = fft.dim_b - g.rank_psi
        rec = {
            "section": "coinvariants",
            "d": d,
            "dim_carrier": fft.dim_b,
            "dim_coinv": dim_coinv,
            "dim_image": g.rank_phi,
            "image_in_coinv": contained,
            "divisible": d % r == 0,
            "exactness": [ex],
            "pass": contained and dim_coinv == g.rank_phi and _lifting_ok(er),
        }
        rep.degrees.append(rec)
    # relations among the minors, by word degree k (weighted degree k r)
    low: List[NCPoly] = []
    for k in range(1, kmax + 1):
        kern, _ = _kernel_elements(hom, k * r)
        if k <= 2:
            low.extend(kern)
        sft = build_sft_complex(low, hom, k * r)
        contained = check_complex(GradedComplex().add(sft), k * r)
        ex, er = _exact_record("relations", sft, points)
        g = er.points[GENERIC]
        rep.degrees.append(
            {
                "section": "relations",
                "d": k,
                "dim_words": sft.dim_b,
                "dim_image": g.rank_psi,
                "dim_kernel": len(kern),
                "dim_ideal": g.rank_phi,
                "ideal_in_kernel": contained,
                "exactness": [ex],
                "pass": contained
                and sft.dim_b - g.rank_psi == len(kern)
                and g.rank_phi == len(kern)
                and _lifting_ok(er),
            }
        )
    if r == 2 and n >= 4 and kmax >= 2:
        kern, _ = _kernel_elements(hom, 4)
        vecs = [[x.specialize(1) for x in _coords(F, 4, f)] for f in kern]
        independent = rank(LaurentMatrix.from_columns(F.dimension(4), [{i: x for i, x in enumerate(v) if x} for v in vecs]), at=1) == len(vecs)
        has = _vectors_span_contains(vecs, _plucker_vector(F, n))
        rep.checks.append({"name": "plucker_in_q1_kernel", "pass": bool(has and independent)})
    return rep


def _coords(A, d: int, f: NCPoly) -> List[LaurentPoly]:
    index = A.basis_index(d)
    out = [LaurentPoly.const(0)] * len(index)
    for m, c in f.terms.items():
        out[index[m]] = c
    return out


# ---------------------------------------------------------------------------
# Conjugation action
# ---------------------------------------------------------------------------


def classical_trace(n: int, i: int) -> NCPoly:
    """Sum of the principal ``i x i`` minors of a commuting ``n x n`` matrix,
    computed with sympy and written in the ``q = 1`` algebra."""
    A = QuantumMatrix(n, n, qvalue=Fraction(1))
    xs = sympy.Matrix(n, n, lambda a, b: sympy.Symbol(f"x{a}_{b}"))
    total = sum((xs.extract(list(I), list(I)).det() for I in combinations(range(n), i)), sympy.Integer(0))
    poly = sympy.Poly(sympy.expand(total), *[xs[a, b] for a in range(n) for b in range(n)])
    terms = {}
    for exps, coef in poly.terms():
        mono = tuple(g for g, e in enumerate(exps) for _ in range(e))
        terms[mono] = LaurentPoly.const(Fraction(int(coef.p), int(coef.q)))
    return NCPoly(A, terms)


def verify_conjugation(p: ExperimentParams) -> Report:
    if p.kind != "conjugation":
        raise ValueError("verify_conjugation needs a conjugation experiment")
    (n,) = p.params
    c = p.coaction()
    hom = c.source_hom()
    F = hom.source
    A = c.carrier
    for d in range(p.dmax + 1):
        _guard(p, f"carrier degree {d}", A.dimension(d))
        _guard(p, f"word degree {d}", F.dimension(d))
    points = p.points()
    rep = Report("conjugation", p.to_json())
    taus = [tau(n, i, A) for i in range(1, n + 1)]
    for i, t in enumerate(taus, start=1):
        ok = beta_conjugation(t, i).equals_unit_tensor(t)
        rep.checks.append({"name": f"beta_fixes_tau_{i}", "pass": ok})
    for i, j in combinations(range(n), 2):
        comm = multiply(taus[i], taus[j]) - multiply(taus[j], taus[i])
        rep.checks.append({"name": f"tau_{i + 1}_tau_{j + 1}_commute", "pass": comm.is_zero()})
    commutators = []
    for i, j in combinations(range(n), 2):
        gi = NCPoly(F, {(i,): LaurentPoly.const(1)})
        gj = NCPoly(F, {(j,): LaurentPoly.const(1)})
        commutators.append(multiply(gi, gj) - multiply(gj, gi))
    for d in range(p.dmax + 1):
        fft = build_fft_complex(c, hom, d, p.full_domain)
        contained = check_complex(GradedComplex().add(fft), d)
        ex1, r1 = _exact_record("coinvariants", fft, points)
        g1 = r1.points[GENERIC]
        dim_coinv = fft.dim_b - g1.rank_psi
        sft = build_sft_complex(commutators, hom, d)
        ideal_in_kernel = check_complex(GradedComplex().add(sft), d)
        ex2, r2 = _exact_record("kernel", sft, points)
        g2 = r2.points[GENERIC]
        parts = weighted_partitions(d, n)
        ok = (
            contained
            and dim_coinv == g1.rank_phi
            and ideal_in_kernel
            and sft.dim_b - g2.rank_psi == g2.rank_phi
            and g2.rank_psi == parts
            and _lifting_ok(r1)
            and _lifting_ok(r2)
        )
        rep.degrees.append(
            {
                "section": "coinvariants",
                "d": d,
                "dim_carrier": A.dimension(d),
                "dim_domain": fft.dim_b,
                "dim_coinv": dim_coinv,
                "dim_image": g1.rank_phi,
                "image_in_coinv": contained,
                "dim_words": sft.dim_b,
                "dim_kernel": sft.dim_b - g2.rank_psi,
                "dim_ideal": g2.rank_phi,
                "ideal_in_kernel": ideal_in_kernel,
                "dim_partitions": parts,
                "exactness": [ex1, ex2],
                "pass": ok,
            }
        )
    if p.qvalue == 1:
        for i in range(1, n + 1):
            ok = taus[i - 1] == classical_trace(n, i)
            rep.checks.append({"name": f"tau_{i}_is_classical_trace", "pass": ok})
    return rep


# ---------------------------------------------------------------------------
# Dispatch and baseline
# ---------------------------------------------------------------------------

_VERIFIERS = {"interior": verify_interior, "slr": verify_slr, "conjugation": verify_conjugation}


def verify(p: ExperimentParams) -> Report:
    t0 = time.perf_counter()
    rep = _VERIFIERS[p.kind](p)
    if p.baseline:
        base = classical_baseline(p)
        rep.checks.extend(base.checks)
    if _timings_enabled():
        rep.wall_ms = int((time.perf_counter() - t0) * 1000)
    return rep


def classical_baseline(p: ExperimentParams) -> Report:
    """Rerun at ``q = 1`` and compare dimension tables with the generic run."""
    t0 = time.perf_counter()
    quantum = _VERIFIERS[p.kind](replace(p, baseline=False))
    classical = _VERIFIERS[p.kind](replace(p.classical(), baseline=False))
    classical.experiment = f"{p.kind}-classical"
    same = quantum.dimension_table() == classical.dimension_table()
    classical.checks.append({"name": "classical_dimensions_match_quantum", "pass": same})
    if _timings_enabled():
        classical.wall_ms = int((time.perf_counter() - t0) * 1000)
    return classical
