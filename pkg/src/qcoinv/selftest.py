"""Seeded property suites: associativity, centrality of det_q, homomorphism
checks for mu_q*, Hopf axioms and comodule axioms."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, List

from .coact import lambda_left, mu_hom, rho_right
from .exactnum import LaurentPoly
from .qalgebra import NCPoly, QuantumMatrix, multiply
from .qhopf import (
    GLElement,
    comultiply,
    comultiply_hom,
    convolve,
    counit,
    det_q,
    tensor_map,
)

__all__ = ["SuiteResult", "run_suites", "random_element", "SUITES"]


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    passed: int = 0
    failures: List[str] = field(default_factory=list)

    def record(self, ok: bool, label: str) -> None:
        self.total += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(label)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        return f"{self.name}: {self.passed}/{self.total} {'ok' if self.ok else 'FAIL'}"


def random_element(A: QuantumMatrix, d: int, rng: random.Random, nterms: int = 3) -> NCPoly:
    """A random homogeneous element with small Laurent coefficients."""
    basis = A.basis(d)
    terms = {}
    for _ in range(nterms):
        mono = basis[rng.randrange(len(basis))]
        coef = LaurentPoly({rng.randint(-2, 2): rng.choice([-3, -2, -1, 1, 2, 3])})
        terms[mono] = terms.get(mono, LaurentPoly.const(0)) + coef
    return NCPoly(A, terms)


def associativity(rng: random.Random, corrupt=frozenset(), triples: int = 200) -> SuiteResult:
    res = SuiteResult("associativity")
    for k in range(triples):
        A = QuantumMatrix(2, 2, corrupt=corrupt) if k % 2 == 0 else QuantumMatrix(3, 3, corrupt=corrupt)
        f, g, h = (random_element(A, rng.randint(0, 3), rng) for _ in range(3))
        ok = multiply(multiply(f, g), h) == multiply(f, multiply(g, h))
        res.record(ok, f"triple {k} in {A.m}x{A.n}")
    return res


def centrality(rng: random.Random, corrupt=frozenset()) -> SuiteResult:
    res = SuiteResult("det-centrality")
    for t in (2, 3):
        A = QuantumMatrix(t, t, corrupt=corrupt)
        D = det_q(A)
        for g in range(A.ngens):
            x = NCPoly(A, {(g,): LaurentPoly.const(1)})
            res.record(multiply(D, x) == multiply(x, D), f"det_q commutes with generator {g} (t={t})")
    return res


def homomorphism(rng: random.Random, corrupt=frozenset()) -> SuiteResult:
    res = SuiteResult("mu-homomorphism")
    for m, n, t in ((2, 2, 1), (3, 3, 2)):
        hom = mu_hom(m, n, t, corrupt=corrupt)
        S = hom.source
        for a, b in product(range(S.ngens), repeat=2):
            xa = NCPoly(S, {(a,): LaurentPoly.const(1)})
            xb = NCPoly(S, {(b,): LaurentPoly.const(1)})
            ok = hom(multiply(xa, xb)) == multiply(hom(xa), hom(xb))
            res.record(ok, f"mu({a}*{b}) for ({m},{n},{t})")
    return res


def hopf(rng: random.Random, corrupt=frozenset()) -> SuiteResult:
    res = SuiteResult("hopf-axioms")
    for t in (1, 2):
        A = QuantumMatrix(t, t, corrupt=corrupt)
        delta = comultiply_hom(A)
        T = delta.target
        for g in range(A.ngens):
            x = NCPoly(A, {(g,): LaurentPoly.const(1)})
            dx = comultiply(x)
            left = tensor_map(lambda f: delta(f), None, dx)
            right = tensor_map(None, lambda f: delta(f), dx)
            res.record(_reassoc(left) == _reassoc_right(right), f"coassociativity on generator {g} (t={t})")
            res.record(_counit_contract(dx, "left") == x, f"left counit on generator {g} (t={t})")
            res.record(_counit_contract(dx, "right") == x, f"right counit on generator {g} (t={t})")
            el = GLElement(x, 0)
            unit = GLElement.one(A) * GLElement(NCPoly(A, {(): counit(x)}), 0)
            for side in ("left", "right"):
                res.record(convolve(el, side) == unit, f"{side} antipode on generator {g} (t={t})")
        D = det_q(A)
        res.record(comultiply(D) == T.pure(D, D), f"det_q grouplike (t={t})")
        res.record(counit(D) == 1, f"counit of det_q (t={t})")
        dinv = GLElement.det_inverse(A)
        for side in ("left", "right"):
            res.record(convolve(dinv, side) == GLElement.one(A), f"{side} antipode on det^-1 (t={t})")
    return res


def comodule(rng: random.Random, corrupt=frozenset()) -> SuiteResult:
    res = SuiteResult("comodule-axioms")
    for m, t in ((2, 1), (2, 2), (3, 2)):
        A = QuantumMatrix(m, t, corrupt=corrupt)
        B = QuantumMatrix(t, m, corrupt=corrupt)
        H = QuantumMatrix(t, t, corrupt=corrupt)
        delta = comultiply_hom(H)
        for g in range(A.ngens):
            x = NCPoly(A, {(g,): LaurentPoly.const(1)})
            r = rho_right(x)
            lhs = tensor_map(None, lambda f: delta(f), r)
            rhs = tensor_map(lambda f: rho_right(f), None, r)
            res.record(_reassoc_right(lhs) == _reassoc(rhs), f"rho coassociativity on {g} ({m},{t})")
            back = _counit_contract(r, "right")
            res.record(back == x, f"rho counit on {g} ({m},{t})")
        for g in range(B.ngens):
            y = NCPoly(B, {(g,): LaurentPoly.const(1)})
            lam = lambda_left(y)
            lhs = tensor_map(lambda f: delta(f), None, lam)
            rhs = tensor_map(None, lambda f: lambda_left(f), lam)
            res.record(_reassoc(lhs) == _reassoc_right(rhs), f"lambda coassociativity on {g} ({t},{m})")
            back = _counit_contract(lam, "left")
            res.record(back == y, f"lambda counit on {g} ({t},{m})")
    return res


# ---------------------------------------------------------------------------
# tensor plumbing


def _counit_contract(f: NCPoly, side: str) -> NCPoly:
    """Apply the counit to the ``side`` tensor factor and drop it."""
    T = f.algebra
    hopf, keep = (T.left, T.right) if side == "left" else (T.right, T.left)
    out = {}
    for (a, b), c in f.terms.items():
        h, v = (a, b) if side == "left" else (b, a)
        e = counit(NCPoly._raw(hopf, {h: LaurentPoly.const(1)}))
        if e:
            out[v] = out.get(v, LaurentPoly.const(0)) + c * e
    return NCPoly(keep, out)


def _reassoc(f: NCPoly) -> dict:
    """``(X (x) Y) (x) Z`` -> flat triples."""
    return {((a, b), c): v for ((a, b), c), v in f.terms.items()}


def _reassoc_right(f: NCPoly) -> dict:
    """``X (x) (Y (x) Z)`` -> flat triples."""
    return {((a, b), c): v for (a, (b, c)), v in f.terms.items()}


SUITES: List[Callable] = [associativity, centrality, homomorphism, hopf, comodule]


def run_suites(seed: int = 0, corrupt=frozenset()) -> List[SuiteResult]:
    out = []
    for suite in SUITES:
        rng = random.Random(f"{seed}:{suite.__name__}")
        out.append(suite(rng, corrupt=corrupt))
    return out
