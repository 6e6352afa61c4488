"""Bialgebra and Hopf structure on ``O_q(M_t)`` and ``O_q(GL_t)``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

from .exactnum import ONE, ZERO, LaurentMatrix, LaurentPoly, rank
from .qalgebra import (
    AlgebraHom,
    AlgebraSpec,
    Monomial,
    NCPoly,
    QuantumMatrix,
    Tensor,
    _add_into,
    express_in_basis,
    multiply,
)

__all__ = [
    "IndexSet",
    "GLElement",
    "comultiply",
    "comultiply_hom",
    "counit",
    "quantum_minor",
    "det_q",
    "det_power",
    "antipode",
    "antipode_monomial",
    "convolve",
    "sl_relation_matrix",
    "filtration_basis",
    "tensor_map",
    "sl_ideal_member",
    "inversions",
]


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for a, b in itertools.combinations(perm, 2) if a > b)


@dataclass(frozen=True)
class IndexSet:
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(sorted(self.rows)))
        object.__setattr__(self, "cols", tuple(sorted(self.cols)))
        if len(self.rows) != len(self.cols):
            raise ValueError("row and column index sets must have equal size")
        if len(set(self.rows)) != len(self.rows) or len(set(self.cols)) != len(self.cols):
            raise ValueError("repeated index in quantum minor")


def _square(A: AlgebraSpec) -> QuantumMatrix:
    if not isinstance(A, QuantumMatrix) or A.m != A.n:
        raise ValueError(f"expected a square quantum matrix algebra, got {A!r}")
    return A


@lru_cache(maxsize=None)
def quantum_minor_cached(A: QuantumMatrix, rows: Tuple[int, ...], cols: Tuple[int, ...]) -> NCPoly:
    for i in rows:
        if not 1 <= i <= A.m:
            raise IndexError(f"row {i} out of range for {A!r}")
    for j in cols:
        if not 1 <= j <= A.n:
            raise IndexError(f"column {j} out of range for {A!r}")
    mq = -A.q
    terms: Dict[Monomial, LaurentPoly] = {}
    for perm in itertools.permutations(range(len(cols))):
        word = [A.gen_index(i, cols[p]) for i, p in zip(rows, perm)]
        coef = mq ** inversions(perm)
        for mono, c in A.normal_form_word(word).items():
            _add_into(terms, mono, coef * c)
    return NCPoly._raw(A, terms)


def quantum_minor(A: QuantumMatrix, S: Union[IndexSet, Tuple[Sequence[int], Sequence[int]]]) -> NCPoly:
    """``[I|J] = sum_pi (-q)^{l(pi)} X[i_1, j_pi(1)] ... X[i_k, j_pi(k)]`` (rows ascending)."""
    if not isinstance(S, IndexSet):
        S = IndexSet(tuple(S[0]), tuple(S[1]))
    return quantum_minor_cached(A, S.rows, S.cols)


def det_q(A: QuantumMatrix) -> NCPoly:
    A = _square(A)
    full = tuple(range(1, A.m + 1))
    return quantum_minor_cached(A, full, full)


@lru_cache(maxsize=None)
def det_power(A: QuantumMatrix, k: int) -> NCPoly:
    if k == 0:
        return A.unit()
    return multiply(det_power(A, k - 1), det_q(A))


@lru_cache(maxsize=None)
def comultiply_hom(A: QuantumMatrix) -> AlgebraHom:
    A = _square(A)
    T = Tensor(A, A)
    t = A.m
    images = {}
    for i in range(1, t + 1):
        for j in range(1, t + 1):
            images[A.gen_index(i, j)] = NCPoly(
                T, {((A.gen_index(i, l),), (A.gen_index(l, j),)): ONE for l in range(1, t + 1)}
            )
    return AlgebraHom(A, T, images, multiplier=2)


def comultiply(f: NCPoly) -> NCPoly:
    """``Delta(X_ij) = sum_l X_il (x) X_lj``, extended multiplicatively."""
    return comultiply_hom(f.algebra)(f)


def tensor_map(left, right, f: NCPoly) -> NCPoly:
    """Apply linear maps factorwise to an element of a tensor product.

    ``left``/``right`` take an :class:`NCPoly` to an :class:`NCPoly` (or are
    ``None`` for the identity).
    """
    T = f.algebra
    if not isinstance(T, Tensor):
        raise ValueError("tensor_map needs an element of a tensor product")
    lcache: Dict[Monomial, NCPoly] = {}
    rcache: Dict[Monomial, NCPoly] = {}

    def img(fn, spec, mono, cache):
        if fn is None:
            return NCPoly._raw(spec, {mono: ONE})
        hit = cache.get(mono)
        if hit is None:
            hit = fn(NCPoly._raw(spec, {mono: ONE}))
            cache[mono] = hit
        return hit

    out: Dict[Monomial, LaurentPoly] = {}
    target = None
    for (a, b), c in f.terms.items():
        la = img(left, T.left, a, lcache)
        rb = img(right, T.right, b, rcache)
        if target is None:
            target = Tensor(la.algebra, rb.algebra)
        for m1, c1 in la.terms.items():
            for m2, c2 in rb.terms.items():
                _add_into(out, (m1, m2), c * c1 * c2)
    if target is None:
        lt = T.left if left is None else left(T.left.unit()).algebra
        rt = T.right if right is None else right(T.right.unit()).algebra
        target = Tensor(lt, rt)
    return NCPoly._raw(target, out)


def counit(f: NCPoly) -> LaurentPoly:
    """``eps(X_ij) = delta_ij``; an algebra map, so a normal monomial counts iff it is diagonal."""
    A = _square(f.algebra)
    acc = ZERO
    for mono, c in f.terms.items():
        if all(A.gen_pos(g)[0] == A.gen_pos(g)[1] for g in mono):
            acc = acc + c
    return acc


# ---------------------------------------------------------------------------
# O_q(GL_t)
# ---------------------------------------------------------------------------


class GLElement:
    """``numerator * det_q^{-det_power}`` in ``O_q(GL_t)``; ``det_q`` is central."""

    __slots__ = ("numerator", "det_power")

    def __init__(self, numerator: NCPoly, det_power: int = 0):
        _square(numerator.algebra)
        self.numerator = numerator
        self.det_power = det_power

    @property
    def algebra(self) -> QuantumMatrix:
        return self.numerator.algebra

    @classmethod
    def one(cls, A: QuantumMatrix) -> "GLElement":
        return cls(A.unit(), 0)

    @classmethod
    def det_inverse(cls, A: QuantumMatrix, k: int = 1) -> "GLElement":
        return cls(A.unit(), k)

    def lift(self, k: int) -> NCPoly:
        """Numerator of the same element written over ``det^-k`` (``k >= det_power``)."""
        if k < self.det_power:
            raise ValueError("can only raise the det power")
        return multiply(self.numerator, det_power(self.algebra, k - self.det_power))

    def __mul__(self, other) -> "GLElement":
        if isinstance(other, GLElement):
            return GLElement(multiply(self.numerator, other.numerator), self.det_power + other.det_power)
        return GLElement(self.numerator * other, self.det_power)

    def __add__(self, other: "GLElement") -> "GLElement":
        k = max(self.det_power, other.det_power)
        return GLElement(self.lift(k) + other.lift(k), k)

    def __neg__(self) -> "GLElement":
        return GLElement(-self.numerator, self.det_power)

    def __sub__(self, other: "GLElement") -> "GLElement":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GLElement):
            return NotImplemented
        k = max(self.det_power, other.det_power)
        return self.lift(k) == other.lift(k)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def normalized(self) -> "GLElement":
        """Same element with the smallest possible det power (exact division test)."""
        A = self.algebra
        num, k = self.numerator, self.det_power
        if num.is_zero():
            return GLElement(A.zero(), 0)
        while k > 0 and num.is_homogeneous():
            d = next(iter(num.degrees()))
            quo = _divide_by_det(num, d)
            if quo is None:
                break
            num, k = quo, k - 1
        return GLElement(num, k)

    def __str__(self) -> str:
        if self.det_power == 0:
            return str(self.numerator)
        return f"({self.numerator}) * det^-{self.det_power}"

    __repr__ = __str__


def _divide_by_det(f: NCPoly, d: int):
    from .exactnum import kernel_basis

    A = f.algebra
    t = A.m
    if d < t:
        return None
    basis = A.basis(d - t)
    D = det_q(A)
    cols = [express_in_basis(multiply(D, NCPoly._raw(A, {m: ONE})), d) for m in basis]
    cols.append([-x for x in express_in_basis(f, d)])
    M = LaurentMatrix.from_columns(A.dimension(d), [{i: v for i, v in enumerate(c) if v} for c in cols])
    for vec in kernel_basis(M):
        last = vec[-1]
        if last:
            if not last.is_unit():
                return None
            inv = last ** -1
            return NCPoly(A, {m: c * inv for m, c in zip(basis, vec[:-1])})
    return None


@lru_cache(maxsize=None)
def _antipode_generator(A: QuantumMatrix, g: int) -> NCPoly:
    i, j = A.gen_pos(g)
    t = A.m
    rows = tuple(r for r in range(1, t + 1) if r != j)
    cols = tuple(c for c in range(1, t + 1) if c != i)
    e = j - i if "antipode-sign" in A.corrupt else i - j
    return quantum_minor_cached(A, rows, cols) * ((-A.q) ** e)


@lru_cache(maxsize=None)
def antipode_monomial(A: QuantumMatrix, mono: Monomial) -> NCPoly:
    """Numerator of ``S(mono)``; the det power is ``len(mono)``.

    ``S(X_ij) = (-q)^{i-j} [{1..t}\\{j} | {1..t}\\{i}] det^-1`` and ``S`` reverses products.
    """
    if not mono:
        return A.unit()
    return multiply(_antipode_generator(A, mono[-1]), antipode_monomial(A, mono[:-1]))


def antipode(g: Union[GLElement, NCPoly]) -> GLElement:
    """Antipode of ``O_q(GL_t)``; ``S(det^-1) = det``."""
    if isinstance(g, NCPoly):
        g = GLElement(g, 0)
    A = g.algebra
    by_degree: Dict[int, Dict[Monomial, LaurentPoly]] = {}
    for mono, c in g.numerator.terms.items():
        by_degree.setdefault(len(mono), {})[mono] = c
    out = GLElement(A.zero(), 0)
    for k, part in sorted(by_degree.items()):
        acc: Dict[Monomial, LaurentPoly] = {}
        for mono, c in part.items():
            for m2, c2 in antipode_monomial(A, mono).terms.items():
                _add_into(acc, m2, c * c2)
        # S(f det^-p) = S(f) det^p with S(f) = acc * det^-k
        net = k - g.det_power
        num = NCPoly._raw(A, acc)
        if net >= 0:
            out = out + GLElement(num, net)
        else:
            out = out + GLElement(multiply(num, det_power(A, -net)), 0)
    return out


def convolve(g: GLElement, side: str = "left") -> GLElement:
    """``m (S (x) id) Delta`` (``side='left'``) or ``m (id (x) S) Delta`` applied to ``g``."""
    A = g.algebra
    k = g.det_power
    acc = GLElement(A.zero(), 0)
    for (a, b), c in comultiply(g.numerator).terms.items():
        ga = GLElement(NCPoly._raw(A, {a: c}), k)
        gb = GLElement(NCPoly._raw(A, {b: ONE}), k)
        acc = acc + (antipode(ga) * gb if side == "left" else ga * antipode(gb))
    return acc


# ---------------------------------------------------------------------------
# O_q(SL_r) = O_q(M_r) / (det_q - 1), through bounded filtration levels
# ---------------------------------------------------------------------------


def filtration_basis(A: QuantumMatrix, dmax: int) -> List[Monomial]:
    out: List[Monomial] = []
    for d in range(dmax + 1):
        out.extend(A.basis(d))
    return out


@lru_cache(maxsize=None)
def sl_relation_matrix(A: QuantumMatrix, dmax: int) -> Tuple[Tuple[Monomial, ...], LaurentMatrix]:
    """Columns ``(det_q - 1) m`` for normal monomials ``deg m <= dmax - r``, in the
    coordinates of the normal monomials of degree ``<= dmax``."""
    A = _square(A)
    basis = tuple(filtration_basis(A, dmax))
    index = {m: i for i, m in enumerate(basis)}
    D = det_q(A) - A.unit()
    cols = []
    for m in filtration_basis(A, dmax - A.m):
        prod = multiply(D, NCPoly._raw(A, {m: ONE}))
        cols.append({index[mm]: c for mm, c in prod.terms.items()})
    return basis, LaurentMatrix.from_columns(len(basis), cols)


def sl_ideal_member(h: NCPoly, dmax: int) -> bool:
    """Whether ``h`` lies in ``(det_q - 1) O_q(M_r)`` within filtration level ``dmax``.

    Tested as membership in the span of ``(det_q - 1) m``, ``deg m <= dmax - r``;
    ``det_q - 1`` has central top-degree part ``det_q``, so this span is the whole
    ideal intersected with degrees ``<= dmax``.
    """
    A = _square(h.algebra)
    if h.is_zero():
        return True
    if max(h.degrees()) > dmax:
        raise ValueError(f"element has degree above the filtration bound {dmax}")
    basis, J = sl_relation_matrix(A, dmax)
    index = {m: i for i, m in enumerate(basis)}
    col = {index[m]: c for m, c in h.terms.items()}
    aug = J.hstack(LaurentMatrix.from_columns(len(basis), [col]))
    return rank(aug) == rank(J)
