"""Coactions as computable linear maps on graded components, and per-degree
coinvariant solvers.

Three coactions are supported:

* ``interior(m, n, t)``: ``O_q(GL_t)`` coacting on the left of
  ``O_q(M_{m,t}) (x) O_q(M_{t,n})`` by ``a (x) b -> S(a_1) b_-1 (x) a_0 (x) b_0``;
* ``slr(n, r)``: ``O_q(SL_r)`` coacting on the right of ``O_q(M_{n,r})``;
* ``conjugation(n)``: ``O_q(GL_n)`` coacting on the right of ``O_q(M_n)`` by
  ``u -> u_2 (x) S(u_1) u_3``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .exactnum import ONE, ZERO, LaurentMatrix, LaurentPoly, kernel_basis
from .qalgebra import (
    AlgebraHom,
    AlgebraSpec,
    FreeAlgebra,
    Monomial,
    NCPoly,
    QuantumMatrix,
    Tensor,
    _add_into,
    multiply,
)
from .qhopf import (
    antipode_monomial,
    comultiply_hom,
    det_power,
    quantum_minor_cached,
    sl_relation_matrix,
)

__all__ = [
    "Coaction",
    "CoactionValue",
    "rho_right",
    "lambda_left",
    "gamma_interior",
    "beta_conjugation",
    "rho_slr",
    "coaction_value",
    "coinvariance_matrix",
    "coinvariants_basis",
    "coinvariants_basis_at",
    "torus_weight",
    "tau",
    "mu_hom",
    "minor_hom",
    "minor_generators",
    "trace_hom",
    "solve_domain",
    "embed",
]

KINDS = ("interior", "slr", "conjugation")


@dataclass(frozen=True)
class Coaction:
    kind: str
    params: Tuple[int, ...]
    qvalue: Optional[Fraction] = None
    corrupt: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown coaction kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        if self.kind == "interior":
            m, n, t = self.params
            if min(m, n, t) < 1 or t > min(m, n):
                raise ValueError("interior coaction needs 1 <= t <= min(m, n)")
        elif self.kind == "slr":
            n, r = self.params
            if not 1 <= r < n:
                raise ValueError("slr coaction needs 1 <= r < n")
        else:
            (n,) = self.params
            if n < 1:
                raise ValueError("conjugation coaction needs n >= 1")

    @classmethod
    def interior(cls, m: int, n: int, t: int, **kw) -> "Coaction":
        return cls("interior", (m, n, t), **kw)

    @classmethod
    def slr(cls, n: int, r: int, **kw) -> "Coaction":
        return cls("slr", (n, r), **kw)

    @classmethod
    def conjugation(cls, n: int, **kw) -> "Coaction":
        return cls("conjugation", (n,), **kw)

    def source_hom(self) -> AlgebraHom:
        """The hom whose image should be the coinvariants: ``mu_q*``, the minor
        map on increasing-tuple generators, or the trace map ``gamma_i -> tau_i``."""
        if self.kind == "interior":
            return mu_hom(*self.params, qvalue=self.qvalue, corrupt=self.corrupt)
        if self.kind == "slr":
            return minor_hom(*self.params, qvalue=self.qvalue, corrupt=self.corrupt)
        return trace_hom(*self.params, qvalue=self.qvalue, corrupt=self.corrupt)

    def _qm(self, a: int, b: int) -> QuantumMatrix:
        return QuantumMatrix(a, b, self.qvalue, self.corrupt)

    @property
    def carrier(self) -> AlgebraSpec:
        if self.kind == "interior":
            m, n, t = self.params
            return Tensor(self._qm(m, t), self._qm(t, n))
        if self.kind == "slr":
            n, r = self.params
            return self._qm(n, r)
        (n,) = self.params
        return self._qm(n, n)

    @property
    def hopf(self) -> QuantumMatrix:
        """The square quantum matrix algebra whose localization (or quotient) coacts."""
        k = self.params[2] if self.kind == "interior" else self.params[-1]
        return self._qm(k, k)

    @property
    def side(self) -> str:
        return "left" if self.kind == "interior" else "right"


@dataclass
class CoactionValue:
    """``sum h det^-k (x) v`` grouped as ``(hopf monomial, k) -> carrier vector``.

    Carrier vectors are dicts from carrier monomials to coefficients.  The
    side of the tensor factor (left for interior, right otherwise) is a
    property of the coaction, not of this container.
    """

    degree: int
    hopf: QuantumMatrix
    carrier: AlgebraSpec
    terms: Dict[Tuple[Monomial, int], Dict[Monomial, LaurentPoly]] = field(default_factory=dict)

    def add(self, h: Monomial, k: int, v: Monomial, c: LaurentPoly) -> None:
        vec = self.terms.setdefault((h, k), {})
        _add_into(vec, v, c)
        if not vec:
            del self.terms[(h, k)]

    def max_det_power(self) -> int:
        return max((k for _, k in self.terms), default=0)

    def det_cleared(self, N: int) -> Dict[Monomial, Dict[Monomial, LaurentPoly]]:
        """Multiply the Hopf side by ``det^N``; returns ``carrier mono -> {hopf mono: coef}``."""
        out: Dict[Monomial, Dict[Monomial, LaurentPoly]] = {}
        for (h, k), vec in self.terms.items():
            if k > N:
                raise ValueError(f"clearing level {N} below det power {k}")
            hp = _hopf_times_det(self.hopf, h, N - k)
            for v, c in vec.items():
                row = out.setdefault(v, {})
                for hh, cc in hp.items():
                    _add_into(row, hh, c * cc)
        return {v: row for v, row in out.items() if row}

    def equals_unit_tensor(self, v: NCPoly) -> bool:
        """Whether the value is ``1 (x) v`` (resp. ``v (x) 1``)."""
        N = self.max_det_power()
        cleared = self.det_cleared(N)
        target: Dict[Monomial, Dict[Monomial, LaurentPoly]] = {}
        dN = det_power(self.hopf, N)
        for w, c in v.terms.items():
            target[w] = {h: c * cc for h, cc in dN.terms.items()}
        return _clean(cleared) == _clean(target)

    def to_element(self) -> Dict[Tuple[Monomial, int], NCPoly]:
        return {key: NCPoly(self.carrier, vec) for key, vec in self.terms.items()}


def _clean(d):
    return {k: {kk: vv for kk, vv in v.items() if vv} for k, v in d.items() if any(v.values())}


@lru_cache(maxsize=None)
def _hopf_times_det_cached(H: QuantumMatrix, h: Monomial, e: int) -> Dict[Monomial, LaurentPoly]:
    return multiply(NCPoly._raw(H, {h: ONE}), det_power(H, e)).terms


def _hopf_times_det(H: QuantumMatrix, h: Monomial, e: int) -> Dict[Monomial, LaurentPoly]:
    if e == 0:
        return {h: ONE}
    return _hopf_times_det_cached(H, h, e)


# ---------------------------------------------------------------------------
# Structure maps
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _rho_hom(A: QuantumMatrix) -> AlgebraHom:
    """``O_q(M_{m,t}) -> O_q(M_{m,t}) (x) O_q(M_t)``, ``X_ij -> sum_l X_il (x) X_lj``."""
    t = A.n
    H = A.same_shape(t, t)
    T = Tensor(A, H)
    images = {}
    for i in range(1, A.m + 1):
        for j in range(1, t + 1):
            images[A.gen_index(i, j)] = NCPoly(
                T, {((A.gen_index(i, l),), (H.gen_index(l, j),)): ONE for l in range(1, t + 1)}
            )
    return AlgebraHom(A, T, images, multiplier=2)


@lru_cache(maxsize=None)
def _lambda_hom(B: QuantumMatrix) -> AlgebraHom:
    """``O_q(M_{t,n}) -> O_q(M_t) (x) O_q(M_{t,n})``, ``X_ij -> sum_l X_il (x) X_lj``."""
    t = B.m
    H = B.same_shape(t, t)
    T = Tensor(H, B)
    images = {}
    for i in range(1, t + 1):
        for j in range(1, B.n + 1):
            images[B.gen_index(i, j)] = NCPoly(
                T, {((H.gen_index(i, l),), (B.gen_index(l, j),)): ONE for l in range(1, t + 1)}
            )
    return AlgebraHom(B, T, images, multiplier=2)


def rho_right(a: NCPoly) -> NCPoly:
    """Right coaction of ``O_q(M_t)`` (inside ``O_q(GL_t)``) on ``O_q(M_{m,t})``."""
    return _rho_hom(a.algebra)(a)


def lambda_left(b: NCPoly) -> NCPoly:
    """Left coaction of ``O_q(M_t)`` on ``O_q(M_{t,n})``."""
    return _lambda_hom(b.algebra)(b)


def rho_slr(a: NCPoly) -> NCPoly:
    """Right coaction on ``O_q(M_{n,r})``; its Hopf side is read modulo ``det_q - 1``."""
    return rho_right(a)


def _group_by_left(f: NCPoly) -> Dict[Monomial, Dict[Monomial, LaurentPoly]]:
    out: Dict[Monomial, Dict[Monomial, LaurentPoly]] = {}
    for (a, b), c in f.terms.items():
        out.setdefault(a, {})[b] = c
    return out


def _group_by_right(f: NCPoly) -> Dict[Monomial, Dict[Monomial, LaurentPoly]]:
    out: Dict[Monomial, Dict[Monomial, LaurentPoly]] = {}
    for (a, b), c in f.terms.items():
        out.setdefault(b, {})[a] = c
    return out


def _gamma_monomial(T: Tensor, mono: Monomial, out: CoactionValue, scale: LaurentPoly) -> None:
    a, b = mono
    A, B = T.left, T.right
    H = out.hopf
    k = len(a)
    rho = _group_by_right(_rho_hom(A).on_monomial(a))  # a_1 -> {a_0: c}
    lam = _group_by_left(_lambda_hom(B).on_monomial(b))  # b_-1 -> {b_0: c}
    for a1, a0s in rho.items():
        sa1 = antipode_monomial(H, a1)
        for bm, b0s in lam.items():
            prod = multiply(sa1, NCPoly._raw(H, {bm: ONE}))
            for h, ch in prod.terms.items():
                ch = ch * scale
                for a0, ca in a0s.items():
                    cha = ch * ca
                    for b0, cb in b0s.items():
                        out.add(h, k, (a0, b0), cha * cb)


def gamma_interior(v: NCPoly, d: int) -> CoactionValue:
    """``gamma(a (x) b) = sum S(a_1) b_-1 (x) a_0 (x) b_0`` on a homogeneous element."""
    T = v.algebra
    if not isinstance(T, Tensor) or not isinstance(T.left, QuantumMatrix):
        raise ValueError("interior coaction acts on O_q(M_{m,t}) (x) O_q(M_{t,n})")
    if not v.is_homogeneous(d):
        raise ValueError(f"element is not homogeneous of degree {d}")
    H = T.left.same_shape(T.left.n, T.left.n)
    out = CoactionValue(d, H, T)
    for mono, c in v.terms.items():
        _gamma_monomial(T, mono, out, c)
    return out


def _beta_monomial(A: QuantumMatrix, u: Monomial, out: CoactionValue, scale: LaurentPoly) -> None:
    delta = comultiply_hom(A)
    # Delta^2(u) = (Delta (x) id) Delta(u), grouped by (u_1, u_3)
    pairs: Dict[Tuple[Monomial, Monomial], Dict[Monomial, LaurentPoly]] = {}
    for (u12, u3), c in delta.on_monomial(u).terms.items():
        for (u1, u2), c2 in delta.on_monomial(u12).terms.items():
            vec = pairs.setdefault((u1, u3), {})
            _add_into(vec, u2, c * c2)
    k = len(u)
    for (u1, u3), vec in pairs.items():
        if not vec:
            continue
        prod = multiply(antipode_monomial(A, u1), NCPoly._raw(A, {u3: ONE}))
        for h, ch in prod.terms.items():
            ch = ch * scale
            for u2, c in vec.items():
                out.add(h, k, u2, ch * c)


def beta_conjugation(u: NCPoly, d: int) -> CoactionValue:
    """``beta(u) = sum u_2 (x) S(u_1) u_3``, from the iterated coproduct of each monomial.

    Not an algebra map: each normal monomial is expanded through its full
    coproduct, never generator by generator.
    """
    A = u.algebra
    if not isinstance(A, QuantumMatrix) or A.m != A.n:
        raise ValueError("conjugation coaction acts on a square quantum matrix algebra")
    if not u.is_homogeneous(d):
        raise ValueError(f"element is not homogeneous of degree {d}")
    out = CoactionValue(d, A, A)
    for mono, c in u.terms.items():
        _beta_monomial(A, mono, out, c)
    return out


def _slr_monomial(A: QuantumMatrix, mono: Monomial, out: CoactionValue, scale: LaurentPoly) -> None:
    for (a0, a1), c in _rho_hom(A).on_monomial(mono).terms.items():
        out.add(a1, 0, a0, c * scale)


def coaction_value(c: Coaction, v: NCPoly, d: int) -> CoactionValue:
    if c.kind == "interior":
        return gamma_interior(v, d)
    if c.kind == "conjugation":
        return beta_conjugation(v, d)
    if not v.is_homogeneous(d):
        raise ValueError(f"element is not homogeneous of degree {d}")
    out = CoactionValue(d, c.hopf, c.carrier)
    for mono, coef in v.terms.items():
        _slr_monomial(c.carrier, mono, out, coef)
    return out


def _monomial_value(c: Coaction, mono: Monomial, d: int) -> CoactionValue:
    out = CoactionValue(d, c.hopf, c.carrier)
    if c.kind == "interior":
        _gamma_monomial(c.carrier, mono, out, ONE)
    elif c.kind == "conjugation":
        _beta_monomial(c.carrier, mono, out, ONE)
    else:
        _slr_monomial(c.carrier, mono, out, ONE)
    return out


# ---------------------------------------------------------------------------
# Coinvariance as a linear map
# ---------------------------------------------------------------------------


def clearing_level(c: Coaction, d: int) -> int:
    """Largest det power the antipode introduces in carrier degree ``d``."""
    if c.kind == "interior":
        m, n, t = c.params
        return d if t >= 1 else 0
    if c.kind == "conjugation":
        return d
    return 0


@dataclass
class CoinvarianceMap:
    """Matrix of ``v -> coaction(v) - unit (x) v`` on carrier degree ``d``.

    Rows are ``(carrier monomial, hopf monomial)`` pairs.  For the ``slr``
    kind the rows run over all hopf monomials of degree ``<= d`` for every
    carrier monomial and ``relations`` holds the columns ``(det_q - 1) m``
    spanning the part of the codomain that is divided out.
    """

    coaction: Coaction
    degree: int
    basis: List[Monomial]
    matrix: LaurentMatrix
    row_keys: List[Tuple[Monomial, Monomial]]
    clearing: int
    relations: Optional[LaurentMatrix] = None
    hopf_basis: Optional[Tuple[Monomial, ...]] = None


def torus_weight(c: Coaction, mono: Monomial) -> Tuple[int, ...]:
    """Weight of a carrier monomial under the diagonal torus of the coacting group.

    PBW rewriting preserves row and column contents, so every normal monomial
    is a weight vector.  Projecting the Hopf side onto the torus sends the
    coaction of a monomial to ``t^weight`` times itself, hence coinvariants
    live in the weight-zero span.
    """
    if c.kind == "interior":
        A, B = c.carrier.left, c.carrier.right
        a, b = mono
        return _count_diff(B.row_content(b), A.col_content(a), A.n)
    if c.kind == "conjugation":
        A = c.carrier
        return _count_diff(A.col_content(mono), A.row_content(mono), A.n)
    return (0,)


def _count_diff(plus: Sequence[int], minus: Sequence[int], k: int) -> Tuple[int, ...]:
    w = [0] * k
    for x in plus:
        w[x] += 1
    for x in minus:
        w[x] -= 1
    return tuple(w)


def solve_domain(c: Coaction, d: int, full: bool = False) -> List[Monomial]:
    """Carrier monomials the coinvariance solve runs over.

    For ``interior`` and ``conjugation`` the weight-zero monomials suffice
    unless ``full`` is set; ``slr`` always uses the whole component since its
    torus is only determined modulo the determinant.
    """
    basis = c.carrier.basis(d)
    if full or c.kind == "slr":
        return list(basis)
    return [w for w in basis if not any(torus_weight(c, w))]


def coinvariance_matrix(c: Coaction, d: int, full: bool = False) -> CoinvarianceMap:
    A = c.carrier
    basis = solve_domain(c, d, full)
    H = c.hopf
    if c.kind == "slr":
        hb, J = sl_relation_matrix(H, d)
        hindex = {h: i for i, h in enumerate(hb)}
        row_keys = [(w, h) for w in basis for h in hb]
        windex = {w: i for i, w in enumerate(basis)}
        nh = len(hb)
        entries: Dict[Tuple[int, int], LaurentPoly] = {}
        for j, w in enumerate(basis):
            val = _monomial_value(c, w, d)
            col: Dict[int, LaurentPoly] = {}
            for (h, _), vec in val.terms.items():
                for v, coef in vec.items():
                    r = windex[v] * nh + hindex[h]
                    col[r] = col.get(r, ZERO) + coef
            r = windex[w] * nh + hindex[()]
            col[r] = col.get(r, ZERO) - ONE
            for r, coef in col.items():
                if coef:
                    entries[(r, j)] = coef
        M = LaurentMatrix(len(row_keys), len(basis), entries)
        return CoinvarianceMap(c, d, basis, M, row_keys, 0, J, hb)

    N = clearing_level(c, d)
    unit = det_power(H, N)
    columns: List[Dict[Tuple[Monomial, Monomial], LaurentPoly]] = []
    keys = set()
    for w in basis:
        val = _monomial_value(c, w, d)
        cleared = val.det_cleared(N)
        col: Dict[Tuple[Monomial, Monomial], LaurentPoly] = {}
        for v, row in cleared.items():
            for h, coef in row.items():
                col[(v, h)] = coef
        for h, coef in unit.terms.items():
            key = (w, h)
            s = col.get(key, ZERO) - coef
            if s:
                col[key] = s
            else:
                col.pop(key, None)
        columns.append(col)
        keys.update(col)
    row_keys = sorted(keys, key=lambda vh: (A.sort_key(vh[0]), len(vh[1]), vh[1]))
    rindex = {k: i for i, k in enumerate(row_keys)}
    entries = {}
    for j, col in enumerate(columns):
        for key, coef in col.items():
            entries[(rindex[key], j)] = coef
    M = LaurentMatrix(len(row_keys), len(basis), entries)
    return CoinvarianceMap(c, d, basis, M, row_keys, N)


def quotient_coordinates(J: LaurentMatrix, at=None) -> List[List]:
    """Rows spanning the left null space of ``J`` (generic, or at ``q = at``)."""
    from .exactnum import kernel_basis_at

    if at is None:
        return kernel_basis(J.transpose())
    return kernel_basis_at(J.transpose(), at)


def block_quotient(M: LaurentMatrix, J: LaurentMatrix, at=None) -> LaurentMatrix:
    """Compose ``M`` with coordinates on ``(row block) / span(J)``, block by block.

    Rows of ``M`` come in consecutive blocks of ``J.rows``; each block is
    multiplied by a basis of the left null space of ``J`` (computed at
    ``q = at`` when given).  The result has entries constant in ``q`` when
    ``at`` is given.
    """
    L = quotient_coordinates(J, at)
    nh = J.rows
    nl = len(L)
    if M.rows % nh:
        raise ValueError("row count is not a multiple of the relation block size")
    nblocks = M.rows // nh
    Ms = M if at is None else M.specialize(at)
    Lrows = [{h: LaurentPoly.coerce(x) for h, x in enumerate(row) if x} for row in L]
    entries: Dict[Tuple[int, int], LaurentPoly] = {}
    for j, col in enumerate(Ms.transpose().row_dicts()):
        byw: Dict[int, Dict[int, LaurentPoly]] = {}
        for r, v in col.items():
            w, h = divmod(r, nh)
            byw.setdefault(w, {})[h] = v
        for w, hv in byw.items():
            for li, lrow in enumerate(Lrows):
                acc = ZERO
                for h, v in hv.items():
                    x = lrow.get(h)
                    if x is not None:
                        acc = acc + x * v
                if acc:
                    entries[(w * nl + li, j)] = acc
    return LaurentMatrix(nblocks * nl, M.cols, entries)


def reduce_by_relations(cm: CoinvarianceMap, at=None) -> LaurentMatrix:
    """The coinvariance map with the ``slr`` relation span divided out (identity
    otherwise), generically or at ``q = at``."""
    if cm.relations is None:
        return cm.matrix if at is None else cm.matrix.specialize(at)
    return block_quotient(cm.matrix, cm.relations, at)


def embed(cm: CoinvarianceMap, vecs) -> List[List]:
    """Lift vectors over the solve domain to coordinates over the full component."""
    full = cm.coaction.carrier.basis(cm.degree)
    if len(full) == len(cm.basis):
        return [list(v) for v in vecs]
    index = cm.coaction.carrier.basis_index(cm.degree)
    pos = [index[w] for w in cm.basis]
    out = []
    for v in vecs:
        zero = ZERO if v and isinstance(v[0], LaurentPoly) else Fraction(0)
        row = [zero] * len(full)
        for p, x in zip(pos, v):
            row[p] = x
        out.append(row)
    return out


def coinvariants_basis(c: Coaction, d: int, full: bool = False) -> List[List[LaurentPoly]]:
    """Basis of the degree-``d`` coinvariants as coefficient vectors over
    ``graded_basis(c.carrier, d)``."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    cm = coinvariance_matrix(c, d, full)
    return embed(cm, kernel_basis(reduce_by_relations(cm)))


def coinvariants_basis_at(c: Coaction, d: int, lam, full: bool = False) -> List[List]:
    """Coinvariants of the coaction specialized at ``q = lam`` (rational vectors)."""
    from .exactnum import kernel_basis_at

    cm = coinvariance_matrix(c, d, full)
    M = reduce_by_relations(cm, lam)
    return embed(cm, kernel_basis_at(M, lam))


# ---------------------------------------------------------------------------
# Source homs
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def mu_hom(m: int, n: int, t: int, qvalue=None, corrupt: frozenset = frozenset()) -> AlgebraHom:
    """``mu_q*: O_q(M_{m,n}) -> O_q(M_{m,t}) (x) O_q(M_{t,n})``, ``X_ij -> sum_l X_il (x) X_lj``."""
    S = QuantumMatrix(m, n, qvalue, corrupt)
    A = QuantumMatrix(m, t, qvalue, corrupt)
    B = QuantumMatrix(t, n, qvalue, corrupt)
    T = Tensor(A, B)
    images = {}
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            images[S.gen_index(i, j)] = NCPoly(
                T, {((A.gen_index(i, l),), (B.gen_index(l, j),)): ONE for l in range(1, t + 1)}
            )
    return AlgebraHom(S, T, images, multiplier=2)


def minor_generators(n: int, r: int) -> List[Tuple[int, ...]]:
    """Index sets of the free generators ``lambda_I``: increasing ``r``-tuples, lexicographic."""
    return list(combinations(range(1, n + 1), r))


@lru_cache(maxsize=None)
def minor_hom(n: int, r: int, qvalue=None, corrupt: frozenset = frozenset()) -> AlgebraHom:
    """``phi_q``: free algebra on ``lambda_I`` (degree ``r``) -> ``O_q(M_{n,r})``, ``lambda_I -> D_I``.

    Only increasing tuples are used, so the sign ``(-q)^{l(pi)}`` is 1.
    """
    A = QuantumMatrix(n, r, qvalue, corrupt)
    idx = minor_generators(n, r)
    F = FreeAlgebra(tuple("L" + "".join(map(str, I)) for I in idx), tuple([r] * len(idx)))
    cols = tuple(range(1, r + 1))
    images = {g: quantum_minor_cached(A, I, cols) for g, I in enumerate(idx)}
    return AlgebraHom(F, A, images, multiplier=1)


@lru_cache(maxsize=None)
def trace_hom(n: int, qvalue=None, corrupt: frozenset = frozenset()) -> AlgebraHom:
    """Free algebra on ``gamma_i`` (degree ``i``) -> ``O_q(M_n)``, ``gamma_i -> tau_i``."""
    A = QuantumMatrix(n, n, qvalue, corrupt)
    F = FreeAlgebra(tuple(f"g{i}" for i in range(1, n + 1)), tuple(range(1, n + 1)))
    images = {i - 1: tau(n, i, A) for i in range(1, n + 1)}
    return AlgebraHom(F, A, images, multiplier=1)


# ---------------------------------------------------------------------------
# Quantum traces
# ---------------------------------------------------------------------------


def tau(n: int, i: int, A: Optional[QuantumMatrix] = None) -> NCPoly:
    """``tau_i = sum_{|I| = i} q^{-2 w(I)} [I|I]`` with ``w(I)`` the sum of ``I``."""
    if A is None:
        A = QuantumMatrix(n, n)
    if A.m != n or A.n != n:
        raise ValueError("tau needs the n x n quantum matrix algebra")
    if not 1 <= i <= n:
        raise IndexError(f"tau index {i} outside 1..{n}")
    out = A.zero()
    for I in combinations(range(1, n + 1), i):
        out = out + quantum_minor_cached(A, I, I) * A.qpow(-2 * sum(I))
    return out
