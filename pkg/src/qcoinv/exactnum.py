"""Exact coefficients: Laurent polynomials in ``q`` over the rationals, and
fraction-free linear algebra over ``Q[q, q^-1]`` and its fraction field.

Coefficients are stored as Python ``int`` whenever they are integral and as
:class:`fractions.Fraction` otherwise; both behave as exact rationals.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.densearith import dup_add, dup_mul, dup_quo, dup_sub
from sympy.polys.euclidtools import dup_gcd

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "LaurentPoly"]

__all__ = [
    "LaurentPoly",
    "LaurentMatrix",
    "Q",
    "ONE",
    "ZERO",
    "as_rational",
    "parse_rational",
    "kernel_basis",
    "rank",
    "specialize",
    "laurent_arith",
]


def as_rational(c) -> Rational:
    """Normalize an exact scalar to ``int`` when integral."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return parse_rational(c)
    raise TypeError(f"not an exact rational: {c!r}")


def parse_rational(text: str) -> Rational:
    return as_rational(Fraction(text.strip()))


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_e q^e`` with rational coefficients."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Optional[Mapping[int, Rational]] = None):
        t = {}
        if terms:
            for e, c in terms.items():
                c = as_rational(c)
                if c:
                    t[int(e)] = c
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, t: Dict[int, Rational]) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._t = t
        obj._h = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = as_rational(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, c, e: int) -> "LaurentPoly":
        c = as_rational(c)
        return cls._raw({e: c} if c else {})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return cls.const(x)

    # -- inspection -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __len__(self) -> int:
        return len(self._t)

    def items(self):
        return self._t.items()

    def coeff(self, e: int) -> Rational:
        return self._t.get(e, 0)

    def terms(self) -> List[Tuple[int, Rational]]:
        """Terms as ``(exponent, coefficient)``, exponents descending."""
        return sorted(self._t.items(), reverse=True)

    def min_exp(self) -> int:
        return min(self._t)

    def max_exp(self) -> int:
        return max(self._t)

    def spread(self) -> int:
        return max(self._t) - min(self._t) if self._t else 0

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def is_unit(self) -> bool:
        """True for ``c q^e`` with ``c`` nonzero, the units of ``Q[q, q^-1]``."""
        return len(self._t) == 1

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._t.get(0, 0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for e, c in other._t.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v if not isinstance(v, Fraction) or v.denominator != 1 else v.numerator
            else:
                t.pop(e, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                c = as_rational(other)
                if not c:
                    return ZERO
                return LaurentPoly._raw({e: as_rational(v * c) for e, v in self._t.items()})
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return ZERO
        if len(b) == 1:
            (f, d), = b.items()
            return LaurentPoly._raw({e + f: as_rational(c * d) for e, c in a.items()})
        if len(a) == 1:
            (e, c), = a.items()
            return LaurentPoly._raw({e + f: as_rational(c * d) for f, d in b.items()})
        t: Dict[int, Rational] = {}
        for e, c in a.items():
            for f, d in b.items():
                k = e + f
                t[k] = t.get(k, 0) + c * d
        return LaurentPoly._raw({e: as_rational(c) for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_unit():
                raise ValueError("only units of Q[q, q^-1] have negative powers")
            (e, c), = self._t.items()
            return LaurentPoly._raw({e * k: as_rational(Fraction(c) ** k)})
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q^k``."""
        return LaurentPoly._raw({e + k: c for e, c in self._t.items()})

    def bar(self) -> "LaurentPoly":
        """The involution ``q -> q^-1``."""
        return LaurentPoly._raw({-e: c for e, c in self._t.items()})

    # -- evaluation -------------------------------------------------------
    def specialize(self, lam) -> Rational:
        """Evaluate exactly at ``q = lam``; ``lam`` must be nonzero."""
        lam = as_rational(lam)
        if lam == 0:
            raise ValueError("q is a unit; cannot specialize at 0")
        if lam == 1:
            return as_rational(sum(self._t.values()))
        lam = Fraction(lam)
        return as_rational(sum((c * lam ** e for e, c in self._t.items()), Fraction(0)))

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({0: as_rational(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # -- text form --------------------------------------------------------
    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.terms()):
            mag = -c if c < 0 else c
            body = f"{mag}*q^{e}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    _TERM = re.compile(
        r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*(?:\*\s*)?)?(q(?:\s*\^\s*\(?\s*(-?\d+)\s*\)?)?)?\s*"
    )

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Parse the canonical text form (``1*q^2 - 3*q^0``); also accepts
        shorthand like ``q``, ``q^-1`` and bare rationals."""
        s = text.strip()
        if s in ("", "0"):
            return ZERO
        pos = 0
        t: Dict[int, Rational] = {}
        first = True
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse Laurent polynomial {text!r} at {pos}")
            sign, coef, qpart, exp = m.groups()
            if coef is None and qpart is None:
                raise ValueError(f"cannot parse Laurent polynomial {text!r} at {pos}")
            if sign is None and not first:
                raise ValueError(f"missing operator in {text!r} at {pos}")
            c = Fraction(coef) if coef is not None else Fraction(1)
            if sign == "-":
                c = -c
            e = 0 if qpart is None else (1 if exp is None else int(exp))
            t[e] = t.get(e, 0) + c
            pos = m.end()
            first = False
        return cls(t)


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
Q = LaurentPoly._raw({1: 1})


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def specialize(p: LaurentPoly, lam) -> Rational:
    return LaurentPoly.coerce(p).specialize(lam)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


class LaurentMatrix:
    """Sparse ``rows x cols`` matrix with :class:`LaurentPoly` entries."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], Scalar]] = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        e: Dict[Tuple[int, int], LaurentPoly] = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
                v = LaurentPoly.coerce(v)
                if v:
                    e[(i, j)] = v
        self._e = e

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[Scalar]]) -> "LaurentMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        ent = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                ent[(i, j)] = v
        return cls(rows, cols, ent)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, LaurentPoly]]) -> "LaurentMatrix":
        ent = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                ent[(i, j)] = v
        return cls(nrows, len(columns), ent)

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "LaurentMatrix":
        return cls(rows, cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: Tuple[int, int]) -> LaurentPoly:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._e.get((i, j), ZERO)

    def entries(self) -> Dict[Tuple[int, int], LaurentPoly]:
        return dict(self._e)

    def nnz(self) -> int:
        return len(self._e)

    def dense(self) -> List[List[LaurentPoly]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._e.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> List[Dict[int, LaurentPoly]]:
        out: List[Dict[int, LaurentPoly]] = [dict() for _ in range(self.rows)]
        for (i, j), v in self._e.items():
            out[i][j] = v
        return out

    def column(self, j: int) -> List[LaurentPoly]:
        return [self._e.get((i, j), ZERO) for i in range(self.rows)]

    def transpose(self) -> "LaurentMatrix":
        m = LaurentMatrix(self.cols, self.rows)
        m._e = {(j, i): v for (i, j), v in self._e.items()}
        return m

    def is_zero(self) -> bool:
        return not self._e

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc: Dict[Tuple[int, int], LaurentPoly] = {}
        for (i, k), a in self._e.items():
            for j, b in right[k].items():
                key = (i, j)
                acc[key] = acc.get(key, ZERO) + a * b
        m = LaurentMatrix(self.rows, other.cols)
        m._e = {k: v for k, v in acc.items() if v}
        return m

    def apply(self, vec: Sequence[Scalar]) -> List[LaurentPoly]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [ZERO] * self.rows
        vv = [LaurentPoly.coerce(x) for x in vec]
        for (i, j), a in self._e.items():
            if vv[j]:
                out[i] = out[i] + a * vv[j]
        return out

    def hstack(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        m = LaurentMatrix(self.rows, self.cols + other.cols)
        m._e = dict(self._e)
        for (i, j), v in other._e.items():
            m._e[(i, j + self.cols)] = v
        return m

    def specialize(self, lam) -> "LaurentMatrix":
        """Entrywise evaluation at ``q = lam`` (entries become constants)."""
        m = LaurentMatrix(self.rows, self.cols)
        ent = {}
        for k, v in self._e.items():
            c = v.specialize(lam)
            if c:
                ent[k] = LaurentPoly.const(c)
        m._e = ent
        return m

    def is_constant(self) -> bool:
        return all(v.is_constant() for v in self._e.values())

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.rows}x{self.cols}, nnz={len(self._e)})"


# ---------------------------------------------------------------------------
# Integer-polynomial row representation used by the elimination kernels.
# Polynomials are sympy dense lists (highest degree first) over ZZ.
# ---------------------------------------------------------------------------

IPoly = list  # dense, high -> low, ZZ coefficients, [] is zero


def _row_to_ipolys(row: Mapping[int, LaurentPoly]) -> Dict[int, IPoly]:
    """Scale a row by a unit times a positive integer so every entry is in Z[q]."""
    if not row:
        return {}
    lo = min(v.min_exp() for v in row.values())
    den = 1
    for v in row.values():
        for c in v._t.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
    out = {}
    for j, v in row.items():
        hi = v.max_exp() - lo
        p = [ZZ(0)] * (hi + 1)
        for e, c in v._t.items():
            p[hi - (e - lo)] = ZZ(int(c * den))
        out[j] = p
    return out


def _ipoly_to_laurent(p: IPoly, shift: int = 0) -> LaurentPoly:
    n = len(p) - 1
    return LaurentPoly._raw({n - i + shift: int(c) for i, c in enumerate(p) if c})


def _primitive_row(row: Dict[int, IPoly]) -> Dict[int, IPoly]:
    """Divide a row by the gcd of its entries in Z[q] (sign kept)."""
    g = None
    for p in row.values():
        g = p if g is None else dup_gcd(g, p, ZZ)
        if len(g) == 1 and abs(g[0]) == 1:
            return row
    if g is None:
        return row
    # dup_gcd returns a gcd with positive leading coefficient
    return {j: dup_quo(p, g, ZZ) for j, p in row.items()}


def _pivot_key(p: IPoly, row_index: int) -> Tuple[int, int, int]:
    nz = sum(1 for c in p if c)
    return (nz, len(p), row_index)


def _rref_poly(rows: List[Dict[int, IPoly]], ncols: int, full: bool = True):
    """Fraction-free Gauss(-Jordan) elimination over Z[q] with content stripping.

    Returns ``(pivots, rows)`` where ``pivots`` maps pivot column -> row index.
    With ``full`` the pivot columns are cleared in every other row.
    """
    rows = [_primitive_row(dict(r)) for r in rows if r]
    pivots: Dict[int, int] = {}
    used = [False] * len(rows)
    col_rows: Dict[int, set] = {}
    for i, r in enumerate(rows):
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    for c in range(ncols):
        cand = [i for i in col_rows.get(c, ()) if not used[i]]
        if not cand:
            continue
        pr = min(cand, key=lambda i: _pivot_key(rows[i][c], i))
        used[pr] = True
        pivots[c] = pr
        prow = rows[pr]
        p = prow[c]
        targets = col_rows.get(c, set()) if full else set(cand)
        for i in sorted(targets):
            if i == pr:
                continue
            row = rows[i]
            a = row.get(c)
            if not a:
                continue
            g = dup_gcd(p, a, ZZ)
            pm = dup_quo(p, g, ZZ)
            am = dup_quo(a, g, ZZ)
            new: Dict[int, IPoly] = {}
            for j, v in row.items():
                if j == c:
                    continue
                new[j] = dup_mul(pm, v, ZZ)
            for j, v in prow.items():
                if j == c:
                    continue
                w = dup_sub(new.get(j, []), dup_mul(am, v, ZZ), ZZ)
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            new = {j: v for j, v in new.items() if v}
            for j in row:
                if j not in new:
                    col_rows[j].discard(i)
            for j in new:
                col_rows.setdefault(j, set()).add(i)
            rows[i] = _primitive_row(new)
    return pivots, rows


def _kernel_from_rref(pivots: Dict[int, int], rows: List[Dict[int, IPoly]], ncols: int) -> List[List[IPoly]]:
    out = []
    piv_cols = sorted(pivots)
    for f in range(ncols):
        if f in pivots:
            continue
        # x_f = L, x_c = -r[f] * L / p for each pivot row with a nonzero f entry
        denoms = []
        for c in piv_cols:
            r = rows[pivots[c]]
            a = r.get(f)
            if a:
                p = r[c]
                g = dup_gcd(p, a, ZZ)
                denoms.append(dup_quo(p, g, ZZ))
        L = [ZZ(1)]
        for d in denoms:
            g = dup_gcd(L, d, ZZ)
            L = dup_mul(L, dup_quo(d, g, ZZ), ZZ)
        vec: List[IPoly] = [[] for _ in range(ncols)]
        vec[f] = L
        for c in piv_cols:
            r = rows[pivots[c]]
            a = r.get(f)
            if a:
                p = r[c]
                num = dup_mul(a, L, ZZ)
                vec[c] = dup_quo([-x for x in num], p, ZZ)
        out.append(_normalize_ivec(vec))
    return out


def _normalize_ivec(vec: List[IPoly]) -> List[IPoly]:
    g = None
    for p in vec:
        if p:
            g = p if g is None else dup_gcd(g, p, ZZ)
    if g is not None and not (len(g) == 1 and g[0] == 1):
        vec = [dup_quo(p, g, ZZ) if p else [] for p in vec]
    lead = next((p for p in vec if p), None)
    if lead is not None and lead[0] < 0:
        vec = [[-c for c in p] for p in vec]
    return vec


def _components(rows: Sequence[Mapping[int, object]], ncols: int) -> List[Tuple[List[int], List[int]]]:
    """Connected components of the bipartite row/column incidence graph.

    Returns (row indices, column indices) per component; empty columns form
    singleton components with no rows.
    """
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in rows:
        it = iter(r)
        first = next(it, None)
        if first is None:
            continue
        a = find(first)
        for j in it:
            b = find(j)
            if a != b:
                parent[b] = a
    comp_cols: Dict[int, List[int]] = {}
    for j in range(ncols):
        comp_cols.setdefault(find(j), []).append(j)
    comp_rows: Dict[int, List[int]] = {}
    for i, r in enumerate(rows):
        if r:
            comp_rows.setdefault(find(next(iter(r))), []).append(i)
    return [(comp_rows.get(root, []), cols) for root, cols in sorted(comp_cols.items(), key=lambda kv: kv[1][0])]


# ---------------------------------------------------------------------------
# Rational (specialized) elimination
# ---------------------------------------------------------------------------


def _int_row(row: Mapping[int, Rational]) -> Dict[int, int]:
    den = 1
    for c in row.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    out = {j: int(c * den) for j, c in row.items() if c}
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        out = {j: v // g for j, v in out.items()}
    return out


def _rank_int_rows(rows: List[Dict[int, int]]) -> int:
    """Rank over Q of integer rows, by incremental fraction-free echelon form."""
    basis: Dict[int, Dict[int, int]] = {}  # pivot column -> row with leading entry there
    for r in rows:
        r = dict(r)
        while r:
            c = min(r)
            b = basis.get(c)
            if b is None:
                basis[c] = r
                break
            a, p = r[c], b[c]
            g = gcd(a, p)
            am, pm = a // g, p // g
            new = {j: v * pm for j, v in r.items()}
            for j, v in b.items():
                w = new.get(j, 0) - am * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {j: v // g for j, v in new.items()}
            r = new
    return len(basis)


def _rank_rational(rows: List[Dict[int, Rational]], ncols: int) -> int:
    total = 0
    for rids, cols in _components(rows, ncols):
        if not rids:
            continue
        total += _rank_int_rows([_int_row(rows[i]) for i in rids])
    return total


def _kernel_rational(rows: List[Dict[int, Rational]], ncols: int) -> List[List[Rational]]:
    """Kernel basis over Q via Gauss-Jordan on Fractions (used for small systems)."""
    work = [{j: Fraction(v) for j, v in r.items() if v} for r in rows]
    work = [r for r in work if r]
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for c in range(ncols):
        pr = next((r for r in work if c in r), None)
        if pr is None:
            continue
        work.remove(pr)
        inv = 1 / pr[c]
        pr = {j: v * inv for j, v in pr.items()}
        for group in (work, list(pivots.values())):
            for r in group:
                a = r.get(c)
                if a:
                    for j, v in pr.items():
                        w = r.get(j, 0) - a * v
                        if w:
                            r[j] = w
                        else:
                            r.pop(j, None)
        pivots[c] = pr
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        v: List[Rational] = [0] * ncols
        v[f] = 1
        for c, r in pivots.items():
            a = r.get(f)
            if a:
                v[c] = as_rational(-a)
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# Generic (fraction-field) kernel and rank
# ---------------------------------------------------------------------------

# A fixed evaluation point used only to choose which rows to eliminate; the
# result is always certified by an exact product check against every row.
_PROBE = 3


def _probe_rows(rows: List[Dict[int, LaurentPoly]], ncols: int) -> List[int]:
    """Indices of rows that are independent after evaluation at the probe point."""
    basis: Dict[int, Dict[int, int]] = {}
    chosen = []
    for idx, row in enumerate(rows):
        r = _int_row({j: v.specialize(_PROBE) for j, v in row.items()})
        r = {j: v for j, v in r.items() if v}
        while r:
            c = min(r)
            b = basis.get(c)
            if b is None:
                basis[c] = r
                chosen.append(idx)
                break
            a, p = r[c], b[c]
            g = gcd(a, p)
            am, pm = a // g, p // g
            new = {j: v * pm for j, v in r.items()}
            for j, v in b.items():
                w = new.get(j, 0) - am * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {j: v // g for j, v in new.items()}
            r = new
        if len(basis) == ncols:
            break
    return chosen


def _ivec_dot(row: Dict[int, IPoly], vec: List[IPoly]) -> IPoly:
    acc: IPoly = []
    for j, p in row.items():
        v = vec[j]
        if v:
            acc = dup_add(acc, dup_mul(p, v, ZZ), ZZ)
    return acc


def _kernel_component(rows: List[Dict[int, LaurentPoly]], ncols: int) -> List[List[IPoly]]:
    """Exact kernel over Q(q) of a connected block (columns renumbered 0..ncols-1)."""
    if not rows:
        vecs = []
        for f in range(ncols):
            v: List[IPoly] = [[] for _ in range(ncols)]
            v[f] = [ZZ(1)]
            vecs.append(v)
        return vecs
    irows = [_row_to_ipolys(r) for r in rows]
    if len(rows) <= ncols + 2:
        pivots, red = _rref_poly(irows, ncols)
        return _kernel_from_rref(pivots, red, ncols)
    selected = _probe_rows(rows, ncols)
    chosen = set(selected)
    while True:
        pivots, red = _rref_poly([irows[i] for i in sorted(chosen)], ncols)
        kern = _kernel_from_rref(pivots, red, ncols)
        if not kern:
            return kern
        bad = []
        for i, r in enumerate(irows):
            if i in chosen:
                continue
            if any(_ivec_dot(r, v) for v in kern):
                bad.append(i)
                if len(bad) >= max(1, len(kern)):
                    break
        if not bad:
            return kern
        chosen.update(bad)


def kernel_basis(M: LaurentMatrix) -> List[List[LaurentPoly]]:
    """Basis of the right null space of ``M`` over ``Q(q)``.

    Every vector has entries in ``Z[q]`` with no common factor, lowest power of
    ``q`` equal to zero and positive leading coefficient (first nonzero
    entry, highest power).  Vectors are ordered by their free column.
    """
    rows = [r for r in M.row_dicts()]
    result: List[Tuple[int, List[LaurentPoly]]] = []
    for rids, cols in _components(rows, M.cols):
        index = {c: k for k, c in enumerate(cols)}
        sub = [{index[j]: v for j, v in rows[i].items()} for i in rids]
        for vec in _kernel_component(sub, len(cols)):
            full = [ZERO] * M.cols
            first = None
            for k, p in enumerate(vec):
                if p:
                    full[cols[k]] = _ipoly_to_laurent(p)
            # order by free column: the entry equal to the lcm sits at a non-pivot column;
            # use the largest column with a nonzero entry as a stable sort key
            first = max(cols[k] for k, p in enumerate(vec) if p)
            result.append((first, full))
    result.sort(key=lambda t: t[0])
    return [_normalize_laurent_vec(v) for _, v in result]


def _normalize_laurent_vec(v: List[LaurentPoly]) -> List[LaurentPoly]:
    nz = [p for p in v if p]
    if not nz:
        return v
    lo = min(p.min_exp() for p in nz)
    if lo:
        v = [p.shift(-lo) if p else p for p in v]
    lead = next(p for p in v if p)
    if lead.coeff(lead.max_exp()) < 0:
        v = [-p for p in v]
    return v


GENERIC = None


def rank(M: LaurentMatrix, at=GENERIC) -> int:
    """Rank over ``Q(q)`` (``at=None``) or over ``Q`` after evaluating at ``q=at``."""
    if at is GENERIC:
        return M.cols - len(kernel_basis(M))
    lam = as_rational(at)
    if lam == 0:
        raise ValueError("cannot specialize at q = 0")
    rows = [{j: v.specialize(lam) for j, v in r.items()} for r in M.row_dicts()]
    rows = [{j: c for j, c in r.items() if c} for r in rows]
    return _rank_rational(rows, M.cols)


def kernel_basis_at(M: LaurentMatrix, lam) -> List[List[Rational]]:
    """Kernel basis over ``Q`` of ``M`` evaluated at ``q = lam``."""
    lam = as_rational(lam)
    if lam == 0:
        raise ValueError("cannot specialize at q = 0")
    rows = [{j: v.specialize(lam) for j, v in r.items()} for r in M.row_dicts()]
    return _kernel_rational(rows, M.cols)


def is_zero_vector(vec: Iterable) -> bool:
    return not any(vec)
