"""Graded algebras over ``Q[q, q^-1]`` and their elements.

Three kinds of algebra are supported:

* :class:`QuantumMatrix` -- the single-parameter quantum matrix algebra
  ``O_q(M_{m,n})`` on generators ``X[i,j]``, with PBW normal form in
  row-major order;
* :class:`FreeAlgebra` -- a free algebra on labelled generators with positive
  integer degrees;
* :class:`Tensor` -- the tensor product of two of the above, factors from
  different sides commuting.

Relations in ``O_q(M_{m,n})`` (``i < k``, ``j < l``)::

    X[i,j] X[i,l] = q X[i,l] X[i,j]
    X[i,j] X[k,j] = q X[k,j] X[i,j]
    X[i,l] X[k,j] = X[k,j] X[i,l]
    X[i,j] X[k,l] - X[k,l] X[i,j] = (q - q^-1) X[i,l] X[k,j]

Monomials of a quantum matrix algebra are non-decreasing tuples of generator
indices (row-major numbering from 0); free-algebra monomials are arbitrary
tuples of generator indices; tensor monomials are pairs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactnum import ONE, ZERO, LaurentPoly

Monomial = tuple
Terms = Dict[Monomial, LaurentPoly]

__all__ = [
    "AlgebraSpec",
    "QuantumMatrix",
    "FreeAlgebra",
    "Tensor",
    "NCPoly",
    "AlgebraHom",
    "multiply",
    "graded_basis",
    "express_in_basis",
    "algebra_hom",
    "from_vector",
    "parse_element",
]


class AlgebraMismatch(ValueError):
    pass


def _add_into(acc: Terms, mono: Monomial, c: LaurentPoly) -> None:
    if not c:
        return
    v = acc.get(mono)
    if v is None:
        acc[mono] = c
    else:
        s = v + c
        if s:
            acc[mono] = s
        else:
            del acc[mono]


class AlgebraSpec:
    """Base class; concrete specs are frozen dataclasses (hashable, comparable)."""

    def one(self) -> Monomial:
        return ()

    def degree(self, mono: Monomial) -> int:
        raise NotImplementedError

    def mul_monomials(self, a: Monomial, b: Monomial) -> Terms:
        raise NotImplementedError

    def basis(self, d: int) -> List[Monomial]:
        raise NotImplementedError

    def basis_index(self, d: int) -> Dict[Monomial, int]:
        cache = _BASIS_INDEX.setdefault(self, {})
        idx = cache.get(d)
        if idx is None:
            idx = {m: k for k, m in enumerate(self.basis(d))}
            cache[d] = idx
        return idx

    def dimension(self, d: int) -> int:
        raise NotImplementedError

    def format_monomial(self, mono: Monomial) -> str:
        raise NotImplementedError

    def parse_monomial(self, text: str) -> Monomial:
        raise NotImplementedError

    def sort_key(self, mono: Monomial):
        return (self.degree(mono), mono)

    # element constructors
    def element(self, terms: Optional[Mapping[Monomial, object]] = None) -> "NCPoly":
        return NCPoly(self, terms or {})

    def unit(self) -> "NCPoly":
        return NCPoly(self, {self.one(): ONE})

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})


_BASIS_INDEX: Dict[AlgebraSpec, Dict[int, Dict[Monomial, int]]] = {}
_MUL_CACHE: Dict[AlgebraSpec, Dict[Tuple[Monomial, int], Terms]] = {}


def _compositions_multiset(ngens: int, d: int) -> Iterable[Tuple[int, ...]]:
    return itertools.combinations_with_replacement(range(ngens), d)


@dataclass(frozen=True)
class QuantumMatrix(AlgebraSpec):
    """``O_q(M_{m,n})``.  ``q`` is the generic parameter unless ``qvalue`` pins it
    to a nonzero rational (``qvalue=1`` is the commutative coordinate ring).

    ``corrupt`` holds debug-only relation corruptions used as negative
    controls; it is empty for every real computation.
    """

    m: int
    n: int
    qvalue: Optional[Fraction] = None
    corrupt: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("quantum matrix algebra needs m, n >= 1")
        if self.qvalue is not None:
            object.__setattr__(self, "qvalue", Fraction(self.qvalue))
            if self.qvalue == 0:
                raise ValueError("q must be nonzero")

    # -- parameter helpers ------------------------------------------------
    @property
    def q(self) -> LaurentPoly:
        if self.qvalue is None:
            return LaurentPoly.monomial(1, 1)
        return LaurentPoly.const(self.qvalue)

    def qpow(self, k: int) -> LaurentPoly:
        if self.qvalue is None:
            return LaurentPoly.monomial(1, k)
        return LaurentPoly.const(self.qvalue ** k)

    def same_shape(self, m: int, n: int) -> "QuantumMatrix":
        """Sibling algebra with the same parameter and corruption flags."""
        return QuantumMatrix(m, n, self.qvalue, self.corrupt)

    # -- generators ------------------------------------------------------
    @property
    def ngens(self) -> int:
        return self.m * self.n

    def gen_index(self, i: int, j: int) -> int:
        """Index of ``X[i,j]`` (1-based ``i``, ``j``)."""
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise IndexError(f"X[{i},{j}] outside {self.m}x{self.n}")
        return (i - 1) * self.n + (j - 1)

    def gen_pos(self, g: int) -> Tuple[int, int]:
        return divmod(g, self.n)[0] + 1, g % self.n + 1

    def gen(self, i: int, j: int) -> "NCPoly":
        return NCPoly(self, {(self.gen_index(i, j),): ONE})

    def generators(self) -> List[Monomial]:
        return [(g,) for g in range(self.ngens)]

    def degree(self, mono: Monomial) -> int:
        return len(mono)

    def row_content(self, mono: Monomial) -> Tuple[int, ...]:
        return tuple(sorted(g // self.n for g in mono))

    def col_content(self, mono: Monomial) -> Tuple[int, ...]:
        return tuple(sorted(g % self.n for g in mono))

    # -- PBW rewriting ---------------------------------------------------
    def _swap(self, hi: int, lo: int) -> List[Tuple[LaurentPoly, int, int]]:
        """Rewrite ``X_hi X_lo`` (``hi > lo``) as sum of ``c X_a X_b`` with ``a <= b``."""
        k, l = divmod(hi, self.n)
        i, j = divmod(lo, self.n)
        if i == k:  # same row, j < l
            e = 1 if "flip-row" in self.corrupt else -1
            return [(self.qpow(e), lo, hi)]
        if j == l:  # same column, i < k
            return [(self.qpow(-1), lo, hi)]
        if j > l:  # anti-diagonal pair commutes
            return [(ONE, lo, hi)]
        # i < k, j < l
        cross = self.q - self.qpow(-1)
        if "flip-cross" in self.corrupt:
            cross = -cross
        if not cross:
            return [(ONE, lo, hi)]
        a = i * self.n + l
        b = k * self.n + j
        return [(ONE, lo, hi), (-cross, a, b)]

    def _mul_gen(self, mono: Monomial, g: int) -> Terms:
        if not mono or mono[-1] <= g:
            return {mono + (g,): ONE}
        cache = _MUL_CACHE.setdefault(self, {})
        key = (mono, g)
        hit = cache.get(key)
        if hit is not None:
            return hit
        prefix, last = mono[:-1], mono[-1]
        out: Terms = {}
        for c, a, b in self._swap(last, g):
            for m1, c1 in self._mul_gen(prefix, a).items():
                cc = c * c1
                for m2, c2 in self._mul_gen(m1, b).items():
                    _add_into(out, m2, cc * c2)
        cache[key] = out
        return out

    def mul_monomials(self, a: Monomial, b: Monomial) -> Terms:
        cur: Terms = {a: ONE}
        for g in b:
            nxt: Terms = {}
            for m, c in cur.items():
                for m2, c2 in self._mul_gen(m, g).items():
                    _add_into(nxt, m2, c * c2)
            cur = nxt
        return cur

    def normal_form_word(self, word: Sequence[int]) -> Terms:
        """Normal form of an arbitrary product of generators, left to right."""
        return self.mul_monomials((), tuple(word))

    # -- bases ------------------------------------------------------------
    def basis(self, d: int) -> List[Monomial]:
        if d < 0:
            return []
        return list(_compositions_multiset(self.ngens, d))

    def dimension(self, d: int) -> int:
        from math import comb

        return comb(self.ngens + d - 1, d) if d >= 0 else 0

    # -- text ------------------------------------------------------------
    def format_monomial(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        parts = []
        for g, grp in itertools.groupby(mono):
            i, j = self.gen_pos(g)
            parts.append(f"X[{i},{j}]^{len(list(grp))}")
        return "*".join(parts)

    _GEN = re.compile(r"X\[(\d+),(\d+)\](?:\^(\d+))?")

    def parse_monomial(self, text: str) -> Monomial:
        text = text.strip()
        if text == "1":
            return ()
        word = []
        for part in text.split("*"):
            m = self._GEN.fullmatch(part.strip())
            if not m:
                raise ValueError(f"bad monomial factor {part!r}")
            g = self.gen_index(int(m.group(1)), int(m.group(2)))
            word.extend([g] * int(m.group(3) or 1))
        if list(word) != sorted(word):
            raise ValueError(f"monomial {text!r} is not in PBW order")
        return tuple(word)

    def __repr__(self) -> str:
        extra = "" if self.qvalue is None else f", q={self.qvalue}"
        return f"QuantumMatrix({self.m}, {self.n}{extra})"


@dataclass(frozen=True)
class FreeAlgebra(AlgebraSpec):
    """Free algebra on labelled generators of the given positive degrees."""

    labels: Tuple[str, ...]
    degrees: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.labels) != len(self.degrees):
            raise ValueError("one degree per generator label")
        if any(d < 1 for d in self.degrees):
            raise ValueError("free-algebra generator degrees must be >= 1")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate generator label")

    @property
    def ngens(self) -> int:
        return len(self.labels)

    def gen(self, label_or_index) -> "NCPoly":
        g = label_or_index if isinstance(label_or_index, int) else self.labels.index(label_or_index)
        return NCPoly(self, {(g,): ONE})

    def generators(self) -> List[Monomial]:
        return [(g,) for g in range(self.ngens)]

    def degree(self, mono: Monomial) -> int:
        return sum(self.degrees[g] for g in mono)

    def length(self, mono: Monomial) -> int:
        return len(mono)

    def mul_monomials(self, a: Monomial, b: Monomial) -> Terms:
        return {a + b: ONE}

    def basis(self, d: int) -> List[Monomial]:
        if d < 0:
            return []
        out: List[Monomial] = []

        def rec(prefix: Tuple[int, ...], rest: int):
            if rest == 0:
                out.append(prefix)
                return
            for g, dg in enumerate(self.degrees):
                if dg <= rest:
                    rec(prefix + (g,), rest - dg)

        rec((), d)
        return out

    def dimension(self, d: int) -> int:
        if d < 0:
            return 0
        ways = [1] + [0] * d
        for k in range(1, d + 1):
            ways[k] = sum(ways[k - dg] for dg in self.degrees if dg <= k)
        return ways[d]

    def format_monomial(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        parts = []
        for g, grp in itertools.groupby(mono):
            parts.append(f"{self.labels[g]}^{len(list(grp))}")
        return "*".join(parts)

    def parse_monomial(self, text: str) -> Monomial:
        text = text.strip()
        if text == "1":
            return ()
        word: List[int] = []
        for part in text.split("*"):
            part = part.strip()
            label, _, exp = part.rpartition("^")
            if not label:
                label, exp = part, "1"
            word.extend([self.labels.index(label)] * int(exp))
        return tuple(word)


@dataclass(frozen=True)
class Tensor(AlgebraSpec):
    left: AlgebraSpec
    right: AlgebraSpec

    def one(self) -> Monomial:
        return (self.left.one(), self.right.one())

    def degree(self, mono: Monomial) -> int:
        return self.left.degree(mono[0]) + self.right.degree(mono[1])

    def bidegree(self, mono: Monomial) -> Tuple[int, int]:
        return self.left.degree(mono[0]), self.right.degree(mono[1])

    def mul_monomials(self, a: Monomial, b: Monomial) -> Terms:
        la = self.left.mul_monomials(a[0], b[0])
        ra = self.right.mul_monomials(a[1], b[1])
        out: Terms = {}
        for m1, c1 in la.items():
            for m2, c2 in ra.items():
                out[(m1, m2)] = c1 * c2
        return out

    def basis(self, d: int) -> List[Monomial]:
        out = []
        for k in range(d + 1):
            for a in self.left.basis(k):
                for b in self.right.basis(d - k):
                    out.append((a, b))
        return out

    def dimension(self, d: int) -> int:
        return sum(self.left.dimension(k) * self.right.dimension(d - k) for k in range(d + 1))

    def sort_key(self, mono: Monomial):
        return (self.degree(mono), self.left.sort_key(mono[0]), self.right.sort_key(mono[1]))

    def format_monomial(self, mono: Monomial) -> str:
        return f"{self.left.format_monomial(mono[0])} @ {self.right.format_monomial(mono[1])}"

    def parse_monomial(self, text: str) -> Monomial:
        # split at the outermost '@' belonging to this level: left side may itself be a tensor
        depth_left = _tensor_depth(self.left)
        parts = text.split("@")
        left = "@".join(parts[: depth_left + 1])
        right = "@".join(parts[depth_left + 1 :])
        return (self.left.parse_monomial(left), self.right.parse_monomial(right))

    def pure(self, a: "NCPoly", b: "NCPoly") -> "NCPoly":
        """``a (x) b`` for elements of the two factors."""
        if a.algebra != self.left or b.algebra != self.right:
            raise AlgebraMismatch("tensor factors do not match")
        out: Terms = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                out[(m1, m2)] = c1 * c2
        return NCPoly(self, out)


def _tensor_depth(spec: AlgebraSpec) -> int:
    if isinstance(spec, Tensor):
        return 1 + _tensor_depth(spec.left) + _tensor_depth(spec.right)
    return 0


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


class NCPoly:
    """An element of an :class:`AlgebraSpec`: normal monomials -> Laurent coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: AlgebraSpec, terms: Mapping[Monomial, object]):
        self.algebra = algebra
        t: Terms = {}
        for m, c in terms.items():
            c = LaurentPoly.coerce(c)
            if c:
                t[m] = c
        self.terms = t

    @classmethod
    def _raw(cls, algebra: AlgebraSpec, terms: Terms) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.terms = terms
        return obj

    def _check(self, other: "NCPoly") -> None:
        if self.algebra != other.algebra:
            raise AlgebraMismatch(f"{self.algebra!r} vs {other.algebra!r}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            other = NCPoly(self.algebra, {self.algebra.one(): other})
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(t, m, c)
        return NCPoly._raw(self.algebra, t)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly._raw(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "NCPoly":
        if not isinstance(other, NCPoly):
            other = NCPoly(self.algebra, {self.algebra.one(): other})
        return self + (-other)

    def __rsub__(self, other) -> "NCPoly":
        return (-self) + other

    def scale(self, c) -> "NCPoly":
        c = LaurentPoly.coerce(c)
        if not c:
            return NCPoly._raw(self.algebra, {})
        return NCPoly._raw(self.algebra, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "NCPoly":
        return self.scale(other)

    def __pow__(self, k: int) -> "NCPoly":
        out = self.algebra.unit()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self.algebra == other.algebra and self.terms == other.terms
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self == NCPoly(self.algebra, {self.algebra.one(): other})
        return NotImplemented

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def degrees(self) -> set:
        return {self.algebra.degree(m) for m in self.terms}

    def is_homogeneous(self, d: Optional[int] = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (d is None or d in ds)

    def homogeneous_part(self, d: int) -> "NCPoly":
        return NCPoly._raw(self.algebra, {m: c for m, c in self.terms.items() if self.algebra.degree(m) == d})

    def coefficient(self, mono: Monomial) -> LaurentPoly:
        return self.terms.get(mono, ZERO)

    def map_coefficients(self, f: Callable[[LaurentPoly], object]) -> "NCPoly":
        return NCPoly(self.algebra, {m: f(c) for m, c in self.terms.items()})

    def specialize(self, lam) -> "NCPoly":
        return self.map_coefficients(lambda c: c.specialize(lam))

    def sorted_terms(self) -> List[Tuple[Monomial, LaurentPoly]]:
        return sorted(self.terms.items(), key=lambda mc: self.algebra.sort_key(mc[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{self.algebra.format_monomial(m)}" for m, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"NCPoly({self.algebra!r}, {str(self)!r})"


def multiply(f: NCPoly, g: NCPoly) -> NCPoly:
    """Product in PBW normal form."""
    f._check(g)
    A = f.algebra
    out: Terms = {}
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            cc = c1 * c2
            for m, c in A.mul_monomials(m1, m2).items():
                _add_into(out, m, cc * c)
    return NCPoly._raw(A, out)


def graded_basis(A: AlgebraSpec, d: int) -> List[Monomial]:
    if d < 0:
        raise ValueError("degree must be >= 0")
    return A.basis(d)


def express_in_basis(f: NCPoly, d: int) -> List[LaurentPoly]:
    """Coordinates of a degree-``d`` homogeneous element in ``graded_basis`` order."""
    if not f.is_homogeneous(d):
        raise ValueError(f"element is not homogeneous of degree {d}")
    idx = f.algebra.basis_index(d)
    vec = [ZERO] * len(idx)
    for m, c in f.terms.items():
        vec[idx[m]] = c
    return vec


def from_vector(A: AlgebraSpec, d: int, vec: Sequence[object]) -> NCPoly:
    basis = A.basis(d)
    if len(vec) != len(basis):
        raise ValueError("vector length does not match the graded component")
    return NCPoly(A, {m: c for m, c in zip(basis, vec)})


class AlgebraHom:
    """The algebra homomorphism determined by images of generators.

    Images of monomials are memoized by prefix.  ``multiplier`` is the
    declared degree scaling: a degree-``d`` monomial must map into degree
    ``multiplier * d``.
    """

    def __init__(self, source: AlgebraSpec, target: AlgebraSpec, images: Mapping[int, NCPoly], multiplier: int = 1):
        self.source = source
        self.target = target
        self.multiplier = multiplier
        self.images: Dict[int, NCPoly] = {}
        for g, img in images.items():
            if img.algebra != target:
                raise AlgebraMismatch(f"image of generator {g} lives in {img.algebra!r}, not {target!r}")
            gdeg = source.degree((g,))
            if not img.is_homogeneous(multiplier * gdeg) and not img.is_zero():
                raise ValueError(f"image of generator {g} is not homogeneous of degree {multiplier * gdeg}")
            self.images[g] = img
        self._cache: Dict[Monomial, NCPoly] = {source.one(): target.unit()}

    def on_monomial(self, mono: Monomial) -> NCPoly:
        hit = self._cache.get(mono)
        if hit is not None:
            return hit
        res = multiply(self.on_monomial(mono[:-1]), self.images[mono[-1]])
        self._cache[mono] = res
        return res

    def __call__(self, f: NCPoly) -> NCPoly:
        if f.algebra != self.source:
            raise AlgebraMismatch(f"hom source is {self.source!r}, got {f.algebra!r}")
        out: Terms = {}
        for m, c in f.terms.items():
            for m2, c2 in self.on_monomial(m).terms.items():
                _add_into(out, m2, c * c2)
        return NCPoly._raw(self.target, out)


def algebra_hom(source: AlgebraSpec, images: Mapping[int, NCPoly], f: NCPoly, multiplier: int = 1) -> NCPoly:
    if not images:
        raise ValueError("no generator images given")
    targets = {img.algebra for img in images.values()}
    if len(targets) != 1:
        raise AlgebraMismatch("generator images live in different algebras")
    return AlgebraHom(source, targets.pop(), images, multiplier)(f)


_TERM_SPLIT = re.compile(r"\)\*")


def parse_element(A: AlgebraSpec, text: str) -> NCPoly:
    """Inverse of ``str(NCPoly)``: ``(coef)*monomial + (coef)*monomial ...``."""
    text = text.strip()
    if text == "0":
        return A.zero()
    terms: Terms = {}
    pos = 0
    while pos < len(text):
        if text[pos] != "(":
            raise ValueError(f"expected '(' at {pos} in {text!r}")
        close = text.index(")", pos)
        coef = LaurentPoly.parse(text[pos + 1 : close])
        if text[close + 1] != "*":
            raise ValueError(f"expected '*' after coefficient at {close}")
        nxt = text.find(" + (", close)
        mono_text = text[close + 2 : nxt if nxt >= 0 else len(text)]
        _add_into(terms, A.parse_monomial(mono_text), coef)
        pos = nxt + 3 if nxt >= 0 else len(text)
    return NCPoly._raw(A, terms)
