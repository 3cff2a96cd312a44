"""Free graded-commutative algebras over Q with Koszul signs.

A `GradedAlgebra` is freely generated by named generators of degree >= 2
(simple connectivity).  Monomials are stored canonically as tuples of
(generator index, exponent) pairs sorted by index; odd generators square to
zero.  Elements are sparse Fraction-coefficient combinations of monomials.

The sign conventions used throughout:

* products reorder factors into index order; each transposition of two odd
  factors contributes -1,
* a degree-n derivation (n counts how much the map *lowers* degree; a
  differential is the case n = -1) extends over products by
  theta(ab) = theta(a)b + (-1)^(n|a|) a theta(b).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

Monomial = tuple[tuple[int, int], ...]  # ((gen_index, exponent), ...)
UNIT: Monomial = ()


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


class GradedAlgebra:
    """Free graded-commutative algebra on generators of degree >= 2."""

    def __init__(self, generators: Sequence[tuple[str, int]]):
        gens = []
        seen = set()
        for name, degree in generators:
            if degree < 2:
                raise AlgebraError(f"generator {name!r} has degree {degree} < 2")
            if name in seen:
                raise AlgebraError(f"duplicate generator name {name!r}")
            seen.add(name)
            gens.append(Generator(name, degree))
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.index: dict[str, int] = {g.name: i for i, g in enumerate(gens)}
        self.degrees: tuple[int, ...] = tuple(g.degree for g in gens)
        self._basis_cache: dict[int, tuple[Monomial, ...]] = {}

    def __repr__(self):
        inner = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"GradedAlgebra({inner})"

    def gen_degree(self, i: int) -> int:
        return self.degrees[i]

    def is_odd(self, i: int) -> bool:
        return self.degrees[i] % 2 == 1

    # -- monomials ---------------------------------------------------------

    def monomial_degree(self, m: Monomial) -> int:
        return sum(e * self.degrees[i] for i, e in m)

    def word_length(self, m: Monomial) -> int:
        return sum(e for _, e in m)

    def check_monomial(self, m: Monomial) -> None:
        last = -1
        for i, e in m:
            if i <= last or e <= 0 or i >= len(self.generators):
                raise AlgebraError(f"malformed monomial {m}")
            if self.is_odd(i) and e > 1:
                raise AlgebraError(
                    f"odd generator {self.generators[i].name} has exponent {e} > 1"
                )
            last = i

    def _odd_word(self, m: Monomial) -> tuple[int, ...]:
        return tuple(i for i, _ in m if self.is_odd(i))

    def multiply_monomials(self, m1: Monomial, m2: Monomial):
        """Return (sign, product monomial) or None when the product is zero."""
        odd1 = self._odd_word(m1)
        odd2 = self._odd_word(m2)
        if set(odd1) & set(odd2):
            return None
        # Koszul sign: move each odd factor of m2 into position past the odd
        # factors of m1 with larger index.
        inversions = 0
        for b in odd2:
            for a in odd1:
                if a > b:
                    inversions += 1
        sign = -1 if inversions % 2 else 1
        merged: dict[int, int] = {}
        for i, e in m1:
            merged[i] = merged.get(i, 0) + e
        for i, e in m2:
            merged[i] = merged.get(i, 0) + e
        return sign, tuple(sorted(merged.items()))

    def monomial_basis(self, degree: int) -> tuple[Monomial, ...]:
        """All monomials of the given total degree, canonically ordered."""
        if degree < 0:
            return ()
        if degree in self._basis_cache:
            return self._basis_cache[degree]
        out: list[Monomial] = []

        def rec(start: int, remaining: int, acc: list[tuple[int, int]]):
            if remaining == 0:
                out.append(tuple(acc))
                return
            for i in range(start, len(self.generators)):
                d = self.degrees[i]
                if d > remaining:
                    continue
                emax = 1 if self.is_odd(i) else remaining // d
                for e in range(1, emax + 1):
                    if e * d <= remaining:
                        acc.append((i, e))
                        rec(i + 1, remaining - e * d, acc)
                        acc.pop()

        rec(0, degree, [])
        basis = tuple(sorted(out))
        self._basis_cache[degree] = basis
        return basis

    def basis_count_series(self, up_to: int) -> list[int]:
        """Coefficients of prod_even 1/(1-t^d) * prod_odd (1+t^d) up to t^up_to."""
        coeffs = [0] * (up_to + 1)
        coeffs[0] = 1
        for g in self.generators:
            d = g.degree
            if d % 2 == 1:
                for k in range(up_to, d - 1, -1):
                    coeffs[k] += coeffs[k - d]
            else:
                for k in range(d, up_to + 1):
                    coeffs[k] += coeffs[k - d]
        return coeffs

    # -- elements ----------------------------------------------------------

    def zero(self) -> "Element":
        return Element(self, {})

    def unit(self, coeff=1) -> "Element":
        c = Fraction(coeff)
        return Element(self, {UNIT: c} if c else {})

    def gen(self, name: str) -> "Element":
        if name not in self.index:
            raise AlgebraError(f"unknown generator {name!r}")
        return Element(self, {((self.index[name], 1),): Fraction(1)})

    def element(self, terms: Mapping[Monomial, Fraction]) -> "Element":
        clean = {}
        for m, c in terms.items():
            self.check_monomial(m)
            c = Fraction(c)
            if c:
                clean[m] = c
        return Element(self, clean)

    def monomial_element(self, m: Monomial, coeff=1) -> "Element":
        self.check_monomial(m)
        c = Fraction(coeff)
        return Element(self, {m: c} if c else {})


def _monomial_sort_key(alg: GradedAlgebra, m: Monomial):
    return (alg.monomial_degree(m), m)


class Element:
    """Sparse rational linear combination of canonical monomials."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedAlgebra, terms: dict[Monomial, Fraction]):
        self.algebra = algebra
        self.terms = terms

    # construction helpers keep zero coefficients out of self.terms

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Common degree of all monomials, None for 0, error if mixed."""
        degs = {self.algebra.monomial_degree(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise AlgebraError(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self.algebra.monomial_degree(m) for m in self.terms}) <= 1

    def homogeneous_parts(self) -> dict[int, "Element"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.algebra.monomial_degree(m), {})[m] = c
        return {d: Element(self.algebra, t) for d, t in sorted(parts.items())}

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def _check_same(self, other: "Element"):
        if self.algebra is not other.algebra:
            raise AlgebraError("operands live in different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check_same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Element(self.algebra, out)

    def __neg__(self) -> "Element":
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, coeff) -> "Element":
        c = Fraction(coeff)
        if not c:
            return Element(self.algebra, {})
        return Element(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __rmul__(self, coeff):
        if isinstance(coeff, (int, Fraction)):
            return self.scale(coeff)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_same(other)
        alg = self.algebra
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = alg.multiply_monomials(m1, m2)
                if prod is None:
                    continue
                sign, m = prod
                s = out.get(m, Fraction(0)) + sign * c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Element(alg, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.algebra), tuple(sorted(self.terms.items()))))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(
            self.terms.items(), key=lambda mc: _monomial_sort_key(self.algebra, mc[0])
        )

    def __str__(self) -> str:
        return format_element(self)

    __repr__ = __str__


def format_monomial(alg: GradedAlgebra, m: Monomial) -> str:
    if m == UNIT:
        return "1"
    factors = []
    for i, e in m:
        name = alg.generators[i].name
        factors.append(name if e == 1 else f"{name}^{e}")
    return "*".join(factors)


def format_element(el: Element) -> str:
    if el.is_zero():
        return "0"
    parts = []
    for m, c in el.sorted_terms():
        mono = format_monomial(el.algebra, m)
        if m == UNIT:
            body = str(c) if c > 0 else str(-c)
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


# -- derivation-law extension ----------------------------------------------


def extend_value_map(
    alg: GradedAlgebra,
    values: Mapping[int, Element],
    op_degree: int,
    el: Element,
) -> Element:
    """Extend a generator-value map by the degree-`op_degree` derivation law.

    `op_degree` is the amount the operator lowers degree (-1 for a
    differential).  Generators absent from `values` map to zero.
    """
    out = alg.zero()
    parity = op_degree % 2
    for m, coeff in el.terms.items():
        prefix_deg = 0
        for pos, (i, e) in enumerate(m):
            val = values.get(i)
            if val is not None and not val.is_zero():
                # theta(g^e) = e * g^(e-1) * theta(g) for even g, theta(g) odd g
                inner = val if e == 1 else alg.monomial_element(((i, e - 1),), e) * val
                left = alg.monomial_element(m[:pos], 1)
                right = alg.monomial_element(m[pos + 1:], 1)
                sign = -1 if (parity and prefix_deg % 2) else 1
                out = out + (left * inner * right).scale(sign * coeff)
            prefix_deg += e * alg.degrees[i]
    return out


# -- differentials and models ------------------------------------------------


class Differential:
    """Degree +1 derivation given by values on generators."""

    def __init__(self, algebra: GradedAlgebra, values: Mapping[str, Element]):
        self.algebra = algebra
        vals: dict[int, Element] = {}
        for name, el in values.items():
            if name not in algebra.index:
                raise AlgebraError(f"unknown generator {name!r} in differential")
            i = algebra.index[name]
            if el.is_zero():
                continue
            if el.algebra is not algebra:
                raise AlgebraError("differential value lives in the wrong algebra")
            if not el.is_homogeneous() or el.degree() != algebra.degrees[i] + 1:
                raise AlgebraError(
                    f"d({name}) must be homogeneous of degree {algebra.degrees[i] + 1}"
                )
            vals[i] = el
        self.values = vals

    def value(self, i: int) -> Element:
        return self.values.get(i, self.algebra.zero())

    def __call__(self, el: Element) -> Element:
        return extend_value_map(self.algebra, self.values, -1, el)

    def check_squared(self):
        """(ok, witness): witness = (generator name, residual) on failure."""
        for i in sorted(self.values):
            residual = self(self.values[i])
            if not residual.is_zero():
                return False, (self.algebra.generators[i].name, residual)
        return True, None

    def is_decomposable(self) -> bool:
        return all(is_decomposable(v) for v in self.values.values())


class SullivanModel:
    """A free graded-commutative algebra with a differential."""

    def __init__(self, algebra: GradedAlgebra, differential: Differential):
        if differential.algebra is not algebra:
            raise AlgebraError("differential is over a different algebra")
        self.algebra = algebra
        self.differential = differential

    @classmethod
    def build(cls, generators: Sequence[tuple[str, int]], d_strings: Mapping[str, "Element"] | None = None):
        alg = GradedAlgebra(generators)
        return cls(alg, Differential(alg, d_strings or {}))

    def d(self, el: Element) -> Element:
        return self.differential(el)

    def check(self):
        return self.differential.check_squared()

    def is_minimal(self) -> bool:
        return self.differential.is_decomposable()

    def max_degree(self) -> int:
        return max(self.algebra.degrees) if self.algebra.degrees else 0

    def __repr__(self):
        return f"SullivanModel({self.algebra!r})"


# -- small structural predicates ---------------------------------------------


def is_decomposable(el: Element) -> bool:
    """True iff every monomial has word length >= 2 (vacuously for 0)."""
    return all(el.algebra.word_length(m) >= 2 for m in el.terms)


def augmentation(el: Element) -> Fraction:
    """Coefficient of the unit monomial."""
    return el.coefficient(UNIT)


def linear_part(el: Element) -> Element:
    """The word-length-1 part of an element."""
    return Element(
        el.algebra,
        {m: c for m, c in el.terms.items() if el.algebra.word_length(m) == 1},
    )
