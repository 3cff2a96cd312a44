"""The connected DG Lie algebra of derivations of a Sullivan model.

A degree-n derivation lowers degrees by n and is stored sparsely by its
values on generators.  The differential is delta(theta) = [d, theta] with
the sign convention

    delta(theta) = d o theta - (-1)^|theta| theta o d,

and the complex is truncated to be connected: degrees <= 0 are dropped and
degree 1 is restricted to delta-cycles before homology is taken.

The same machinery also computes the fibrewise complexes of a relative
model: a `DerivationComplex` is parameterized by the generators the
derivations may hit (`source_gens`) and an optional filter on the value
monomials (used for the based sub-complex).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import (
    Element,
    GradedAlgebra,
    Monomial,
    SullivanModel,
    UNIT,
    extend_value_map,
    format_monomial,
)
from .linalg import RowSpace, Vec, kernel_of_map, solve, vec_add, vec_scale


class Derivation:
    """A degree-n derivation given by values on generators.

    `degree` is the amount of degree lowered; values must be homogeneous of
    degree |gen| - n.  Generators not mentioned map to zero.
    """

    __slots__ = ("algebra", "degree", "values")

    def __init__(self, algebra: GradedAlgebra, degree: int, values: Mapping[int, Element]):
        self.algebra = algebra
        self.degree = degree
        vals: dict[int, Element] = {}
        for i, el in values.items():
            if el.is_zero():
                continue
            if el.algebra is not algebra:
                raise ValueError("derivation value lives in the wrong algebra")
            if not el.is_homogeneous() or el.degree() != algebra.degrees[i] - degree:
                raise ValueError(
                    f"value on {algebra.generators[i].name} must have degree "
                    f"{algebra.degrees[i] - degree}"
                )
            vals[i] = el
        self.values = vals

    @classmethod
    def single(cls, algebra: GradedAlgebra, gen_name: str, value: Element) -> "Derivation":
        i = algebra.index[gen_name]
        deg = algebra.degrees[i] - (value.degree() if not value.is_zero() else 0)
        if value.is_zero():
            raise ValueError("use Derivation(..., {}) for the zero derivation")
        return cls(algebra, algebra.degrees[i] - value.degree(), {i: value})

    def is_zero(self) -> bool:
        return not self.values

    def value(self, i: int) -> Element:
        return self.values.get(i, self.algebra.zero())

    def __call__(self, el: Element) -> Element:
        return extend_value_map(self.algebra, self.values, self.degree, el)

    def __add__(self, other: "Derivation") -> "Derivation":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError("cannot add derivations of different degrees")
        vals: dict[int, Element] = dict(self.values)
        for i, el in other.values.items():
            s = vals.get(i)
            vals[i] = el if s is None else s + el
        return Derivation(self.algebra, self.degree, vals)

    def scale(self, c) -> "Derivation":
        c = Fraction(c)
        return Derivation(
            self.algebra, self.degree, {i: v.scale(c) for i, v in self.values.items()}
        )

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Derivation)
            and self.algebra is other.algebra
            and self.degree == other.degree
            and self.values == other.values
        )

    def __str__(self) -> str:
        return format_derivation(self)

    __repr__ = __str__


def format_derivation(theta: Derivation) -> str:
    """Human-readable form: z* for (z, 1), (z, x^2) for a monomial target."""
    if theta.is_zero():
        return "0"
    alg = theta.algebra
    parts: list[str] = []
    for i in sorted(theta.values):
        name = alg.generators[i].name
        for m, c in theta.values[i].sorted_terms():
            if m == UNIT:
                body = f"{name}*"
            else:
                body = f"({name}, {format_monomial(alg, m)})"
            if abs(c) != 1:
                body = f"{abs(c)}*{body}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def bracket(t1: Derivation, t2: Derivation) -> Derivation:
    """[t1, t2] = t1 o t2 - (-1)^(|t1||t2|) t2 o t1."""
    if t1.algebra is not t2.algebra:
        raise ValueError("brackets need derivations of one algebra")
    alg = t1.algebra
    degree = t1.degree + t2.degree
    sign = -1 if (t1.degree * t2.degree) % 2 else 1
    vals: dict[int, Element] = {}
    for i in set(t1.values) | set(t2.values):
        gen = alg.monomial_element(((i, 1),), 1)
        v = t1(t2(gen)) - t2(t1(gen)).scale(sign)
        if not v.is_zero():
            vals[i] = v
    return Derivation(alg, degree, vals)


# -- complexes ----------------------------------------------------------------


BasisKey = tuple[int, Monomial]  # (generator index, value monomial)


class DerivationComplex:
    """Chain complex of derivations of (a sub-family of generators of) a model.

    * `model` supplies the algebra and the differential D entering
      delta = [D, -].
    * `source_gens` restricts which generators derivations may move
      (fibre generators for a relative model).
    * `value_filter` optionally restricts the allowed value monomials
      (the based sub-complex keeps only monomials with a base factor).
    """

    def __init__(
        self,
        model: SullivanModel,
        source_gens: Sequence[int] | None = None,
        value_filter: Callable[[Monomial], bool] | None = None,
    ):
        self.model = model
        self.algebra = model.algebra
        if source_gens is None:
            source_gens = range(len(model.algebra.generators))
        self.source_gens = tuple(sorted(source_gens))
        self.value_filter = value_filter
        self._basis_cache: dict[int, tuple[BasisKey, ...]] = {}
        self._slice_cache: dict[int, HomologySlice] = {}

    # basis of the (unconstrained) degree-n derivation space
    def basis(self, n: int) -> tuple[BasisKey, ...]:
        if n in self._basis_cache:
            return self._basis_cache[n]
        alg = self.algebra
        keys: list[BasisKey] = []
        for i in self.source_gens:
            target = alg.degrees[i] - n
            if target < 0:
                continue
            for m in alg.monomial_basis(target):
                if self.value_filter is None or self.value_filter(m):
                    keys.append((i, m))
        out = tuple(sorted(keys))
        self._basis_cache[n] = out
        return out

    def basis_derivation(self, key: BasisKey) -> Derivation:
        i, m = key
        el = self.algebra.monomial_element(m, 1)
        return Derivation(self.algebra, self.algebra.degrees[i] - el.degree(), {i: el})

    def to_vector(self, theta: Derivation) -> Vec:
        v: Vec = {}
        for i, el in theta.values.items():
            for m, c in el.terms.items():
                v[(i, m)] = c
        return v

    def from_vector(self, n: int, vec: Vec) -> Derivation:
        vals: dict[int, dict] = {}
        for (i, m), c in vec.items():
            vals.setdefault(i, {})[m] = c
        return Derivation(
            self.algebra,
            n,
            {i: Element(self.algebra, terms) for i, terms in vals.items()},
        )

    def delta(self, theta: Derivation) -> Derivation:
        """[D, theta] = D o theta - (-1)^|theta| theta o D."""
        alg = self.algebra
        d = self.model.differential
        sign = -1 if theta.degree % 2 else 1
        vals: dict[int, Element] = {}
        for i in self.source_gens:
            gen = alg.monomial_element(((i, 1),), 1)
            v = d(theta(gen)) - theta(d(gen)).scale(sign)
            if not v.is_zero():
                vals[i] = v
        return Derivation(alg, theta.degree - 1, vals)

    def delta_columns(self, n: int) -> list[Vec]:
        """delta of each degree-n basis derivation, as coordinate vectors."""
        cols = []
        for key in self.basis(n):
            cols.append(self.to_vector(self.delta(self.basis_derivation(key))))
        return cols

    def cycle_vectors(self, n: int) -> list[Vec]:
        """Basis of ker(delta) in degree n, in (i, monomial) coordinates."""
        keys = self.basis(n)
        cols = self.delta_columns(n)
        return kernel_of_map(cols, list(keys))

    def homology(self, n: int) -> "HomologySlice":
        if n in self._slice_cache:
            return self._slice_cache[n]
        if n < 1:
            raise ValueError("the complex is connected; homology needs n >= 1")
        cycles = self.cycle_vectors(n)
        boundaries = RowSpace(self.delta_columns(n + 1))
        # representatives: pivot-completion of the boundary space inside cycles
        reps: list[Vec] = []
        completion = RowSpace(boundaries.rows)
        for cyc in cycles:
            if completion.add(cyc):
                reps.append(cyc)
        sl = HomologySlice(
            complex=self,
            degree=n,
            basis_keys=self.basis(n),
            cycle_space=RowSpace(cycles),
            boundary_space=boundaries,
            rep_vectors=reps,
        )
        self._slice_cache[n] = sl
        return sl

    def homology_range(self, degrees: Iterable[int]) -> dict[int, "HomologySlice"]:
        return {n: self.homology(n) for n in degrees}


def complex_of_model(model: SullivanModel) -> DerivationComplex:
    return DerivationComplex(model)


@dataclass
class HomologySlice:
    """H_n of a derivation complex with chosen representatives."""

    complex: DerivationComplex
    degree: int
    basis_keys: tuple[BasisKey, ...]
    cycle_space: RowSpace
    boundary_space: RowSpace
    rep_vectors: list[Vec]

    @property
    def dimension(self) -> int:
        return len(self.rep_vectors)

    @property
    def representatives(self) -> list[Derivation]:
        return [self.complex.from_vector(self.degree, v) for v in self.rep_vectors]

    def is_cycle(self, theta: Derivation) -> bool:
        return self.complex.delta(theta).is_zero()

    def class_coordinates(self, theta: Derivation):
        """Coordinates of [theta] over the representatives; None if not a cycle."""
        if theta.degree != self.degree and not theta.is_zero():
            raise ValueError("degree mismatch")
        if not self.is_cycle(theta):
            return None
        vec = self.complex.to_vector(theta)
        cols = list(self.rep_vectors) + list(self.boundary_space.rows)
        keys = [("rep", j) for j in range(len(self.rep_vectors))] + [
            ("bdy", j) for j in range(self.boundary_space.dim)
        ]
        sol, cert = solve(cols, keys, vec)
        if sol is None:
            raise ValueError("cycle does not decompose; internal error")
        out = [Fraction(0)] * len(self.rep_vectors)
        for key, c in sol.items():
            if key[0] == "rep":
                out[key[1]] = c
        return out

    def labels(self) -> list[str]:
        return [format_derivation(rep) for rep in self.representatives]


# -- the absolute derivation Lie algebra --------------------------------------


def derivation_basis(model: SullivanModel, n: int) -> list[Derivation]:
    """Basis (v, m) of the unconstrained degree-n derivation space, n >= 1."""
    if n < 1:
        raise ValueError("connected complex: n >= 1")
    cx = complex_of_model(model)
    return [cx.basis_derivation(k) for k in cx.basis(n)]


def delta(model: SullivanModel, theta: Derivation) -> Derivation:
    return complex_of_model(model).delta(theta)


def homology(model: SullivanModel, n: int) -> HomologySlice:
    return complex_of_model(model).homology(n)


def homology_table(
    cx: DerivationComplex, degrees: Iterable[int] | None = None
) -> dict[int, HomologySlice]:
    if degrees is None:
        degrees = range(1, max(cx.algebra.degrees, default=1) + 1)
    return {n: cx.homology(n) for n in degrees}


@dataclass
class BracketTable:
    """Structure constants of the Lie bracket on homology.

    entries[(m, i), (n, j)] = coordinates of [rep_i^m, rep_j^n] over the
    degree-(m+n) representatives, for m <= n (and i <= j when m = n);
    zero entries are omitted.
    """

    slices: dict[int, HomologySlice]
    entries: dict[tuple[tuple[int, int], tuple[int, int]], list[Fraction]]

    def nonzero(self):
        return dict(self.entries)


def homology_bracket(
    cx: DerivationComplex, degrees: Sequence[int] | None = None, verify: bool = True
) -> BracketTable:
    """Brackets of homology representatives in homology coordinates.

    With `verify`, the computation is repeated with each representative
    perturbed by a boundary; differing structure constants raise.
    """
    if degrees is None:
        degrees = range(1, max(cx.algebra.degrees, default=1) + 1)
    degrees = sorted(degrees)
    slices = {n: cx.homology(n) for n in degrees}
    degset = set(degrees)

    def compute(reps_of):
        entries = {}
        for m in degrees:
            for n in degrees:
                if n < m or (m + n) not in degset:
                    continue
                target = slices[m + n]
                reps_m = reps_of(m)
                reps_n = reps_of(n)
                for i, ti in enumerate(reps_m):
                    js = range(i, len(reps_n)) if m == n else range(len(reps_n))
                    for j in js:
                        br = bracket(ti, reps_n[j])
                        if br.is_zero():
                            continue
                        coords = target.class_coordinates(br)
                        if coords is None:
                            raise ValueError(
                                "bracket of cycles is not a cycle; internal error"
                            )
                        if any(coords):
                            entries[((m, i), (n, j))] = coords
        return entries

    base_reps = {n: slices[n].representatives for n in degrees}
    entries = compute(lambda n: base_reps[n])

    if verify:
        alt_reps = {}
        for n in degrees:
            sl = slices[n]
            alt = []
            brows = sl.boundary_space.rows
            for k, vec in enumerate(sl.rep_vectors):
                perturbed = dict(vec)
                if brows:
                    perturbed = vec_add(perturbed, brows[k % len(brows)], Fraction(1))
                alt.append(cx.from_vector(n, perturbed))
            alt_reps[n] = alt
        entries_alt = compute(lambda n: alt_reps[n])
        if entries != entries_alt:
            raise ValueError(
                "homology bracket depends on representative choice; internal error"
            )
    return BracketTable(slices=slices, entries=entries)


# -- finiteness profile --------------------------------------------------------


@dataclass
class PiFiniteProfile:
    """Top of the derivation homology against the top of the model.

    For a model with top generator degree N the top nonzero homology of the
    derivation complex sits in degree N and has dimension dim V^N; under the
    loop-space shift this says pi_(N+1) of the classifying space is the top
    homotopy of the fibre.
    """

    top_generator_degree: int
    top_homology_degree: int
    top_homology_dimension: int
    top_generator_count: int
    dimensions: dict[int, int]

    @property
    def degree_matches(self) -> bool:
        return self.top_homology_degree == self.top_generator_degree

    @property
    def dimension_matches(self) -> bool:
        return self.top_homology_dimension == self.top_generator_count

    @property
    def passes(self) -> bool:
        return self.degree_matches and self.dimension_matches

    def render(self) -> str:
        n = self.top_generator_degree
        lines = [
            f"top generator degree N = {n}",
            f"top nonzero homology degree = {self.top_homology_degree} "
            f"(expected N = {n}): {'ok' if self.degree_matches else 'MISMATCH'}",
            f"dim H_N = {self.top_homology_dimension} vs dim V^N = "
            f"{self.top_generator_count}: "
            f"{'ok' if self.dimension_matches else 'MISMATCH'}",
            f"classifying space: top homotopy sits in degree N+1 = {n + 1} "
            f"with dimension {self.top_homology_dimension}",
        ]
        return "\n".join(lines)


def check_pi_finite_profile(model: SullivanModel) -> PiFiniteProfile:
    cx = complex_of_model(model)
    top = model.max_degree()
    dims = {n: cx.homology(n).dimension for n in range(1, top + 1)}
    top_h = max((n for n, d in dims.items() if d), default=0)
    top_count = sum(1 for d in model.algebra.degrees if d == top)
    return PiFiniteProfile(
        top_generator_degree=top,
        top_homology_degree=top_h,
        top_homology_dimension=dims.get(top_h, 0),
        top_generator_count=top_count,
        dimensions={n: d for n, d in dims.items() if d},
    )
