"""Degree-by-degree structure of the decorated forest Hopf algebra.

For each degree this module computes the primitive subspace (kernel of the
reduced coproduct), the decomposable subspace (span of products of lower
degrees), their intersection, and deterministic complements that split the
degree into four blocks.  The splitting is what the pairing construction
consumes; the dimension and bracket checks certify the free-and-cofree
structure at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import RationalMatrix, Subspace, extend_independent, kernel_basis, span_ops
from .trees import ForestAlgebra, GradedVector


@dataclass(frozen=True)
class DegreeDecomposition:
    """Four-block splitting of one graded piece.

    core = primitives ∩ decomposables.  The three complements satisfy
    core ⊕ decomposable_complement = decomposables,
    core ⊕ primitive_generators = primitives, and the direct sum of all four
    blocks is the whole degree.  residual always has the same dimension as
    core.
    """

    degree: int
    primitives: Subspace
    decomposables: Subspace
    core: Subspace
    decomposable_complement: Subspace
    primitive_generators: Subspace
    residual: Subspace

    def dims(self) -> dict[str, int]:
        return {
            "degree": self.degree,
            "primitives": self.primitives.dim,
            "decomposables": self.decomposables.dim,
            "core": self.core.dim,
            "decomposable_complement": self.decomposable_complement.dim,
            "primitive_generators": self.primitive_generators.dim,
            "residual": self.residual.dim,
        }


@dataclass(frozen=True)
class PrimitiveCountCheck:
    """Primitive dimension against the indecomposable count of the degree."""

    degree: int
    primitive_dim: int
    total_dim: int
    decomposable_dim: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "check": "primitive-count",
            "degree": self.degree,
            "primitive_dim": self.primitive_dim,
            "total_dim": self.total_dim,
            "decomposable_dim": self.decomposable_dim,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class BracketCoreCheck:
    """Commutator span against the decomposable-primitive intersection."""

    degree: int
    bracket_dim: int
    core_dim: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "check": "bracket-core",
            "degree": self.degree,
            "bracket_dim": self.bracket_dim,
            "core_dim": self.core_dim,
            "pass": self.passed,
        }


class HopfStructure:
    """Structural analysis of one decorated forest algebra, cached per degree."""

    def __init__(self, algebra: ForestAlgebra | None = None) -> None:
        self.algebra = algebra if algebra is not None else ForestAlgebra()
        self._reduced: dict[int, RationalMatrix] = {}
        self._primitives: dict[int, Subspace] = {}
        self._decomposables: dict[int, Subspace] = {}
        self._brackets: dict[int, Subspace] = {}
        self._decompositions: dict[int, DegreeDecomposition] = {}

    def reduced_matrix(self, n: int) -> RationalMatrix:
        """Matrix of the reduced coproduct on degree n.

        Columns run over the degree-n basis; rows over pairs (u, v) of basis
        forests with degrees (i, n - i) for 1 <= i <= n - 1, ordered by i,
        then u, then v.
        """
        if n < 1:
            raise ValueError("reduced coproduct matrix needs degree >= 1")
        cached = self._reduced.get(n)
        if cached is not None:
            return cached
        alg = self.algebra
        dims = [alg.dim(i) for i in range(n)]
        offsets = {}
        total = 0
        for i in range(1, n):
            offsets[i] = total
            total += dims[i] * dims[n - i]
        cols = alg.dim(n)
        entries = [[Fraction(0)] * cols for _ in range(total)]
        for col, f in enumerate(alg.basis(n)):
            for (left, right), coeff in alg.reduced_coproduct_terms(f).items():
                i = alg.degree(left)
                row = offsets[i] + alg.index(left) * dims[n - i] + alg.index(right)
                entries[row][col] = Fraction(coeff)
        built = RationalMatrix.from_rows(entries, cols=cols)
        self._reduced[n] = built
        return built

    def primitives(self, n: int) -> Subspace:
        """Kernel of the reduced coproduct on degree n."""
        if n < 1:
            raise ValueError("primitives are graded by degree >= 1")
        cached = self._primitives.get(n)
        if cached is None:
            cached = kernel_basis(self.reduced_matrix(n))
            self._primitives[n] = cached
        return cached

    def decomposables(self, n: int) -> Subspace:
        """Span of all products of positive-degree basis vectors totalling n."""
        if n < 1:
            raise ValueError("decomposables are graded by degree >= 1")
        cached = self._decomposables.get(n)
        if cached is None:
            alg = self.algebra
            rows = []
            for i in range(1, n):
                for f in alg.basis(i):
                    for g in alg.basis(n - i):
                        rows.append(alg.vector(f * g).coords)
            cached = Subspace.span(alg.dim(n), rows)
            self._decomposables[n] = cached
        return cached

    def bracket_space(self, n: int) -> Subspace:
        """Span of commutators of primitives with degrees summing to n."""
        if n < 2:
            raise ValueError("brackets need two positive degrees, so n >= 2")
        cached = self._brackets.get(n)
        if cached is None:
            alg = self.algebra
            rows = []
            for i in range(1, n):
                for x in self.primitives(i).basis_rows():
                    gx = GradedVector(i, tuple(x))
                    for y in self.primitives(n - i).basis_rows():
                        gy = GradedVector(n - i, tuple(y))
                        xy = alg.vector_product(gx, gy)
                        yx = alg.vector_product(gy, gx)
                        rows.append((xy - yx).coords)
            cached = Subspace.span(alg.dim(n), rows)
            self._brackets[n] = cached
        return cached

    def decomposition(self, n: int) -> DegreeDecomposition:
        """Split degree n into core, two complements, and the residual block.

        Complements are picked deterministically: canonical echelon basis rows
        of the enclosing space extend the core, and canonical unit vectors (in
        basis order) extend everything else to the full degree.
        """
        if n < 1:
            raise ValueError("decomposition is graded by degree >= 1")
        cached = self._decompositions.get(n)
        if cached is not None:
            return cached
        alg = self.algebra
        dim = alg.dim(n)
        prim = self.primitives(n)
        dec = self.decomposables(n)
        core = span_ops(prim, dec).intersection
        m_part = span_ops(core, dec).complement_of_a_in_sum
        h_part = span_ops(core, prim).complement_of_a_in_sum
        spanned = span_ops(prim, dec).sum
        unit_rows = RationalMatrix.identity(dim).to_rows()
        kept = extend_independent(spanned.basis_rows(), unit_rows, dim)
        built = DegreeDecomposition(
            degree=n,
            primitives=prim,
            decomposables=dec,
            core=core,
            decomposable_complement=m_part,
            primitive_generators=h_part,
            residual=Subspace.span(dim, kept),
        )
        self._decompositions[n] = built
        return built

    def check_primitive_count(self, n: int) -> PrimitiveCountCheck:
        """Primitives must be exactly as numerous as algebra generators."""
        prim = self.primitives(n).dim
        total = self.algebra.dim(n)
        dec = self.decomposables(n).dim
        return PrimitiveCountCheck(
            degree=n,
            primitive_dim=prim,
            total_dim=total,
            decomposable_dim=dec,
            passed=prim == total - dec,
        )

    def check_bracket_core(self, n: int) -> BracketCoreCheck:
        """Commutators of primitives must span exactly the core block."""
        bracket = self.bracket_space(n)
        core = self.decomposition(n).core
        return BracketCoreCheck(
            degree=n,
            bracket_dim=bracket.dim,
            core_dim=core.dim,
            passed=bracket == core,
        )

    def degree_report(self, n: int) -> dict:
        """Dimensions and check flags for one degree, JSON-ready."""
        split = self.decomposition(n)
        count = self.check_primitive_count(n)
        report = {
            "degree": n,
            "dims": split.dims(),
            "primitive_count_ok": count.passed,
            "residual_matches_core": split.residual.dim == split.core.dim,
        }
        if n >= 2:
            report["bracket_matches_core"] = self.check_bracket_core(n).passed
        return report
