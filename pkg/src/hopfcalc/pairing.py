"""Inductive construction of a symmetric nondegenerate Hopf pairing.

The pairing is built degree by degree over the canonical forest bases.  Three
rules pin it down: values on forests with at least two trees are forced by
pairing a leading tree tensor the remainder against coproducts (strictly lower
degrees), generators in the primitive-generator block pair through a
caller-supplied symmetric base form and vanish everywhere else, and residual
generators vanish on both generator blocks while their values on products are
forced again.  Each degree therefore reduces to exact linear solves against
the four-block basis from `structure`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .linalg import RationalMatrix, Subspace, kernel_basis, stack_rows
from .structure import DegreeDecomposition, HopfStructure
from .trees import Forest, GradedVector


class DegenerateBaseForm(ValueError):
    """Raised when a requested base form block is singular."""


@dataclass
class PairingState:
    """Per-degree Gram matrices of the pairing over canonical forest bases.

    generator_functionals[n] stacks, for each chosen generator (first the
    primitive-generator block, then the residual block), the coordinates of
    its pairing functional on the degree-n basis.
    """

    structure: HopfStructure
    max_degree: int
    base_form: dict[int, RationalMatrix]
    gram: dict[int, RationalMatrix]
    generator_functionals: dict[int, RationalMatrix]

    def generator_block(self, n: int) -> RationalMatrix:
        """Gram restricted to the primitive-generator basis of degree n."""
        split = self.structure.decomposition(n)
        h_mat = RationalMatrix.from_rows(
            split.primitive_generators.basis_rows(), cols=self.structure.algebra.dim(n)
        )
        return h_mat @ self.gram[n] @ h_mat.transpose()

    def gram_json(self) -> dict:
        return {
            str(n): [[str(x) for x in g.row(i)] for i in range(g.rows)]
            for n, g in sorted(self.gram.items())
        }


def _validate_base_form(form: RationalMatrix, size: int, n: int) -> None:
    if (form.rows, form.cols) != (size, size):
        raise ValueError(
            f"base form at degree {n} must be {size}x{size}, got {form.rows}x{form.cols}"
        )
    if not form.is_symmetric():
        raise ValueError(f"base form at degree {n} is not symmetric")
    if size and form.det() == 0:
        raise DegenerateBaseForm(f"base form at degree {n} is singular")


def _split_first_tree(f: Forest) -> tuple[Forest, Forest]:
    return Forest((f.trees[0],)), Forest(f.trees[1:])


def _forced_product_rows(state: PairingState, n: int) -> dict[int, list[Fraction]]:
    """Forced values on every multi-tree basis forest of degree n.

    Row k (for basis forest f = t . rest) holds the pairing of t tensor rest
    against the coproduct of each degree-n basis forest, evaluated with the
    already-built lower-degree Gram matrices.
    """
    alg = state.structure.algebra
    basis = alg.basis(n)
    rows: dict[int, list[Fraction]] = {}
    for k, f in enumerate(basis):
        if len(f.trees) < 2:
            continue
        head, rest = _split_first_tree(f)
        i = alg.degree(head)
        j = n - i
        gi, gj = state.gram[i], state.gram[j]
        hi, ri = alg.index(head), alg.index(rest)
        dim_j = alg.dim(j)
        row = []
        for y in basis:
            block = alg.coproduct(y).get((i, j))
            total = Fraction(0)
            if block is not None:
                for a in range(alg.dim(i)):
                    left = gi.at(hi, a)
                    if not left:
                        continue
                    for b in range(dim_j):
                        coeff = block.coords[a * dim_j + b]
                        if coeff:
                            total += left * coeff * gj.at(ri, b)
            row.append(total)
        rows[k] = row
    return rows


def _forced_value_on_forest(
    state: PairingState,
    reduced: dict[tuple[Forest, Forest], Fraction],
    head: Forest,
    rest: Forest,
    i: int,
    j: int,
) -> Fraction:
    alg = state.structure.algebra
    gi, gj = state.gram[i], state.gram[j]
    hi, ri = alg.index(head), alg.index(rest)
    total = Fraction(0)
    for (left, right), coeff in reduced.items():
        if alg.degree(left) == i:
            total += coeff * gi.at(alg.index(left), hi) * gj.at(alg.index(right), ri)
    return total


def _extend_degree(
    state: PairingState, n: int, split: DegreeDecomposition, form: RationalMatrix
) -> None:
    alg = state.structure.algebra
    dim = alg.dim(n)
    basis = alg.basis(n)
    multi = [k for k, f in enumerate(basis) if len(f.trees) >= 2]
    unit_rows = [[Fraction(1 if i == k else 0) for i in range(dim)] for k in multi]
    # freeness: products of lower degrees span exactly the multi-tree forests
    assert split.decomposables == Subspace.span(dim, unit_rows)

    forced = _forced_product_rows(state, n)
    core_rows = split.core.basis_rows()
    m_rows = split.decomposable_complement.basis_rows()
    h_rows = split.primitive_generators.basis_rows()
    w_rows = split.residual.basis_rows()
    b_mat = RationalMatrix.from_rows(core_rows + m_rows + h_rows + w_rows, cols=dim)
    b_inv = b_mat.inverse()
    h_offset = len(core_rows) + len(m_rows)

    functionals: list[list[Fraction]] = []
    for x in core_rows + m_rows:
        assert all(x[k] == 0 for k in range(dim) if k not in forced)
        row = [Fraction(0)] * dim
        for k, prow in forced.items():
            if x[k]:
                row = [acc + x[k] * v for acc, v in zip(row, prow)]
        functionals.append(row)
    for a in range(len(h_rows)):
        values = [Fraction(0)] * dim
        for b in range(len(h_rows)):
            values[h_offset + b] = form.at(a, b)
        functionals.append(list(b_inv.apply(values)))
    if w_rows:
        conditions = RationalMatrix.from_rows(unit_rows + h_rows + w_rows, cols=dim)
        cond_inv = conditions.inverse()
        tail = [Fraction(0)] * (len(h_rows) + len(w_rows))
        for w in w_rows:
            reduced = alg.reduced_terms_of_vector(GradedVector(n, tuple(w)))
            values = []
            for k in multi:
                head, rest = _split_first_tree(basis[k])
                i = alg.degree(head)
                values.append(_forced_value_on_forest(state, reduced, head, rest, i, n - i))
            functionals.append(list(cond_inv.apply(values + tail)))

    value_matrix = RationalMatrix.from_rows(functionals, cols=dim)
    state.gram[n] = b_inv @ value_matrix
    state.generator_functionals[n] = RationalMatrix.from_rows(
        functionals[h_offset:], cols=dim
    )


def build_pairing(
    max_degree: int,
    base_form: Optional[dict[int, RationalMatrix]] = None,
    structure: Optional[HopfStructure] = None,
) -> PairingState:
    """Build the pairing up to max_degree; identity base form by default."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    structure = structure if structure is not None else HopfStructure()
    overrides = dict(base_form) if base_form else {}
    state = PairingState(
        structure=structure,
        max_degree=max_degree,
        base_form={},
        gram={0: RationalMatrix.identity(1)},
        generator_functionals={},
    )
    for n in range(1, max_degree + 1):
        split = structure.decomposition(n)
        size = split.primitive_generators.dim
        form = overrides.get(n, RationalMatrix.identity(size))
        _validate_base_form(form, size, n)
        state.base_form[n] = form
        _extend_degree(state, n, split, form)
    return state


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class PairingCheck:
    name: str
    passed: bool
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {"check": self.name, "pass": self.passed, "counterexample": self.counterexample}


@dataclass(frozen=True)
class PairingReport:
    max_degree: int
    checks: tuple[PairingCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "pass": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def _check_shapes(state: PairingState) -> Optional[dict]:
    for n in range(state.max_degree + 1):
        g = state.gram.get(n)
        want = state.structure.algebra.dim(n)
        if g is None or (g.rows, g.cols) != (want, want):
            got = None if g is None else [g.rows, g.cols]
            return {"degree": n, "got_shape": got, "want_size": want}
    return None


def _check_multiplicativity(state: PairingState) -> Optional[dict]:
    """First failing triple of either product-coproduct identity, or None.

    Triples where the pairing degrees disagree vanish on both sides by the
    graded representation, so only matched-degree triples carry content.
    """
    alg = state.structure.algebra
    for k in range(2, state.max_degree + 1):
        gk = state.gram[k]
        for i in range(1, k):
            j = k - i
            gi, gj = state.gram[i], state.gram[j]
            dim_j = alg.dim(j)
            for z in alg.basis(k):
                blocks = alg.coproduct(z)
                block = blocks.get((i, j))
                iz = alg.index(z)
                for x in alg.basis(i):
                    ix = alg.index(x)
                    for y in alg.basis(j):
                        iy = alg.index(y)
                        want = Fraction(0)
                        if block is not None:
                            for a in range(alg.dim(i)):
                                left = gi.at(ix, a)
                                if not left:
                                    continue
                                for b in range(dim_j):
                                    coeff = block.coords[a * dim_j + b]
                                    if coeff:
                                        want += left * coeff * gj.at(iy, b)
                        got = gk.at(alg.index(x * y), iz)
                        if got != want:
                            return {
                                "identity": "product-left",
                                "x": x.encode(),
                                "y": y.encode(),
                                "z": z.encode(),
                                "got": str(got),
                                "want": str(want),
                            }
                        # mirrored identity: first slot against the coproduct
                        # of z, i.e. <z, x y> = <coproduct(z), x tensor y>
                        want = Fraction(0)
                        if block is not None:
                            for a in range(alg.dim(i)):
                                for b in range(dim_j):
                                    coeff = block.coords[a * dim_j + b]
                                    if coeff:
                                        want += coeff * gi.at(a, ix) * gj.at(b, iy)
                        got = gk.at(iz, alg.index(x * y))
                        if got != want:
                            return {
                                "identity": "product-right",
                                "x": x.encode(),
                                "y": y.encode(),
                                "z": z.encode(),
                                "got": str(got),
                                "want": str(want),
                            }
    return None


def verify_hopf_pairing(state: PairingState) -> PairingReport:
    """Run the five pairing checks; exhaustive over basis elements."""
    checks = []

    unit = state.gram.get(0)
    unit_ok = unit is not None and unit.to_rows() == [[Fraction(1)]]
    checks.append(
        PairingCheck("unit-counit", unit_ok, None if unit_ok else {"degree": 0})
    )

    shape_fail = _check_shapes(state)
    mult_fail = shape_fail if shape_fail is not None else _check_multiplicativity(state)
    checks.append(PairingCheck("multiplicativity", mult_fail is None, mult_fail))
    checks.append(PairingCheck("homogeneity", shape_fail is None, shape_fail))

    sym_fail = None
    for n in range(state.max_degree + 1):
        g = state.gram.get(n)
        if g is None or not g.is_symmetric():
            sym_fail = {"degree": n}
            break
    checks.append(PairingCheck("symmetry", sym_fail is None, sym_fail))

    det_fail = None
    if shape_fail is not None:
        det_fail = shape_fail
    else:
        for n in range(state.max_degree + 1):
            if state.gram[n].det() == 0:
                det_fail = {"degree": n, "det": "0"}
                break
    checks.append(PairingCheck("nondegeneracy", det_fail is None, det_fail))

    return PairingReport(state.max_degree, tuple(checks))


@dataclass(frozen=True)
class OrthogonalityCheck:
    """Gram-orthogonal of the decomposables against the primitives."""

    degree: int
    orthogonal_dim: int
    primitive_dim: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "check": "primitive-orthogonality",
            "degree": self.degree,
            "orthogonal_dim": self.orthogonal_dim,
            "primitive_dim": self.primitive_dim,
            "pass": self.passed,
        }


def check_primitive_orthogonality(state: PairingState, n: int) -> OrthogonalityCheck:
    """The pairing-orthogonal of the decomposables must be the primitives."""
    structure = state.structure
    dim = structure.algebra.dim(n)
    dec = RationalMatrix.from_rows(structure.decomposables(n).basis_rows(), cols=dim)
    orthogonal = kernel_basis(dec @ state.gram[n])
    primitives = structure.primitives(n)
    return OrthogonalityCheck(
        degree=n,
        orthogonal_dim=orthogonal.dim,
        primitive_dim=primitives.dim,
        passed=orthogonal == primitives,
    )


# ---------------------------------------------------------------------------
# basis adaptation


@dataclass(frozen=True)
class AdaptedBasis:
    """Ordered block bases whose Gram matrix takes the split block form.

    Stacking core, decomposable_complement, primitive_generators, residual
    rows, the Gram matrix must vanish outside the two central diagonal blocks
    and the two identity blocks pairing core against residual.  The rows are
    kept as explicit ordered matrices: re-canonicalizing them would destroy
    the normalization.
    """

    degree: int
    core_rows: RationalMatrix
    decomposable_complement_rows: RationalMatrix
    primitive_generator_rows: RationalMatrix
    residual_rows: RationalMatrix
    block_gram: RationalMatrix

    def stacked(self) -> RationalMatrix:
        return stack_rows(
            [
                self.core_rows,
                self.decomposable_complement_rows,
                self.primitive_generator_rows,
                self.residual_rows,
            ],
            cols=self.core_rows.cols,
        )

    def block_pattern_ok(self) -> bool:
        c = self.core_rows.rows
        m = self.decomposable_complement_rows.rows
        s = self.primitive_generator_rows.rows
        w = self.residual_rows.rows
        if w != c:
            return False
        g = self.block_gram
        if (g.rows, g.cols) != (c + m + s + w, c + m + s + w):
            return False
        edges = [0, c, c + m, c + m + s, c + m + s + w]

        def block(bi: int, bj: int) -> RationalMatrix:
            return RationalMatrix.from_rows(
                [
                    [g.at(i, j) for j in range(edges[bj], edges[bj + 1])]
                    for i in range(edges[bi], edges[bi + 1])
                ],
                cols=edges[bj + 1] - edges[bj],
            )

        zero_positions = [(0, 0), (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 3)]
        for bi, bj in zero_positions:
            if any(block(bi, bj).entries) or any(block(bj, bi).entries):
                return False
        if block(0, 3).to_rows() != RationalMatrix.identity(c).to_rows():
            return False
        if block(3, 0).to_rows() != RationalMatrix.identity(c).to_rows():
            return False
        for bi in (1, 2):
            diag = block(bi, bi)
            if not diag.is_symmetric() or diag.rank() != diag.rows:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "block_form_ok": self.block_pattern_ok(),
            "block_dims": [
                self.core_rows.rows,
                self.decomposable_complement_rows.rows,
                self.primitive_generator_rows.rows,
                self.residual_rows.rows,
            ],
            "block_gram": [[str(x) for x in row] for row in self.block_gram.to_rows()],
        }


def adapt_complement(state: PairingState, n: int) -> AdaptedBasis:
    """Correct the complements so the degree-n Gram takes the block form.

    The residual basis is renormalized to pair identically against the core,
    then the decomposable complement absorbs core multiples so it pairs to
    zero against the new residual.  Spans of core, decomposables, primitives
    and residual are unchanged; only the complement representatives move.
    """
    structure = state.structure
    split = structure.decomposition(n)
    g = state.gram[n]
    dim = structure.algebra.dim(n)
    core = RationalMatrix.from_rows(split.core.basis_rows(), cols=dim)
    m_mat = RationalMatrix.from_rows(split.decomposable_complement.basis_rows(), cols=dim)
    h_mat = RationalMatrix.from_rows(split.primitive_generators.basis_rows(), cols=dim)
    w_mat = RationalMatrix.from_rows(split.residual.basis_rows(), cols=dim)
    if core.rows:
        duality = core @ g @ w_mat.transpose()
        w_mat = duality.inverse().transpose() @ w_mat
        spill = m_mat @ g @ w_mat.transpose()
        m_mat = m_mat - spill @ core
    stacked = stack_rows([core, m_mat, h_mat, w_mat], cols=dim)
    return AdaptedBasis(
        degree=n,
        core_rows=core,
        decomposable_complement_rows=m_mat,
        primitive_generator_rows=h_mat,
        residual_rows=w_mat,
        block_gram=stacked @ g @ stacked.transpose(),
    )
