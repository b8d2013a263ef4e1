"""Decorated planar rooted trees and their cut coproduct.

The algebra has one basis element per planar forest of decorated rooted trees;
the product is concatenation (free algebra on trees) and the coproduct sums
over admissible cuts: edge sets meeting each root-to-leaf path at most once.
Pruned branches go to the LEFT tensor factor, concatenated in left-to-right
depth-first order of their roots; the trunk containing the original root goes
RIGHT.  The empty cut yields 1 ⊗ t and the formal total cut yields t ⊗ 1.

Degrees come from the decoration set (every decoration has degree >= 1, so the
degree-0 component is spanned by the empty forest alone).  The canonical basis
of each degree is sorted by serialized form; serialization is
``label[child child ...]`` with ``1`` for the empty forest.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

_LABEL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TREE_START_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\[")


class DegreeZeroInput(ValueError):
    """A reduced coproduct was requested for the degree-0 component."""


@dataclass(frozen=True)
class DecorationSet:
    """Graded alphabet of vertex decorations; labels distinct, degrees >= 1."""

    entries: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        entries = tuple((str(label), int(degree)) for label, degree in self.entries)
        if not entries:
            raise ValueError("decoration set must not be empty")
        labels = [label for label, _ in entries]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate decoration labels in {labels}")
        for label, degree in entries:
            if not _LABEL_RE.match(label):
                raise ValueError(f"bad decoration label {label!r} (word characters only)")
            if degree < 1:
                raise ValueError(f"decoration {label!r} has degree {degree}, must be >= 1")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def default(cls) -> DecorationSet:
        """The single degree-1 decoration; forest counts are the Catalan numbers."""
        return cls((("a", 1),))

    @classmethod
    def from_json(cls, text: str) -> DecorationSet:
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid decoration JSON: {exc}") from exc
        if not isinstance(payload, list):
            raise ValueError("decoration JSON must be a list of objects")
        entries = []
        for item in payload:
            if not isinstance(item, dict) or {"label", "degree"} - item.keys():
                raise ValueError("each decoration needs 'label' and 'degree'")
            entries.append((item["label"], item["degree"]))
        return cls(tuple(entries))

    def to_json(self) -> str:
        return json.dumps([{"label": l, "degree": d} for l, d in self.entries])

    def degree_of(self, label: str) -> int:
        for candidate, degree in self.entries:
            if candidate == label:
                return degree
        raise KeyError(f"unknown decoration {label!r}")

    def degree_counts(self, order: int) -> list[int]:
        """d_n = number of decorations of degree n, for n = 1..order."""
        counts = [0] * order
        for _, degree in self.entries:
            if degree <= order:
                counts[degree - 1] += 1
        return counts


@dataclass(frozen=True)
class Tree:
    decoration: str
    children: tuple[Tree, ...] = ()

    def encode(self) -> str:
        return f"{self.decoration}[{' '.join(c.encode() for c in self.children)}]"


@dataclass(frozen=True)
class Forest:
    trees: tuple[Tree, ...] = ()

    def encode(self) -> str:
        return " ".join(t.encode() for t in self.trees) if self.trees else "1"

    @property
    def is_unit(self) -> bool:
        return not self.trees

    def __mul__(self, other: Forest) -> Forest:
        return Forest(self.trees + other.trees)


def product(f: Forest, g: Forest) -> Forest:
    """Concatenation; the free product of the forest algebra."""
    return Forest(f.trees + g.trees)


def _parse_tree_prefix(text: str) -> tuple[Tree, str]:
    match = _TREE_START_RE.match(text)
    if not match:
        raise ValueError(f"expected 'label[' at {text[:30]!r}")
    label = match.group(1)
    rest = text[match.end() :]
    children: list[Tree] = []
    while True:
        rest = rest.lstrip()
        if not rest:
            raise ValueError(f"unterminated tree {label!r}")
        if rest.startswith("]"):
            return Tree(label, tuple(children)), rest[1:]
        child, rest = _parse_tree_prefix(rest)
        children.append(child)


def parse_tree(text: str) -> Tree:
    tree, rest = _parse_tree_prefix(text.strip())
    if rest.strip():
        raise ValueError(f"trailing input after tree: {rest!r}")
    return tree


def parse_forest(text: str) -> Forest:
    rest = text.strip()
    if rest in ("", "1"):
        return Forest()
    trees: list[Tree] = []
    while rest:
        tree, rest = _parse_tree_prefix(rest)
        rest = rest.lstrip()
        trees.append(tree)
    return Forest(tuple(trees))


@dataclass(frozen=True)
class GradedVector:
    """Element of one graded component, coordinates over the canonical basis."""

    degree: int
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __add__(self, other: GradedVector) -> GradedVector:
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} != {other.degree}")
        return GradedVector(self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: GradedVector) -> GradedVector:
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} != {other.degree}")
        return GradedVector(self.degree, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, scalar: Fraction | int) -> GradedVector:
        s = Fraction(scalar)
        return GradedVector(self.degree, tuple(s * c for c in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class TensorVector:
    """Bihomogeneous tensor, dense over basis(i) x basis(j), row-major."""

    bidegree: tuple[int, int]
    coords: tuple[Fraction, ...]


CutTerm = tuple[tuple[Tree, ...], Tree]
PairTerms = dict[tuple[Forest, Forest], Fraction]


class ForestAlgebra:
    """Canonical bases and Hopf operations for one decoration set.

    All caches are filled deterministically and published whole, so concurrent
    repeated computation is idempotent.
    """

    def __init__(self, decorations: Optional[DecorationSet] = None) -> None:
        self.decorations = decorations if decorations is not None else DecorationSet.default()
        self._trees: dict[int, tuple[Tree, ...]] = {}
        self._basis: dict[int, tuple[Forest, ...]] = {}
        self._index: dict[int, dict[Forest, int]] = {}
        self._cuts: dict[Tree, tuple[CutTerm, ...]] = {}
        self._coterms: dict[Forest, PairTerms] = {}

    # -- degrees ------------------------------------------------------------

    def tree_degree(self, tree: Tree) -> int:
        return self.decorations.degree_of(tree.decoration) + sum(
            self.tree_degree(c) for c in tree.children
        )

    def degree(self, forest: Forest) -> int:
        return sum(self.tree_degree(t) for t in forest.trees)

    # -- enumeration ----------------------------------------------------------

    def trees_of_degree(self, n: int) -> tuple[Tree, ...]:
        if n < 1:
            return ()
        cached = self._trees.get(n)
        if cached is None:
            found = [
                Tree(label, children.trees)
                for label, degree in self.decorations.entries
                if degree <= n
                for children in self.basis(n - degree)
            ]
            cached = tuple(sorted(found, key=Tree.encode))
            self._trees[n] = cached
        return cached

    def basis(self, n: int) -> tuple[Forest, ...]:
        """All forests of degree n in canonical (serialized-lexicographic) order."""
        if n < 0:
            return ()
        cached = self._basis.get(n)
        if cached is None:
            if n == 0:
                cached = (Forest(),)
            else:
                found = [
                    Forest((first,) + rest.trees)
                    for k in range(1, n + 1)
                    for first in self.trees_of_degree(k)
                    for rest in self.basis(n - k)
                ]
                cached = tuple(sorted(found, key=Forest.encode))
            self._basis[n] = cached
        return cached

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def index(self, forest: Forest) -> int:
        """Position of a basis forest inside its degree's canonical order."""
        n = self.degree(forest)
        table = self._index.get(n)
        if table is None:
            table = {f: i for i, f in enumerate(self.basis(n))}
            self._index[n] = table
        try:
            return table[forest]
        except KeyError:
            raise ValueError(f"{forest.encode()!r} is not a degree-{n} basis forest") from None

    def vector(self, forest: Forest) -> GradedVector:
        n = self.degree(forest)
        coords = [Fraction(0)] * self.dim(n)
        coords[self.index(forest)] = Fraction(1)
        return GradedVector(n, tuple(coords))

    def vector_product(self, x: GradedVector, y: GradedVector) -> GradedVector:
        """Bilinear extension of forest concatenation."""
        n = x.degree + y.degree
        coords = [Fraction(0)] * self.dim(n)
        left = self.basis(x.degree)
        right = self.basis(y.degree)
        for i, a in enumerate(x.coords):
            if not a:
                continue
            for j, b in enumerate(y.coords):
                if b:
                    coords[self.index(left[i] * right[j])] += a * b
        return GradedVector(n, tuple(coords))

    # -- coproduct ------------------------------------------------------------

    def _tree_cuts(self, tree: Tree) -> tuple[CutTerm, ...]:
        """All admissible edge-subset cuts of a tree as (pruned trees, trunk).

        Per child edge: either cut it (the whole child subtree is pruned) or
        recurse into the child's own cuts.  The empty cut appears as ((), tree).
        """
        cached = self._cuts.get(tree)
        if cached is not None:
            return cached
        per_child: list[list[tuple[tuple[Tree, ...], Optional[Tree]]]] = []
        for child in tree.children:
            options: list[tuple[tuple[Tree, ...], Optional[Tree]]] = [((child,), None)]
            options.extend(self._tree_cuts(child))
            per_child.append(options)
        out = []
        for combo in itertools.product(*per_child):
            pruned = tuple(itertools.chain.from_iterable(part for part, _ in combo))
            kept = tuple(trunk for _, trunk in combo if trunk is not None)
            out.append((pruned, Tree(tree.decoration, kept)))
        cached = tuple(out)
        self._cuts[tree] = cached
        return cached

    def coproduct_terms(self, forest: Forest) -> PairTerms:
        """Sparse coproduct: {(left forest, right forest): coefficient}."""
        cached = self._coterms.get(forest)
        if cached is not None:
            return cached
        terms: PairTerms = {(Forest(), Forest()): Fraction(1)}
        for tree in forest.trees:
            tree_terms: list[tuple[Forest, Forest]] = [(Forest((tree,)), Forest())]
            tree_terms.extend(
                (Forest(pruned), Forest((trunk,))) for pruned, trunk in self._tree_cuts(tree)
            )
            combined: PairTerms = {}
            for (left, right), coeff in terms.items():
                for part_left, part_right in tree_terms:
                    key = (left * part_left, right * part_right)
                    combined[key] = combined.get(key, Fraction(0)) + coeff
            terms = combined
        total = self.degree(forest)
        for left, right in terms:
            assert self.degree(left) + self.degree(right) == total, "coproduct lost grading"
        self._coterms[forest] = terms
        return terms

    def _family(self, degree: int, terms: PairTerms) -> dict[tuple[int, int], TensorVector]:
        by_bidegree: dict[tuple[int, int], dict[tuple[int, int], Fraction]] = {}
        for (left, right), coeff in terms.items():
            i = self.degree(left)
            bucket = by_bidegree.setdefault((i, degree - i), {})
            bucket[(self.index(left), self.index(right))] = coeff
        family = {}
        for (i, j), sparse in sorted(by_bidegree.items()):
            width = self.dim(j)
            coords = [Fraction(0)] * (self.dim(i) * width)
            for (a, b), coeff in sparse.items():
                coords[a * width + b] = coeff
            family[(i, j)] = TensorVector((i, j), tuple(coords))
        return family

    def coproduct(self, forest: Forest) -> dict[tuple[int, int], TensorVector]:
        """Full cut coproduct, grouped by bidegree (dense TensorVectors)."""
        return self._family(self.degree(forest), self.coproduct_terms(forest))

    def reduced_coproduct_terms(self, forest: Forest) -> PairTerms:
        if self.degree(forest) == 0:
            raise DegreeZeroInput("reduced coproduct needs degree >= 1")
        return {
            key: coeff
            for key, coeff in self.coproduct_terms(forest).items()
            if not key[0].is_unit and not key[1].is_unit
        }

    def reduced_coproduct(self, forest: Forest) -> dict[tuple[int, int], TensorVector]:
        return self._family(self.degree(forest), self.reduced_coproduct_terms(forest))

    def reduced_terms_of_vector(self, x: GradedVector) -> PairTerms:
        if x.degree == 0:
            raise DegreeZeroInput("reduced coproduct needs degree >= 1")
        out: PairTerms = {}
        for forest, coeff in zip(self.basis(x.degree), x.coords):
            if not coeff:
                continue
            for key, mult in self.reduced_coproduct_terms(forest).items():
                out[key] = out.get(key, Fraction(0)) + coeff * mult
        return {key: c for key, c in out.items() if c}

    def iterated_reduced(
        self, k: int, x: Union[GradedVector, Forest], position: int = 0
    ) -> dict[tuple[Forest, ...], Fraction]:
        """k-fold iterate of the reduced coproduct: a sparse order-(k+1) tensor.

        ``position`` chooses which tensor slot gets expanded at each step;
        coassociativity makes the result independent of the choice (tested).
        """
        if isinstance(x, Forest):
            x = self.vector(x)
        if x.degree == 0:
            raise DegreeZeroInput("reduced coproduct needs degree >= 1")
        if k < 0:
            raise ValueError("fold count must be >= 0")
        terms: dict[tuple[Forest, ...], Fraction] = {}
        for forest, coeff in zip(self.basis(x.degree), x.coords):
            if coeff:
                terms[(forest,)] = coeff
        for step in range(k):
            slot = min(position, step)
            expanded: dict[tuple[Forest, ...], Fraction] = {}
            for key, coeff in terms.items():
                if self.degree(key[slot]) == 0:
                    continue
                for (left, right), mult in self.reduced_coproduct_terms(key[slot]).items():
                    new_key = key[:slot] + (left, right) + key[slot + 1 :]
                    expanded[new_key] = expanded.get(new_key, Fraction(0)) + coeff * mult
            terms = {key: c for key, c in expanded.items() if c}
        return terms
