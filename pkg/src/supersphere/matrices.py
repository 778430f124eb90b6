"""Supermatrices over the graded algebra.

A square supermatrix carries a BlockShape assigning each index a type parity
(even or odd basis direction) plus an explicit storage order saying which
block is listed first.  Entries may be Elements or SuperForms; all Koszul
signs live in the entry arithmetic, so the matrix product is the plain
row-column product.

Sign conventions, fixed by reproducing the explicit group-element adjoint and
the charge +-1 projector pair simultaneously:

* supertranspose uses the block formula with "A" the first-stored block, i.e.
  signs are computed from storage parities;
* supertrace weighs diagonal entries by type parity, with the even-type block
  entering positively: Str X = tr(even block) - (-1)^|X| tr(odd block).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .algebra import (Element, GeneratorTable, InvertibilityError, ParityError,
                      RewriteSystem)
from .scalars import Scalar

EVEN_FIRST = "even_first"
ODD_FIRST = "odd_first"


class ShapeError(Exception):
    pass


class BlockShape:
    """m even-type and n odd-type directions; block_order is never inferred."""

    __slots__ = ("m", "n", "block_order")

    def __init__(self, m: int, n: int, block_order: str = EVEN_FIRST):
        if m < 0 or n < 0:
            raise ShapeError("block sizes must be nonnegative")
        if block_order not in (EVEN_FIRST, ODD_FIRST):
            raise ShapeError("block_order must be even_first or odd_first")
        self.m = m
        self.n = n
        self.block_order = block_order

    @property
    def dim(self) -> int:
        return self.m + self.n

    @property
    def first_block(self) -> int:
        return self.m if self.block_order == EVEN_FIRST else self.n

    def type_parity(self, i: int) -> int:
        """0 for even-type index, 1 for odd-type."""
        in_first = i < self.first_block
        first_is_even = self.block_order == EVEN_FIRST
        return 0 if in_first == first_is_even else 1

    def storage_parity(self, i: int) -> int:
        """0 inside the first-stored block, 1 inside the second."""
        return 0 if i < self.first_block else 1

    def __eq__(self, other) -> bool:
        return (isinstance(other, BlockShape) and self.m == other.m
                and self.n == other.n and self.block_order == other.block_order)

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.block_order))

    def __repr__(self) -> str:
        return "BlockShape(m=%d, n=%d, %s)" % (self.m, self.n, self.block_order)

    def to_obj(self) -> dict:
        return {"even": self.m, "odd": self.n, "order": self.block_order}

    @staticmethod
    def from_obj(obj: dict) -> "BlockShape":
        return BlockShape(obj["even"], obj["odd"], obj.get("order", EVEN_FIRST))


class SuperMatrix:
    """Dense square matrix of graded entries with a declared parity."""

    __slots__ = ("shape", "entries", "parity")

    def __init__(self, shape: BlockShape, entries: Sequence[Sequence], parity: int | None):
        d = shape.dim
        if len(entries) != d or any(len(row) != d for row in entries):
            raise ShapeError("entries must form a %dx%d array" % (d, d))
        self.shape = shape
        self.entries = [list(row) for row in entries]
        self.parity = parity

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def identity(shape: BlockShape, algebra: GeneratorTable) -> "SuperMatrix":
        d = shape.dim
        rows = [[algebra.one() if i == j else algebra.zero() for j in range(d)]
                for i in range(d)]
        return SuperMatrix(shape, rows, parity=0)

    @staticmethod
    def from_rational(shape: BlockShape, algebra: GeneratorTable,
                      rows: Sequence[Sequence[Scalar | int | Fraction]],
                      parity: int | None = 0) -> "SuperMatrix":
        return SuperMatrix(shape, [[algebra.scalar(v) for v in row] for row in rows], parity)

    def _require_parity(self) -> int:
        if self.parity is None:
            raise ParityError("operation requires a homogeneous declared parity")
        return self.parity

    def validate_parity(self) -> bool:
        """Check that every Element entry matches the declared parity pattern."""
        p = self._require_parity()
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                if not isinstance(entry, Element):
                    return True
                want = (self.shape.type_parity(i) + self.shape.type_parity(j) + p) % 2
                got = entry.parity()
                if got == "zero":
                    continue
                if got == "mixed" or (got == "odd") != bool(want):
                    return False
        return True

    # -- ring operations -------------------------------------------------------

    def _check_shape(self, other: "SuperMatrix") -> None:
        if self.shape != other.shape:
            raise ShapeError("shape mismatch: %r vs %r" % (self.shape, other.shape))

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_shape(other)
        parity = self.parity if self.parity == other.parity else None
        rows = [[a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)]
        return SuperMatrix(self.shape, rows, parity)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-other)

    def __neg__(self) -> "SuperMatrix":
        return SuperMatrix(self.shape, [[-e for e in row] for row in self.entries], self.parity)

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check_shape(other)
        d = self.shape.dim
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = None
                for k in range(d):
                    term = self.entries[i][k] * other.entries[k][j]
                    acc = term if acc is None else acc + term
                row.append(acc)
            rows.append(row)
        parity = None
        if self.parity is not None and other.parity is not None:
            parity = (self.parity + other.parity) % 2
        return SuperMatrix(self.shape, rows, parity)

    def scale(self, factor) -> "SuperMatrix":
        """Left multiplication by a scalar or Element factor."""
        parity = self.parity
        if isinstance(factor, Element) and parity is not None:
            fp = factor.parity()
            if fp == "mixed":
                parity = None
            elif fp == "odd":
                parity = (parity + 1) % 2
        return SuperMatrix(self.shape, [[factor * e for e in row] for row in self.entries],
                           parity)

    def map_entries(self, fn: Callable) -> "SuperMatrix":
        return SuperMatrix(self.shape, [[fn(e) for e in row] for row in self.entries],
                           self.parity)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self.shape == other.shape
                and all(a == b for r1, r2 in zip(self.entries, other.entries)
                        for a, b in zip(r1, r2)))

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(repr(e) for e in row) + "]"
                         for row in self.entries)
        return "SuperMatrix(%r, parity=%r,\n%s\n)" % (self.shape, self.parity, body)

    # -- graded operations -------------------------------------------------------

    def supertranspose(self) -> "SuperMatrix":
        """Block transpose with signs taken from storage parities.

        With tau the storage parity: (X^st)_ij = (-1)^((tau_i+|X|)(tau_i+tau_j)) X_ji.
        """
        p = self._require_parity()
        d = self.shape.dim
        tau = [self.shape.storage_parity(i) for i in range(d)]
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                entry = self.entries[j][i]
                if ((tau[i] + p) * (tau[i] + tau[j])) % 2:
                    entry = -entry
                row.append(entry)
            rows.append(row)
        return SuperMatrix(self.shape, rows, p)

    def supertrace(self):
        """Str X = tr(even-type block) - (-1)^|X| tr(odd-type block)."""
        p = self._require_parity()
        acc = None
        for i in range(self.shape.dim):
            entry = self.entries[i][i]
            if self.shape.type_parity(i) == 1 and p == 0:
                entry = -entry
            acc = entry if acc is None else acc + entry
        return acc

    def dagger(self) -> "SuperMatrix":
        """Graded adjoint: entrywise diamond, supertranspose, (-1)^|X|.

        On even matrices this is plain diamond + supertranspose.  The parity
        sign makes the adjoint a graded anti-homomorphism,
        (XY)^dagger = (-1)^(|X||Y|) Y^dagger X^dagger, and reproduces the
        declared adjoints of the odd algebra generators.
        """
        out = self.map_entries(lambda e: e.diamond()).supertranspose()
        if self._require_parity() == 1:
            out = -out
        return out

    def reduce(self, rewrites: RewriteSystem) -> "SuperMatrix":
        return self.map_entries(rewrites.reduce)

    def substitute(self, images, target: GeneratorTable | None = None) -> "SuperMatrix":
        return self.map_entries(lambda e: e.substitute(images, target))

    # -- serialization -------------------------------------------------------------

    def to_obj(self) -> dict:
        return {
            "shape": self.shape.to_obj(),
            "parity": self.parity,
            "entries": [[e.to_obj() for e in row] for row in self.entries],
        }

    @staticmethod
    def from_obj(algebra: GeneratorTable, obj: dict) -> "SuperMatrix":
        shape = BlockShape.from_obj(obj["shape"])
        rows = [[Element.from_obj(algebra, cell) for cell in row] for row in obj["entries"]]
        return SuperMatrix(shape, rows, obj.get("parity"))


def graded_bracket(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    """[X, Y] = XY - (-1)^(|X||Y|) YX on homogeneous matrices."""
    px = x._require_parity()
    py = y._require_parity()
    yx = y @ x
    if px * py % 2:
        return x @ y + yx
    return x @ y - yx


def supertrace(x: SuperMatrix):
    return x.supertrace()


def _blocks(x: SuperMatrix) -> tuple[list[int], list[int]]:
    even_idx = [i for i in range(x.shape.dim) if x.shape.type_parity(i) == 0]
    odd_idx = [i for i in range(x.shape.dim) if x.shape.type_parity(i) == 1]
    return even_idx, odd_idx


def _det(entries: list[list[Element]], algebra: GeneratorTable) -> Element:
    """Cofactor determinant over the commutative even subring."""
    d = len(entries)
    if d == 0:
        return algebra.one()
    if d == 1:
        return entries[0][0]
    total = algebra.zero()
    for j in range(d):
        minor = [row[:j] + row[j + 1:] for row in entries[1:]]
        term = entries[0][j] * _det(minor, algebra)
        total = total + term if j % 2 == 0 else total - term
    return total


def _matrix_inverse_even(entries: list[list[Element]], algebra: GeneratorTable,
                         rewrites: RewriteSystem) -> list[list[Element]]:
    """Adjugate over determinant; entries must be even elements."""
    d = len(entries)
    det = rewrites.reduce(_det(entries, algebra))
    det_inv = graded_inverse_element(det, rewrites)
    if d == 1:
        return [[det_inv]]
    inv = [[algebra.zero()] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            minor = [[entries[r][c] for c in range(d) if c != j]
                     for r in range(d) if r != i]
            cof = _det(minor, algebra)
            if (i + j) % 2:
                cof = -cof
            inv[j][i] = rewrites.reduce(cof * det_inv)
    return inv


def graded_inverse_element(u: Element, rewrites: RewriteSystem) -> Element:
    from .algebra import graded_inverse as _gi
    return rewrites.reduce(_gi(u, rewrites))


def sdet(x: SuperMatrix, rewrites: RewriteSystem) -> Element:
    """Superdeterminant det(A - B D^-1 C) det(D^-1) of an even matrix.

    A is the even-type block and D the odd-type block; both must be
    invertible over the even subring modulo the rewrite system.
    """
    if x._require_parity() != 0:
        raise ParityError("superdeterminant is defined for even matrices")
    algebra = None
    for row in x.entries:
        for e in row:
            algebra = e.algebra
            break
        break
    even_idx, odd_idx = _blocks(x)
    A = [[x.entries[i][j] for j in even_idx] for i in even_idx]
    B = [[x.entries[i][j] for j in odd_idx] for i in even_idx]
    C = [[x.entries[i][j] for j in even_idx] for i in odd_idx]
    D = [[x.entries[i][j] for j in odd_idx] for i in odd_idx]
    if not odd_idx:
        return rewrites.reduce(_det(A, algebra))
    try:
        D_inv = _matrix_inverse_even(D, algebra, rewrites)
    except InvertibilityError as ex:
        raise InvertibilityError("odd-type block is not invertible: %s" % ex) from None
    m, n = len(even_idx), len(odd_idx)
    schur = [[A[i][j] for j in range(m)] for i in range(m)]
    for i in range(m):
        for j in range(m):
            acc = schur[i][j]
            for k in range(n):
                for l in range(n):
                    acc = acc - B[i][k] * D_inv[k][l] * C[l][j]
            schur[i][j] = rewrites.reduce(acc)
    det_schur = rewrites.reduce(_det(schur, algebra))
    # the GL precondition wants the even-type block invertible as well
    graded_inverse_element(det_schur, rewrites)
    det_D = rewrites.reduce(_det(D, algebra))
    return rewrites.reduce(det_schur * graded_inverse_element(det_D, rewrites))


def exp_nilpotent(x: SuperMatrix, algebra: GeneratorTable, max_order: int = 12) -> SuperMatrix:
    """Finite exponential series; requires x to be nilpotent entrywise."""
    acc = SuperMatrix.identity(x.shape, algebra)
    power = SuperMatrix.identity(x.shape, algebra)
    fact = Fraction(1)
    for k in range(1, max_order + 1):
        power = power @ x
        fact = fact * k
        if all(e.is_zero for row in power.entries for e in row):
            return acc
        acc = acc + power.scale(Scalar.of(Fraction(1) / fact))
    raise InvertibilityError("matrix exponential series did not terminate")
