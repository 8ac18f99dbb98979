"""Exact integer matrix routines: Smith normal form, abelian invariants,
and symmetric form classification.

Everything is arbitrary-precision integer arithmetic on plain Python ints;
no floating point enters any verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .presentations import Presentation


class IntMatrix:
    """Immutable integer matrix.  Entries are a tuple of row tuples."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(row) for row in entries)
        for row in rows:
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"matrix entries must be plain ints, got {x!r}")
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose().entries
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries],
            cols=other.cols,
        )

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_lists()!r})"


def determinant(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithNormalForm:
    d: IntMatrix
    u: IntMatrix
    v: IntMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(x for x in self.d.diagonal() if x != 0)


def smith_normal_form(m: IntMatrix) -> SmithNormalForm:
    """Diagonalize m over the integers: returns (d, u, v) with d = u @ m @ v,
    u and v unimodular, and the diagonal a nonnegative divisibility chain.

    Pivot rule: smallest nonzero absolute value in the working submatrix,
    ties broken row-major, so the decomposition is deterministic.
    """
    nr, nc = m.rows, m.cols
    d = m.to_lists()
    u = IntMatrix.identity(nr).to_lists()
    v = IntMatrix.identity(nc).to_lists()

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row i += q * row j
        d[i] = [a + q * b for a, b in zip(d[i], d[j])]
        u[i] = [a + q * b for a, b in zip(u[i], u[j])]

    def add_col(i, j, q):
        for row in d:
            row[i] += q * row[j]
        for row in v:
            row[i] += q * row[j]

    def negate_row(i):
        d[i] = [-a for a in d[i]]
        u[i] = [-a for a in u[i]]

    def find_pivot(t):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                a = abs(d[i][j])
                if a and (best is None or a < best[0]):
                    best = (a, i, j)
        return best

    for t in range(min(nr, nc)):
        piv = find_pivot(t)
        if piv is None:
            break
        _, pi, pj = piv
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if d[t][t] < 0:
            negate_row(t)
        while True:
            # Clear the pivot cross.  A nonzero remainder is strictly smaller
            # than the pivot and gets swapped in, so this terminates.
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, nr):
                    if d[i][t]:
                        add_row(i, t, -(d[i][t] // d[t][t]))
                        if d[i][t]:
                            swap_rows(i, t)
                            dirty = True
                for j in range(t + 1, nc):
                    if d[t][j]:
                        add_col(j, t, -(d[t][j] // d[t][t]))
                        if d[t][j]:
                            swap_cols(j, t)
                            dirty = True
            # Enforce the divisibility chain: fold any non-multiple into the
            # pivot row and redo the clearing at this position.
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if d[i][j] % d[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
    return SmithNormalForm(
        IntMatrix(d, cols=nc), IntMatrix(u, cols=nr), IntMatrix(v, cols=nc)
    )


def exponent_matrix(presentation: Presentation) -> IntMatrix:
    """Rows indexed by relators, columns by generators; entries are total
    exponents.  This presents the abelianization."""
    index = {n: i for i, n in enumerate(presentation.generators)}
    rows = []
    for rel in presentation.relators:
        row = [0] * len(presentation.generators)
        for name, exp in rel.syllables:
            row[index[name]] += exp
        rows.append(row)
    return IntMatrix(rows, cols=len(presentation.generators))


@dataclass(frozen=True)
class AbelianInvariants:
    """H1 as invariant factors (each >= 2, each dividing the next) plus the
    free rank."""

    torsion: tuple[int, ...]
    free_rank: int

    @property
    def trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def abelian_invariants(presentation: Presentation) -> AbelianInvariants:
    """Invariant factors of the cokernel of the transposed exponent matrix,
    unit factors dropped."""
    mat = exponent_matrix(presentation)
    factors = smith_normal_form(mat).invariant_factors
    free = len(presentation.generators) - len(factors)
    return AbelianInvariants(tuple(f for f in factors if f > 1), free)


def signature_and_rank(m: IntMatrix) -> tuple[int, int]:
    """Signature and rank of a symmetric integer matrix, computed by exact
    congruence reduction.  Splitting off a pivot d rescales the complement
    form by d (a square times 1/d), so only the sign bookkeeping changes."""
    if not m.is_symmetric():
        raise ValueError("matrix is not symmetric")
    w = m.to_lists()
    idx = list(range(m.rows))
    sig = 0
    rank = 0
    flip = 1
    while idx:
        pivot = next((a for a in idx if w[a][a] != 0), None)
        if pivot is None:
            pair = next(
                ((a, b) for a in idx for b in idx if a < b and w[a][b] != 0), None
            )
            if pair is None:
                break
            a, b = pair
            # Congruence: add row/col b to row/col a, making w[a][a] = 2*w[a][b].
            for j in idx:
                w[a][j] += w[b][j]
            for i in idx:
                w[i][a] += w[i][b]
            pivot = a
        d = w[pivot][pivot]
        c = 1 if d > 0 else -1
        flip *= c
        sig += flip
        rank += 1
        rest = [a for a in idx if a != pivot]
        for i in rest:
            for j in rest:
                w[i][j] = d * w[i][j] - w[i][pivot] * w[pivot][j]
        # Rescaling a symmetric form by a positive integer changes neither
        # signature nor rank, so divide out the content to stop the pivot
        # scaling from compounding (it is doubly exponential unchecked).
        g = 0
        for i in rest:
            for j in rest:
                g = gcd(g, w[i][j])
        if g > 1:
            for i in rest:
                for j in rest:
                    w[i][j] //= g
        idx = rest
    return sig, rank


@dataclass(frozen=True)
class FormType:
    """Classification of a symmetric unimodular form.

    kind is "hyperbolic" (even, signature 0: m copies of the rank-2 block),
    "odd" (diagonalizable over Z as b_plus <1> + b_minus <-1>), or "other"
    (anything else, carrying the matrix itself)."""

    kind: str
    rank: int
    signature: int
    parity: str
    hyperbolic_blocks: int | None = None
    b_plus: int | None = None
    b_minus: int | None = None
    matrix: IntMatrix | None = None

    def __str__(self) -> str:
        if self.kind == "hyperbolic":
            return f"{self.hyperbolic_blocks}H"
        if self.kind == "odd":
            return f"{self.b_plus}<1> + {self.b_minus}<-1>"
        return f"other(rank {self.rank}, signature {self.signature}, {self.parity})"


def classify_form(m: IntMatrix) -> FormType:
    """Classify a symmetric integer matrix as an intersection form.

    Parity is basis-invariant: the form is even iff every diagonal entry is
    even.  Indefinite unimodular forms are determined by rank, signature and
    parity; the two cases used here are m hyperbolic blocks and the odd
    diagonal form.  Everything else (non-unimodular input included) lands in
    "other" with the matrix attached.
    """
    if not m.is_symmetric():
        raise ValueError("intersection form must be symmetric")
    sig, rank = signature_and_rank(m)
    parity = "odd" if any(x % 2 for x in m.diagonal()) else "even"
    unimodular = m.rows > 0 and abs(determinant(m)) == 1 or m.rows == 0
    if not unimodular:
        return FormType("other", rank, sig, parity, matrix=m)
    if parity == "even" and sig == 0 and rank % 2 == 0:
        return FormType("hyperbolic", rank, sig, parity, hyperbolic_blocks=rank // 2)
    if parity == "odd":
        return FormType(
            "odd", rank, sig, parity, b_plus=(rank + sig) // 2, b_minus=(rank - sig) // 2
        )
    return FormType("other", rank, sig, parity, matrix=m)
