"""Seiberg-Witten basic-class bookkeeping.

Works in the integer lattice spanned by (A, B, T): A and B are the
hyperbolic pair dual to the fiber and base surface classes (the last labeled
pair of the surgered model's form basis) and T is the class of the core
torus of the multiplicity-m transform.  The pairing is A.B = 1,
A.A = B.B = 0, T.T = T.A = T.B = 0, so L = sA + tB + jT has L.L = 2st.

Gauge theory itself is out of scope: the nonzero-count inputs (value 1 for
the symplectic intermediate model by Taubes' theorem, value n after the -n
surgery by the torus-surgery gluing formula, and the 2m-class spectrum of
the multiplicity-m transform) are axioms recorded in every report.  What is
computed here is everything downstream of those inputs: the adjunction
-constrained candidate survey, the class spectra, spin parity, the
homeomorphism type, irreducibility from pairwise (L-L')^2 values, and the
pairwise smooth distinction verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .manifolds import PI1_TRIVIAL, ManifoldModel


class ContractError(ValueError):
    """Inputs violate an operation's precondition (not a failed verdict)."""


@dataclass(frozen=True, order=True)
class ClassVector:
    """An integer class sA + tB + jT."""

    s: int
    t: int
    j: int = 0

    @property
    def square(self) -> int:
        return 2 * self.s * self.t

    def __neg__(self) -> "ClassVector":
        return ClassVector(-self.s, -self.t, -self.j)

    def __sub__(self, other: "ClassVector") -> "ClassVector":
        return ClassVector(self.s - other.s, self.t - other.t, self.j - other.j)

    def __str__(self) -> str:
        return f"{self.s}A{self.t:+d}B{self.j:+d}T"


@dataclass(frozen=True)
class BasicClassSet:
    """Basic classes with |SW| values for the model selected by context=(k,n,m)."""

    context: tuple[int, int, int]
    entries: tuple[tuple[ClassVector, int], ...]

    @property
    def values(self) -> tuple[int, ...]:
        """The |SW| value multiset, sorted."""
        return tuple(sorted(v for _, v in self.entries))

    @property
    def classes(self) -> tuple[ClassVector, ...]:
        return tuple(c for c, _ in self.entries)


def enumerate_Zk_candidates(k: int) -> tuple[ClassVector, ...]:
    """Adjunction survivors for the b1 = 1 intermediate model Z_k.

    A basic class pairs trivially with T-components (genus-1 classes of
    square 0), so L = sA + tB with s, t even, |s| <= 2k, |t| <= 2 by the
    adjunction inequality against the two surface classes; the moduli
    -dimension inequality L.L = 2st >= 2e + 3*sigma = 8k then leaves exactly
    +-(2kA + 2B).
    """
    if k < 2:
        raise ContractError("candidate survey needs k >= 2")
    out = [
        ClassVector(s, t)
        for s in range(-2 * k, 2 * k + 1, 2)
        for t in range(-2, 3, 2)
        if 2 * s * t >= 8 * k
    ]
    return tuple(sorted(out))


def basic_classes(k: int, n: int, m: int) -> BasicClassSet:
    """The |SW| table for the model at (k, n, m).

    m = 1: the two classes +-(2kA + 2B), each with value n (Taubes value 1
    on the intermediate model, multiplied to n by the -n surgery's gluing
    formula).  m >= 2: the multiplicity-m transform spreads each into the m
    classes +-(2kA + 2B) + jT with j in {-(m-1), -(m-3), ..., m-1}, each
    keeping value n.
    """
    if k < 2 or n < 1 or m < 1:
        raise ContractError(f"need k >= 2, n >= 1, m >= 1 (got k={k}, n={n}, m={m})")
    js = range(-(m - 1), m, 2)
    entries = [(ClassVector(2 * k, 2, j), n) for j in js]
    entries += [(ClassVector(-2 * k, -2, j), n) for j in js]
    entries.sort(key=lambda e: e[0])
    return BasicClassSet((k, n, m), tuple(entries))


def spin_parity(k: int, n: int, m: int) -> str:
    """"spin" for odd m, "nonspin" for even m.

    The second Stiefel-Whitney class of the transformed model is (m-1)T
    mod 2 with T primitive (an input assumption), so it vanishes exactly
    when m is odd.
    """
    if k < 2 or n < 1 or m < 1:
        raise ContractError(f"need k >= 2, n >= 1, m >= 1 (got k={k}, n={n}, m={m})")
    return "spin" if m % 2 == 1 else "nonspin"


@dataclass(frozen=True)
class HomeoVerdict:
    """type_name is None when the model cannot be classified; reason says why."""

    type_name: str | None
    reason: str

    @property
    def classified(self) -> bool:
        return self.type_name is not None


def classify_homeomorphism(model: ManifoldModel) -> HomeoVerdict:
    """Topological type via Freedman: a certified simply connected model with
    signature 0 and rank 4k-2 is (2k-1)(S2xS2) when spin, and
    (2k-1)(CP2#CP2bar) when nonspin."""
    if PI1_TRIVIAL not in model.certifications:
        return HomeoVerdict(None, "unclassified: pi1 triviality not certified")
    if model.char.sigma != 0:
        return HomeoVerdict(None, f"unclassified: signature {model.char.sigma} != 0")
    if model.sw_profile is None:
        return HomeoVerdict(None, "unclassified: no (k, n, m) profile attached")
    k, _, m = model.sw_profile
    if model.char.b2 != 4 * k - 2 or model.char.b2 % 2 != 0:
        return HomeoVerdict(
            None, f"unclassified: rank {model.char.b2} is not the expected 4k-2"
        )
    if m % 2 == 1:
        return HomeoVerdict(f"{2 * k - 1}(S2xS2)", "spin, signature 0, Freedman")
    return HomeoVerdict(f"{2 * k - 1}(CP2#CP2bar)", "nonspin, signature 0, Freedman")


@dataclass(frozen=True)
class IrreducibilityVerdict:
    squares: tuple[int, ...]
    allowed: tuple[int, ...]
    passed: bool


def irreducibility_check(classes: BasicClassSet, k: int) -> IrreducibilityVerdict:
    """Pairwise (L-L')^2 over all ordered pairs must land in {0, 32k}.

    In particular -4 never occurs, which rules out splitting off a standard
    piece in a connected-sum decomposition; a pass records the model as
    irreducible (given the basic-class inputs).
    """
    if not classes.entries:
        raise ContractError("irreducibility check needs a nonempty class set")
    squares = sorted(
        {(a - b).square for a in classes.classes for b in classes.classes}
    )
    allowed = (0, 32 * k)
    return IrreducibilityVerdict(
        tuple(squares), allowed, all(x in allowed for x in squares)
    )


@dataclass(frozen=True)
class SmoothVerdict:
    """kind is "nondiffeomorphic" or "indistinguishable"; the witness is the
    pair of |SW| value multisets backing a nondiffeomorphic verdict."""

    kind: str
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None
    tags: tuple[str, str]

    @property
    def nondiffeomorphic(self) -> bool:
        return self.kind == "nondiffeomorphic"


def symplectic_tag(n: int) -> str:
    return "symplectic" if n == 1 else "nonsymplectic"


def distinguish(a: BasicClassSet, b: BasicClassSet) -> SmoothVerdict:
    """Compare two models sharing a homeomorphism type by their |SW| multisets.

    Distinct multisets certify the smooth structures differ; equal multisets
    are reported as indistinguishable (never as "diffeomorphic").
    """
    ka, _, ma = a.context
    kb, _, mb = b.context
    if ka != kb or ma % 2 != mb % 2:
        raise ContractError(
            f"contexts {a.context} and {b.context} have different homeomorphism "
            "types; comparison is meaningless"
        )
    tags = (symplectic_tag(a.context[1]), symplectic_tag(b.context[1]))
    if a.values != b.values:
        return SmoothVerdict("nondiffeomorphic", (a.values, b.values), tags)
    return SmoothVerdict("indistinguishable", None, tags)
