"""Exact dense linear algebra over Q and F_p, and the rank-defect engine.

Ranks are computed without floating point: fraction-free (Bareiss-style)
integer elimination over the rationals after clearing denominators row by
row, and ordinary Gaussian elimination on residues over a prime field.  On
top of exact_rank the module checks two universal rank inequalities for
square matrices X, Y, Z, A, B with T := X - Y@X@A and S := Z - X@B:

  claim  bound:  rank(YX) <= rank(YZ) + rank(X) - rank(Z) + rank(S)
  master bound:  rank(Z)  <= rank(YZ) + rank(S) + rank(T)

and quantifies, per matrix assignment of a factorization witness, how far
the three defect ranks are from the smallness regime those bounds forbid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .fields import Field, FieldError, Scalar
from .ncpoly import NcPoly
from .rewrite import LemmaWitness, RewriteSystem, verify_lemma_witness
from .seeding import rng_for


class ExactMatrix:
    """An immutable dense matrix with exact entries over a fixed field."""

    __slots__ = ("field", "rows", "cols", "entries", "_rank")

    def __init__(self, field: Field, entries: Sequence[Sequence[Scalar]]):
        rows = tuple(tuple(field.normalize(x) for x in row) for row in entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]) if rows else 0)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "_rank", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def _raw(cls, field: Field, rows: tuple[tuple[Scalar, ...], ...]) -> "ExactMatrix":
        """Internal fast path: entries already normalized."""
        m = cls.__new__(cls)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "rows", len(rows))
        object.__setattr__(m, "cols", len(rows[0]) if rows else 0)
        object.__setattr__(m, "entries", rows)
        object.__setattr__(m, "_rank", None)
        return m

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "ExactMatrix":
        z = field.zero()
        return ExactMatrix._raw(field, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(field: Field, n: int) -> "ExactMatrix":
        z, o = field.zero(), field.one()
        return ExactMatrix._raw(
            field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        )

    # -- structure ---------------------------------------------------------

    def _check(self, other: "ExactMatrix") -> None:
        if self.field != other.field:
            raise FieldError("matrices live over different fields")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.field, self.entries))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field})"

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._raw(self.field, tuple(zip(*self.entries)) if self.entries else ())

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        """Columns of self followed by columns of other (same row count)."""
        self._check(other)
        if self.rows != other.rows:
            raise ValueError("hstack needs equal row counts")
        return ExactMatrix._raw(
            self.field, tuple(ra + rb for ra, rb in zip(self.entries, other.entries))
        )

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix sizes differ")
        f = self.field
        if f.p is None:
            return ExactMatrix._raw(
                f,
                tuple(
                    tuple(a + b for a, b in zip(ra, rb))
                    for ra, rb in zip(self.entries, other.entries)
                ),
            )
        p = f.p
        return ExactMatrix._raw(
            f,
            tuple(
                tuple((a + b) % p for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __neg__(self) -> "ExactMatrix":
        f = self.field
        if f.p is None:
            return ExactMatrix._raw(f, tuple(tuple(-a for a in row) for row in self.entries))
        p = f.p
        return ExactMatrix._raw(f, tuple(tuple(-a % p for a in row) for row in self.entries))

    def scale(self, c: Scalar) -> "ExactMatrix":
        f = self.field
        c = f.normalize(c)
        return ExactMatrix._raw(
            f, tuple(tuple(f.mul(a, c) for a in row) for row in self.entries)
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols = list(zip(*other.entries))
        if self.field.p is None:
            out = tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.entries
            )
            out = tuple(tuple(Fraction(x) for x in row) for row in out)
        else:
            p = self.field.p
            out = tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols)
                for row in self.entries
            )
        return ExactMatrix._raw(self.field, out)

    def rank(self) -> int:
        if self._rank is None:
            object.__setattr__(self, "_rank", _compute_rank(self))
        return self._rank


def _rank_mod(rows: list[list[int]], p: int) -> int:
    """Gaussian elimination on residues; returns the number of pivots."""
    m = len(rows)
    if m == 0:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        top = [a * inv % p for a in rows[r]]
        rows[r] = top
        for i in range(r + 1, m):
            f = rows[i][col]
            if f:
                ri = rows[i]
                rows[i] = [(a - f * b) % p for a, b in zip(ri, top)]
        r += 1
        if r == m:
            break
    return r


def _rank_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free integer elimination; all divisions are exact because
    every intermediate entry is a minor of the input."""
    m = len(rows)
    if m == 0:
        return 0
    ncols = len(rows[0])
    r = 0
    prev = 1
    for col in range(ncols):
        piv_i = next((i for i in range(r, m) if rows[i][col]), None)
        if piv_i is None:
            continue
        rows[r], rows[piv_i] = rows[piv_i], rows[r]
        piv = rows[r][col]
        top = rows[r]
        for i in range(r + 1, m):
            ri = rows[i]
            f = ri[col]
            rows[i] = [(piv * a - f * b) // prev for a, b in zip(ri, top)]
        prev = piv
        r += 1
        if r == m:
            break
    return r


def _compute_rank(M: ExactMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.field.p is not None:
        return _rank_mod([list(row) for row in M.entries], M.field.p)
    int_rows = []
    for row in M.entries:
        scale = math.lcm(*(x.denominator for x in row))
        int_rows.append([x.numerator * (scale // x.denominator) for x in row])
    return _rank_bareiss(int_rows)


def exact_rank(M: ExactMatrix) -> int:
    """The rank of M, computed exactly (no floating point anywhere)."""
    return M.rank()


def image_intersection_dim(X: ExactMatrix, Z: ExactMatrix) -> int:
    """dim(Im X ∩ Im Z) = rank(X) + rank(Z) - rank([X | Z])."""
    return X.rank() + Z.rank() - X.hstack(Z).rank()


def _check_square_same(mats: Sequence[ExactMatrix]) -> int:
    first = mats[0]
    n = first.rows
    for M in mats:
        first._check(M)
        if M.rows != n or M.cols != n:
            raise ValueError("all matrices must be square of one common size")
    return n


@dataclass(frozen=True)
class BoundCheck:
    """One inequality evaluation: holds iff lhs <= rhs."""

    holds: bool
    lhs: int
    rhs: int

    @property
    def margin(self) -> int:
        return self.rhs - self.lhs


def claim_bound_check(X: ExactMatrix, Y: ExactMatrix, Z: ExactMatrix, B: ExactMatrix) -> BoundCheck:
    """rank(YX) <= rank(YZ) + rank(X) - rank(Z) + rank(S) with S = Z - X@B."""
    _check_square_same((X, Y, Z, B))
    S = Z - X @ B
    lhs = (Y @ X).rank()
    rhs = (Y @ Z).rank() + X.rank() - Z.rank() + S.rank()
    return BoundCheck(lhs <= rhs, lhs, rhs)


@dataclass(frozen=True)
class MasterCheck:
    """The combined bound rank(Z) <= rank(YZ) + rank(S) + rank(T)."""

    holds: bool
    margin: int
    rank_z: int
    rank_yz: int
    rank_s: int
    rank_t: int


def master_bound_check(
    X: ExactMatrix, Y: ExactMatrix, Z: ExactMatrix, A: ExactMatrix, B: ExactMatrix
) -> MasterCheck:
    """Check rank(Z) <= rank(YZ) + rank(S) + rank(T) for T = X - Y@X@A and
    S = Z - X@B; the margin (rhs - lhs) is reported and is never negative."""
    _check_square_same((X, Y, Z, A, B))
    T = X - Y @ X @ A
    S = Z - X @ B
    rank_z = Z.rank()
    rank_yz = (Y @ Z).rank()
    rank_s = S.rank()
    rank_t = T.rank()
    margin = rank_yz + rank_s + rank_t - rank_z
    return MasterCheck(margin >= 0, margin, rank_z, rank_yz, rank_s, rank_t)


# -- polynomial evaluation and the obstruction probe ----------------------------------


def evaluate_poly(p: NcPoly, assignment: Mapping[str, ExactMatrix]) -> ExactMatrix:
    """Evaluate a polynomial by substituting a square matrix per generator;
    the empty word maps to the identity.  Sizes and fields must all agree,
    and the assignment field must equal the polynomial's coefficient field."""
    alg = p.alg
    mats: list[ExactMatrix] = []
    for name in alg.gens:
        if name not in assignment:
            raise ValueError(f"assignment is missing generator {name!r}")
        mats.append(assignment[name])
    n = _check_square_same(mats)
    field = mats[0].field
    if field != alg.field:
        raise FieldError(
            f"assignment field {field} does not match coefficient field {alg.field}"
        )
    ident = ExactMatrix.identity(field, n)
    total = ExactMatrix.zeros(field, n, n)
    for w, c in p.terms:
        prod = ident
        for ch in w:
            prod = prod @ mats[ord(ch)]
        total = total + prod.scale(c)
    return total


@dataclass(frozen=True)
class DefectReport:
    """Exact ranks, defects, and regime arithmetic for one witness assignment.

    margin = rank_yz + rank_t + rank_s - rank_z is nonnegative for every
    assignment (asserted).  The regime "rank_x, rank_z > alpha*n while all
    three defects < alpha*n/4" is feasible for some alpha iff
    alpha_defect_floor < alpha_rank_cap; the margin identity makes that
    impossible, and regime_feasible records the honest evaluation.
    """

    n: int
    field: Field
    rank_x: int
    rank_z: int
    rank_yz: int
    rank_t: int
    rank_s: int
    margin: int
    norm_x: Fraction
    norm_z: Fraction
    norm_yz: Fraction
    norm_t: Fraction
    norm_s: Fraction
    alpha_rank_cap: Fraction
    alpha_defect_floor: Fraction
    regime_feasible: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "field": str(self.field),
            "rank_x": self.rank_x,
            "rank_z": self.rank_z,
            "rank_yz": self.rank_yz,
            "rank_t": self.rank_t,
            "rank_s": self.rank_s,
            "margin": self.margin,
            "norm_x": str(self.norm_x),
            "norm_z": str(self.norm_z),
            "norm_yz": str(self.norm_yz),
            "norm_t": str(self.norm_t),
            "norm_s": str(self.norm_s),
            "alpha_rank_cap": str(self.alpha_rank_cap),
            "alpha_defect_floor": str(self.alpha_defect_floor),
            "regime_feasible": self.regime_feasible,
        }


def obstruction_probe(
    sys: RewriteSystem, witness: LemmaWitness, assignment: Mapping[str, ExactMatrix]
) -> DefectReport:
    """Evaluate a verified witness on concrete matrices and report defects.

    Requires the witness to pass :func:`verify_lemma_witness` first; then
    X, Y, Z, A, B are the evaluated matrices, T = X - Y@X@A and S = Z - X@B
    the defect matrices, and the report carries the exact ranks, the master
    margin (asserted nonnegative), normalized ranks, and the two alpha
    thresholds certifying the smallness regime infeasible.
    """
    wr = verify_lemma_witness(sys, witness)
    if not wr.verdict:
        raise ValueError("witness does not verify against the rewrite system")
    X = evaluate_poly(witness.x, assignment)
    Y = evaluate_poly(witness.y, assignment)
    Z = evaluate_poly(witness.z, assignment)
    A = evaluate_poly(witness.a, assignment)
    B = evaluate_poly(witness.b, assignment)
    n = X.rows
    if n == 0:
        raise ValueError("assignment matrices must be nonempty")
    T = X - Y @ X @ A
    S = Z - X @ B
    rank_x = X.rank()
    rank_z = Z.rank()
    rank_yz = (Y @ Z).rank()
    rank_t = T.rank()
    rank_s = S.rank()
    margin = rank_yz + rank_t + rank_s - rank_z
    assert margin >= 0, "master bound violated: rank arithmetic is broken"
    max_defect = max(rank_yz, rank_t, rank_s)
    alpha_rank_cap = Fraction(min(rank_x, rank_z), n)
    alpha_defect_floor = Fraction(4 * max_defect, n)
    return DefectReport(
        n=n,
        field=X.field,
        rank_x=rank_x,
        rank_z=rank_z,
        rank_yz=rank_yz,
        rank_t=rank_t,
        rank_s=rank_s,
        margin=margin,
        norm_x=Fraction(rank_x, n),
        norm_z=Fraction(rank_z, n),
        norm_yz=Fraction(rank_yz, n),
        norm_t=Fraction(rank_t, n),
        norm_s=Fraction(rank_s, n),
        alpha_rank_cap=alpha_rank_cap,
        alpha_defect_floor=alpha_defect_floor,
        regime_feasible=alpha_defect_floor < alpha_rank_cap,
    )


# -- random matrices and the inequality fuzz -----------------------------------------


def _random_dense(field: Field, rows: int, cols: int, rng) -> ExactMatrix:
    return ExactMatrix._raw(
        field,
        tuple(
            tuple(field.random_scalar(rng) for _ in range(cols)) for _ in range(rows)
        ),
    )


def _random_with_rank(field: Field, n: int, r: int, rng, retries: int = 200) -> ExactMatrix:
    if r == 0:
        return ExactMatrix.zeros(field, n, n)
    for _ in range(retries):
        if field.p is None:
            left = ExactMatrix(
                field, [[rng.randint(-3, 3) for _ in range(r)] for _ in range(n)]
            )
            right = ExactMatrix(
                field, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)]
            )
        else:
            left = _random_dense(field, n, r, rng)
            right = _random_dense(field, r, n, rng)
        M = left @ right
        if M.rank() == r:
            return M
    raise RuntimeError(f"failed to hit target rank {r} at size {n} within {retries} draws")


def random_matrix(
    field: Field, n: int, target_rank: int | None = None, seed: int = 0
) -> ExactMatrix:
    """A seeded random n x n matrix; with target_rank set, a product of
    random n x r and r x n factors resampled (bounded retries) until the
    rank is exactly r."""
    rng = rng_for(seed, "matrix", str(field), n, target_rank)
    if target_rank is None:
        return _random_dense(field, n, n, rng)
    if not 0 <= target_rank <= n:
        raise ValueError(f"target rank {target_rank} out of range for size {n}")
    return _random_with_rank(field, n, target_rank, rng)


def random_assignment(
    names: Sequence[str], field: Field, n: int, rng
) -> dict[str, ExactMatrix]:
    """One dense random square matrix per generator name."""
    return {name: _random_dense(field, n, n, rng) for name in names}


@dataclass(frozen=True)
class RankFuzzReport:
    check: str
    field: Field
    n: int
    trials: int
    violations: int
    min_margin: int | None
    first_violation: int | None


def fuzz_bound_checks(
    field: Field, n: int, trials: int, seed: int, check: str = "master"
) -> RankFuzzReport:
    """Run one of the rank inequalities on random matrices with uniformly
    chosen target ranks.

    check = "claim":        random X, Y, Z, B; margin of the claim bound.
    check = "master":       random X, Y, Z, A, B; the master margin.
    check = "intersection": Z built as X@B + S; margin of
                            dim(Im Z ∩ Im X) >= rank(Z) - rank(S).
    """
    if check not in ("claim", "master", "intersection"):
        raise ValueError(f"unknown check {check!r}")
    violations = 0
    first_violation: int | None = None
    min_margin: int | None = None
    for t in range(trials):
        rng = rng_for(seed, "rankfuzz", check, str(field), n, t)

        def draw() -> ExactMatrix:
            return _random_with_rank(field, n, rng.randint(0, n), rng)

        if check == "claim":
            res = claim_bound_check(draw(), draw(), draw(), draw())
            margin = res.margin
        elif check == "master":
            res = master_bound_check(draw(), draw(), draw(), draw(), draw())
            margin = res.margin
        else:
            X = draw()
            B = _random_dense(field, n, n, rng)
            S = draw()
            Z = X @ B + S
            margin = image_intersection_dim(X, Z) - (Z.rank() - S.rank())
        if min_margin is None or margin < min_margin:
            min_margin = margin
        if margin < 0:
            violations += 1
            if first_violation is None:
                first_violation = t
    return RankFuzzReport(check, field, n, trials, violations, min_margin, first_violation)
