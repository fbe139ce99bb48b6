"""Exact integer linear algebra: Smith normal form, finitely generated
abelian groups as cokernels, and cohomology of cochain complexes of
finitely generated free abelian groups.

Everything here works over plain Python integers, so there is no overflow
and no floating point anywhere.  Matrices are dense; the scale of interest
is a few thousand rows at most.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd


class IntegerMatrix:
    """Dense matrix over the integers.

    Treated as immutable: all operations return new matrices.  Entries are
    stored row-major as a list of lists of ints.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.data = [
            [int(x) for x in entries[i * cols:(i + 1) * cols]]
            for i in range(rows)
        ]

    @classmethod
    def from_rows(cls, rows) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(x for r in self.data for x in r)))

    def __repr__(self):
        if self.rows * self.cols <= 36:
            return f"IntegerMatrix({self.data!r})"
        return f"IntegerMatrix({self.rows}x{self.cols})"

    @property
    def shape(self):
        return (self.rows, self.cols)

    def row(self, i):
        return list(self.data[i])

    def column(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        ) if self.rows and self.cols else IntegerMatrix.zeros(self.cols, self.rows)

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, [-x for r in self.data for x in r])

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntegerMatrix(
            self.rows, self.cols,
            [a + b for ra, rb in zip(self.data, other.data) for a, b in zip(ra, rb)],
        )

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerMatrix(self.rows, self.cols, [other * x for r in self.data for x in r])
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        bt = [[other.data[k][j] for k in range(other.rows)] for j in range(other.cols)]
        out = []
        for arow in self.data:
            out.extend(sum(a * b for a, b in zip(arow, bcol) if a) for bcol in bt)
        return IntegerMatrix(self.rows, other.cols, out)

    __rmul__ = __mul__

    def apply(self, vec):
        """Matrix times column vector, returned as a list."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(a * x for a, x in zip(row, vec) if a) for row in self.data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntegerMatrix.from_rows(
            [self.data[i] + other.data[i] for i in range(self.rows)]
        ) if self.rows else IntegerMatrix.zeros(0, self.cols + other.cols)

    def vstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return IntegerMatrix(
            self.rows + other.rows, self.cols,
            [x for r in self.data for x in r] + [x for r in other.data for x in r],
        )

    def submatrix(self, row_indices, col_indices) -> "IntegerMatrix":
        return IntegerMatrix(
            len(row_indices), len(col_indices),
            [self.data[i][j] for i in row_indices for j in col_indices],
        )

    def to_json(self) -> str:
        return json.dumps(
            {"rows": self.rows, "cols": self.cols,
             "entries": [x for r in self.data for x in r]}
        )

    @classmethod
    def from_json(cls, text: str) -> "IntegerMatrix":
        obj = json.loads(text)
        return cls(obj["rows"], obj["cols"], obj["entries"])


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group in invariant-factor form.

    ``free_rank`` copies of Z plus cyclic factors Z/d for the invariant
    factors d, each at least 2 and each dividing the next.  The form is
    unique, so equality of values is isomorphism.
    """

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
            if prev is not None and d % prev != 0:
                raise ValueError("invariant factors must form a divisibility chain")
            prev = d

    @classmethod
    def from_invariants(cls, free_rank: int, factors) -> "FgAbelianGroup":
        """Canonicalize: drop unit factors, keep the divisibility chain."""
        return cls(free_rank, tuple(d for d in factors if d > 1))

    @classmethod
    def trivial(cls) -> "FgAbelianGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FgAbelianGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> "FgAbelianGroup":
        if n == 0:
            return cls(1, ())
        return cls.from_invariants(0, (abs(n),))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def direct_sum(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        # merge two divisibility chains prime by prime
        from collections import defaultdict

        exps = defaultdict(list)
        for d in self.torsion + other.torsion:
            for p, e in _factorint(d).items():
                exps[p].append(e)
        chains = []
        for p in sorted(exps):
            es = sorted(exps[p], reverse=True)
            for i, e in enumerate(es):
                while len(chains) <= i:
                    chains.append(1)
                chains[i] *= p ** e
        chains.sort()
        return FgAbelianGroup.from_invariants(self.free_rank + other.free_rank, chains)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> str:
        return json.dumps({"free_rank": self.free_rank, "torsion": list(self.torsion)})

    @classmethod
    def from_json(cls, text: str) -> "FgAbelianGroup":
        obj = json.loads(text)
        return cls.from_invariants(obj["free_rank"], obj["torsion"])


def _factorint(n: int) -> dict:
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class SmithDecomposition:
    """U * A * V = S with U, V unimodular and S diagonal with a
    divisibility chain d1 | d2 | ... on the nonnegative diagonal.

    ``u_inv`` and ``v_inv`` are the exact inverses of U and V; they come
    for free from the reduction and save a second elimination pass when
    solving linear systems.
    """

    S: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix
    u_inv: IntegerMatrix
    v_inv: IntegerMatrix

    @property
    def diagonal(self):
        n = min(self.S.rows, self.S.cols)
        return [self.S.data[i][i] for i in range(n)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _round_div(a: int, b: int) -> int:
    """Quotient with remainder in (-|b|/2, |b|/2]."""
    q, r = divmod(a, b)
    if 2 * abs(r) > abs(b) or (2 * abs(r) == abs(b) and r * b < 0):
        q += 1
    return q


def _xgcd(a: int, b: int):
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def smith_normal_form(A: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form by elimination with minimal-absolute-value pivoting.

    Picking the smallest nonzero pivot in the remaining block and using
    Bezout 2x2 steps keeps entry growth tame at this scale without any
    modular machinery.
    """
    m, n = A.rows, A.cols
    S = [row[:] for row in A.data]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Ui = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Vi = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_addmul(i, j, q):
        # row_i += q * row_j in S and U; inverse op on columns of Ui
        Si, Sj = S[i], S[j]
        for k in range(n):
            if Sj[k]:
                Si[k] += q * Sj[k]
        Uiw, Ujw = U[i], U[j]
        for k in range(m):
            if Ujw[k]:
                Uiw[k] += q * Ujw[k]
        for r in range(m):
            if Ui[r][i]:
                Ui[r][j] -= q * Ui[r][i]

    def row_2x2(i, j, a, b, c, d):
        # (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j), ad - bc = 1
        for M, w in ((S, n), (U, m)):
            Mi, Mj = M[i], M[j]
            for k in range(w):
                x, y = Mi[k], Mj[k]
                Mi[k] = a * x + b * y
                Mj[k] = c * x + d * y
        # columns of Ui get the inverse transform [[d, -b], [-c, a]] on the right
        for r in range(m):
            x, y = Ui[r][i], Ui[r][j]
            Ui[r][i] = d * x - c * y
            Ui[r][j] = -b * x + a * y

    def col_addmul(j, i, q):
        for r in range(m):
            if S[r][i]:
                S[r][j] += q * S[r][i]
        for r in range(n):
            if V[r][i]:
                V[r][j] += q * V[r][i]
        Vij, Vjj = Vi[i], Vi[j]
        for k in range(n):
            if Vjj[k]:
                Vij[k] -= q * Vjj[k]

    def col_2x2(i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j), ad - bc = 1
        for M, h in ((S, m), (V, n)):
            for r in range(h):
                x, y = M[r][i], M[r][j]
                M[r][i] = a * x + b * y
                M[r][j] = c * x + d * y
        for k in range(n):
            x, y = Vi[i][k], Vi[j][k]
            Vi[i][k] = d * x - c * y
            Vi[j][k] = -b * x + a * y

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]
        for r in range(m):
            Ui[r][i], Ui[r][j] = Ui[r][j], Ui[r][i]

    def col_swap(i, j):
        for r in range(m):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_negate(i):
        S[i] = [-x for x in S[i]]
        U[i] = [-x for x in U[i]]
        for r in range(m):
            Ui[r][i] = -Ui[r][i]

    def size_reduce_block(t):
        # Pairwise Lagrange-style reduction of the trailing rows and columns.
        # Purely unimodular, so the decomposition stays exact; it only tames
        # intermediate entry growth on dense blocks.
        for _ in range(3):
            changed = False
            order = sorted(range(t, m),
                           key=lambda i: sum(x * x for x in S[i][t:]))
            for a_pos in range(len(order)):
                i = order[a_pos]
                ni = sum(x * x for x in S[i][t:])
                if ni == 0:
                    continue
                for j in order[a_pos + 1:]:
                    dot = sum(x * y for x, y in zip(S[j][t:], S[i][t:]))
                    q = _round_div(dot, ni)
                    if q:
                        row_addmul(j, i, -q)
                        changed = True
            cols_order = sorted(
                range(t, n),
                key=lambda j: sum(S[r][j] * S[r][j] for r in range(t, m)))
            for a_pos in range(len(cols_order)):
                i = cols_order[a_pos]
                ni = sum(S[r][i] * S[r][i] for r in range(t, m))
                if ni == 0:
                    continue
                for j in cols_order[a_pos + 1:]:
                    dot = sum(S[r][j] * S[r][i] for r in range(t, m))
                    q = _round_div(dot, ni)
                    if q:
                        col_addmul(j, i, -q)
                        changed = True
            if not changed:
                break

    t = 0
    while t < min(m, n):
        if any(abs(x) > 1 << 16 for i in range(t, m) for x in S[i][t:]):
            size_reduce_block(t)
        piv = None
        best = None
        for i in range(t, m):
            Si = S[i]
            for j in range(t, n):
                x = Si[j]
                if x:
                    a = abs(x)
                    if best is None or a < best:
                        best, piv = a, (i, j)
                        if a == 1:
                            break
            if best == 1:
                break
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)

        while True:
            for i in range(t + 1, m):
                b = S[i][t]
                if b:
                    a = S[t][t]
                    if b % a == 0:
                        row_addmul(i, t, -(b // a))
                    else:
                        g, x, y = _xgcd(a, b)
                        row_2x2(t, i, x, y, -(b // g), a // g)
            for j in range(t + 1, n):
                b = S[t][j]
                if b:
                    a = S[t][t]
                    if b % a == 0:
                        col_addmul(j, t, -(b // a))
                    else:
                        g, x, y = _xgcd(a, b)
                        col_2x2(t, j, x, y, -(b // g), a // g)
            if any(S[i][t] for i in range(t + 1, m)):
                continue  # column ops disturbed the pivot column; redo
            # pivot must divide the trailing block, else fold a bad row in
            p = S[t][t]
            bad = None
            for i in range(t + 1, m):
                Si = S[i]
                if any(Si[j] % p for j in range(t + 1, n)):
                    bad = i
                    break
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if S[t][t] < 0:
            row_negate(t)
        t += 1

    return SmithDecomposition(
        S=IntegerMatrix.from_rows(S) if m else IntegerMatrix.zeros(0, n),
        U=IntegerMatrix.from_rows(U) if m else IntegerMatrix.zeros(0, 0),
        V=IntegerMatrix.from_rows(V) if n else IntegerMatrix.zeros(0, 0),
        u_inv=IntegerMatrix.from_rows(Ui) if m else IntegerMatrix.zeros(0, 0),
        v_inv=IntegerMatrix.from_rows(Vi) if n else IntegerMatrix.zeros(0, 0),
    )


def cokernel(A: IntegerMatrix) -> FgAbelianGroup:
    """Z^rows / im(A) in canonical invariant-factor form."""
    snf = smith_normal_form(A)
    diag = [d for d in snf.diagonal if d != 0]
    return FgAbelianGroup.from_invariants(A.rows - len(diag), diag)


def kernel_basis(A: IntegerMatrix) -> IntegerMatrix:
    """Matrix whose columns are a basis of ker(A : Z^cols -> Z^rows).

    The basis extends to a basis of Z^cols (it consists of columns of a
    unimodular matrix), so the kernel is returned as a direct summand.
    """
    snf = smith_normal_form(A)
    r = snf.rank
    free = list(range(r, A.cols))
    return snf.V.submatrix(range(A.cols), free)


def solve(A: IntegerMatrix, b) -> list | None:
    """One integer solution x of A x = b, or None if there is none."""
    snf = smith_normal_form(A)
    c = snf.U.apply(list(b))
    y = [0] * A.cols
    for i in range(A.rows):
        d = snf.S.data[i][i] if i < min(A.rows, A.cols) else 0
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    return snf.V.apply(y)


def solve_matrix(A: IntegerMatrix, B: IntegerMatrix) -> IntegerMatrix | None:
    """Solve A X = B columnwise; None if any column has no integer solution."""
    snf = smith_normal_form(A)
    cols = []
    for j in range(B.cols):
        c = snf.U.apply(B.column(j))
        y = [0] * A.cols
        ok = True
        for i in range(A.rows):
            d = snf.S.data[i][i] if i < min(A.rows, A.cols) else 0
            if d:
                if c[i] % d:
                    ok = False
                    break
                y[i] = c[i] // d
            elif c[i]:
                ok = False
                break
        if not ok:
            return None
        cols.append(snf.V.apply(y))
    return IntegerMatrix(
        A.cols, B.cols,
        [cols[j][i] for i in range(A.cols) for j in range(B.cols)],
    )


def invert_unimodular(M: IntegerMatrix) -> IntegerMatrix:
    """Inverse of a matrix with determinant +-1 (U M V = I gives M^-1 = V U)."""
    if M.rows != M.cols:
        raise ValueError("not square")
    snf = smith_normal_form(M)
    if any(d != 1 for d in snf.diagonal):
        raise ValueError("matrix is not unimodular")
    return snf.V * snf.U


class IntegerLattice:
    """Sublattice of Z^n maintained in column echelon form.

    Supports adding vectors and exact membership tests; used for greedy
    generator selection when covering kernels of module maps.
    """

    def __init__(self, n: int):
        self.n = n
        self.pivots = {}  # pivot row -> column vector with zeros above it

    def add(self, vec) -> bool:
        """Add a vector to the span; True if the lattice grew."""
        v = [int(x) for x in vec]
        if len(v) != self.n:
            raise ValueError("vector length mismatch")
        grew = False
        for r in range(self.n):
            if v[r] == 0:
                continue
            p = self.pivots.get(r)
            if p is None:
                if v[r] < 0:
                    v = [-x for x in v]
                self.pivots[r] = v
                return True
            d = p[r]
            if v[r] % d == 0:
                q = v[r] // d
                v = [a - q * b for a, b in zip(v, p)]
            else:
                g, x, y = _xgcd(d, v[r])
                newp = [x * a + y * b for a, b in zip(p, v)]
                v = [(d // g) * b - (v[r] // g) * a for a, b in zip(p, v)]
                self.pivots[r] = newp
                grew = True
        return grew

    def member(self, vec) -> bool:
        v = [int(x) for x in vec]
        for r in range(self.n):
            if v[r] == 0:
                continue
            p = self.pivots.get(r)
            if p is None or v[r] % p[r]:
                return False
            q = v[r] // p[r]
            v = [a - q * b for a, b in zip(v, p)]
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


class CochainComplex:
    """Bounded cochain complex of finitely generated free abelian groups.

    ``ranks[i]`` is the rank in degree i for i = 0..n, and
    ``differentials[i]`` is the matrix of d^i : C^i -> C^(i+1), of shape
    ranks[i+1] x ranks[i].  Composites d^(i+1) d^i must vanish.
    """

    def __init__(self, ranks, differentials, check: bool = True):
        self.ranks = [int(r) for r in ranks]
        self.differentials = list(differentials)
        if len(self.differentials) != max(len(self.ranks) - 1, 0):
            raise ValueError("need exactly one differential per adjacent pair of degrees")
        for i, d in enumerate(self.differentials):
            if d.shape != (self.ranks[i + 1], self.ranks[i]):
                raise ValueError(
                    f"differential {i} has shape {d.shape}, expected "
                    f"({self.ranks[i + 1]}, {self.ranks[i]})"
                )
        if check:
            for i in range(len(self.differentials) - 1):
                if not (self.differentials[i + 1] * self.differentials[i]).is_zero():
                    raise ValueError(f"d^{i + 1} d^{i} != 0")

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def differential(self, i: int) -> IntegerMatrix:
        """d^i, with zero maps supplied off the ends of the stored range."""
        if 0 <= i < len(self.differentials):
            return self.differentials[i]
        if i == self.top_degree:
            return IntegerMatrix.zeros(0, self.ranks[i])
        if i == -1:
            return IntegerMatrix.zeros(self.ranks[0], 0)
        raise IndexError(f"degree {i} out of range")

    def to_json(self) -> str:
        return json.dumps({
            "ranks": self.ranks,
            "differentials": [
                {"rows": d.rows, "cols": d.cols,
                 "entries": [x for r in d.data for x in r]}
                for d in self.differentials
            ],
        })

    @classmethod
    def from_json(cls, text: str) -> "CochainComplex":
        obj = json.loads(text)
        diffs = [IntegerMatrix(d["rows"], d["cols"], d["entries"])
                 for d in obj["differentials"]]
        return cls(obj["ranks"], diffs)


@dataclass(frozen=True)
class CohomologyData:
    """H^i of a cochain complex with its presentation.

    ``kernel`` has columns a basis of ker d^i inside C^i; ``relations``
    presents H^i as Z^k / im(relations) in those kernel coordinates.
    """

    group: FgAbelianGroup
    kernel: IntegerMatrix
    relations: IntegerMatrix

    def reduce_cocycle(self, vec) -> list:
        """Coordinates of a cocycle of C^i in the kernel basis."""
        x = solve(self.kernel, vec)
        if x is None:
            raise ValueError("vector is not a cocycle")
        return x


def cohomology_data(C: CochainComplex, i: int) -> CohomologyData:
    if not (0 <= i <= C.top_degree):
        raise IndexError(f"degree {i} out of range 0..{C.top_degree}")
    d_out = C.differential(i)
    d_in = C.differential(i - 1)
    snf = smith_normal_form(d_out)
    r = snf.rank
    k = d_out.cols - r
    K = snf.V.submatrix(range(d_out.cols), range(r, d_out.cols))
    # image of d_in lies in the kernel; its kernel-basis coordinates are the
    # bottom rows of V^-1 * d_in
    coords = snf.v_inv * d_in
    for row in range(r):
        if any(coords.data[row][j] for j in range(d_in.cols)):
            raise ValueError("incoming differential does not land in the kernel")
    X = coords.submatrix(range(r, d_out.cols), range(d_in.cols))
    return CohomologyData(group=cokernel(X), kernel=K, relations=X)


def cohomology_at(C: CochainComplex, i: int) -> FgAbelianGroup:
    """ker d^i / im d^(i-1) in canonical form."""
    return cohomology_data(C, i).group


def all_cohomology(C: CochainComplex) -> list:
    return [cohomology_at(C, i) for i in range(C.top_degree + 1)]
