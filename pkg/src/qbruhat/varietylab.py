"""Exact linear algebra over the rationals and prime fields, and the
desk-scale geometry built on it: Plücker coordinates, tilted Richardson
membership by cyclic rank conditions and by multi-Plücker vanishing,
tilted Schubert cells and their canonical matrices, Deodhar-cell point
samplers, totally nonnegative sign data, and brute-force F_q counting.

A matrix lives over Q (field None; entries Fraction) or over F_p (field
p; entries ints in [0, p)).  No floating point anywhere.
"""

from __future__ import annotations

import functools
import itertools
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .permcore import (
    GateError,
    InternalConsistencyError,
    Perm,
    all_permutations,
    cyclic_interval,
    inverse,
    length,
    prefix_set,
    shifted_less,
    sort_shifted,
)
from . import qbgraph
from .tiltorder import Tilt, a_leq, check_tilt, witness_a
from .tiltwords import (
    BAR,
    Subword,
    TiltedWord,
    flattenable,
    is_regular,
    jump_min,
    prefix_products,
    tilt_sequence,
)

Scalar = Union[int, Fraction]

DEFAULT_MAX_COUNT_N = 4


def max_count_n() -> int:
    return int(os.environ.get("QBRUHAT_MAX_COUNT_N", DEFAULT_MAX_COUNT_N))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class ExactMatrix:
    """n x n matrix over Q (field None) or F_p (field p)."""

    n: int
    field: Optional[int]
    rows: tuple[tuple[Scalar, ...], ...]

    def entry(self, i: int, k: int) -> Scalar:
        """1-indexed (row, column)."""
        return self.rows[i - 1][k - 1]


def make_matrix(rows: Sequence[Sequence[Scalar]], field: Optional[int] = None) -> ExactMatrix:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if field is None:
        norm = tuple(tuple(Fraction(x) for x in r) for r in rows)
    else:
        if not is_prime(field):
            raise ValueError(f"{field} is not prime")
        norm = tuple(tuple(int(x) % field for x in r) for r in rows)
    return ExactMatrix(n=n, field=field, rows=norm)


def permutation_matrix(w: Perm, field: Optional[int] = None) -> ExactMatrix:
    """The flag e_w: a 1 in each position (w_k, k)."""
    n = len(w)
    rows = [[0] * n for _ in range(n)]
    for k, wk in enumerate(w, start=1):
        rows[wk - 1][k - 1] = 1
    return make_matrix(rows, field)


def mat_mul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    if A.n != B.n or A.field != B.field:
        raise ValueError("matrix mismatch")
    n = A.n
    rows = [
        [sum(A.rows[i][t] * B.rows[t][k] for t in range(n)) for k in range(n)]
        for i in range(n)
    ]
    return make_matrix(rows, A.field)


def _det_bareiss(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact integer determinant."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_fractions(rows: list[list[Fraction]]) -> Fraction:
    # clear denominators row by row, then run the integer Bareiss pass
    scale = Fraction(1)
    cleared: list[list[int]] = []
    for row in rows:
        mult = 1
        for x in row:
            d = Fraction(x).denominator
            mult = mult * d // _gcd(mult, d)
        scale *= mult
        cleared.append([int(Fraction(x) * mult) for x in row])
    return Fraction(_det_bareiss(cleared)) / scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _det_mod(rows: list[list[int]], p: int) -> int:
    n = len(rows)
    m = [[x % p for x in row] for row in rows]
    det = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det % p
        det = det * m[k][k] % p
        inv = pow(m[k][k], p - 2, p)
        for r in range(k + 1, n):
            if m[r][k]:
                f = m[r][k] * inv % p
                for c in range(k, n):
                    m[r][c] = (m[r][c] - f * m[k][c]) % p
    return det % p


def _rank(rows: list[list[Scalar]], field: Optional[int]) -> int:
    if not rows or not rows[0]:
        return 0
    m = [list(r) for r in rows]
    nr, nc = len(m), len(m[0])
    if field is not None:
        p = field
        m = [[x % p for x in r] for r in m]
    rank = 0
    row = 0
    for col in range(nc):
        piv = next((r for r in range(row, nr) if m[r][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        if field is None:
            lead = m[row][col]
            for r in range(row + 1, nr):
                if m[r][col]:
                    f = Fraction(m[r][col], 1) / lead
                    for c in range(col, nc):
                        m[r][c] -= f * m[row][c]
        else:
            inv = pow(m[row][col], p - 2, p)
            for r in range(row + 1, nr):
                if m[r][col]:
                    f = m[r][col] * inv % p
                    for c in range(col, nc):
                        m[r][c] = (m[r][c] - f * m[row][c]) % p
        rank += 1
        row += 1
        if row == nr:
            break
    return rank


def submatrix_det(M: ExactMatrix, row_order: Sequence[int], k: int) -> Scalar:
    rows = [[M.rows[i - 1][c] for c in range(k)] for i in row_order]
    if M.field is None:
        return _det_fractions(rows)
    return _det_mod(rows, M.field)


def det(M: ExactMatrix) -> Scalar:
    return submatrix_det(M, range(1, M.n + 1), M.n)


def is_invertible(M: ExactMatrix) -> bool:
    return det(M) != 0


def rank_region(M: ExactMatrix, row_set: Iterable[int], k: int) -> int:
    """Rank of the submatrix on the given rows and the first k columns."""
    rows = [[M.rows[i - 1][c] for c in range(k)] for i in sorted(row_set)]
    return _rank(rows, M.field)


# ---------------------------------------------------------------------------
# Plücker coordinates


def plucker(M: ExactMatrix, I: Sequence[int]) -> Scalar:
    """Delta_I: rows I in the listed order against the first |I| columns."""
    if len(set(I)) != len(I):
        return 0 if M.field is not None else Fraction(0)
    if any(not 1 <= i <= M.n for i in I):
        raise ValueError(f"row index out of range in {I}")
    return submatrix_det(M, I, len(I))


def plucker_drop(M: ExactMatrix, I: Sequence[int], j: int) -> Scalar:
    """Delta_{I - i_j}: remove the j-th listed index, with sign (-1)^{k-j}."""
    k = len(I)
    val = plucker(M, tuple(I[:j - 1]) + tuple(I[j:]))
    return -val if (k - j) % 2 else val


def plucker_add(M: ExactMatrix, J: Sequence[int], i: int) -> Scalar:
    """Delta_{J + i}: append the index i."""
    return plucker(M, tuple(J) + (i,))


def multi_plucker(M: ExactMatrix, w: Perm) -> Scalar:
    """Delta_w = prod_k Delta_{w[k]}."""
    total: Scalar = Fraction(1) if M.field is None else 1
    for k in range(1, M.n + 1):
        f = plucker(M, w[:k])
        if f == 0:
            return f
        total = total * f if M.field is None else total * f % M.field
    return total


# ---------------------------------------------------------------------------
# membership routes


def in_tilted_richardson(
    M: ExactMatrix,
    u: Perm,
    v: Perm,
    open_flag: bool = False,
    a: Optional[Tilt] = None,
) -> bool:
    """Rank-condition route: the 2n^2 cyclic region conditions."""
    n = M.n
    if len(u) != n or len(v) != n:
        raise ValueError("size mismatch")
    if not is_invertible(M):
        raise ValueError("matrix does not represent a flag (singular)")
    if a is None:
        a = witness_a(u, v)
    else:
        a = check_tilt(a, n)
        if not a_leq(a, u, v):
            # the variety for this tilt is empty unless u <=_a v
            return False
    for k in range(1, n + 1):
        uk = prefix_set(u, k)
        vk = prefix_set(v, k)
        ak = a[k - 1]
        for i in range(1, n + 1):
            lo = cyclic_interval(n, ak, i)
            hi = cyclic_interval(n, i, ak)
            r_lo = rank_region(M, lo, k)
            r_hi = rank_region(M, hi, k)
            if open_flag:
                if r_lo != len(uk & lo) or r_hi != len(vk & hi):
                    return False
            else:
                if r_lo > len(uk & lo) or r_hi > len(vk & hi):
                    return False
    return True


@functools.lru_cache(maxsize=4096)
def _interval_members(u: Perm, v: Perm) -> frozenset[Perm]:
    return qbgraph.tilted_interval(u, v).members


def in_tilted_richardson_plucker(
    M: ExactMatrix, u: Perm, v: Perm, open_flag: bool = False, check: bool = True
) -> bool:
    """Multi-Plücker route: Delta_w = 0 off the tilted interval; the open
    variety adds Delta_u Delta_v != 0.  Cross-checked against the rank
    route when check is on; disagreement is a hard failure.
    """
    n = M.n
    if len(u) != n or len(v) != n:
        raise ValueError("size mismatch")
    if not is_invertible(M):
        raise ValueError("matrix does not represent a flag (singular)")
    members = _interval_members(u, v)
    result = True
    for w in all_permutations(n):
        if w not in members and multi_plucker(M, w) != 0:
            result = False
            break
    if result and open_flag:
        result = multi_plucker(M, u) != 0 and multi_plucker(M, v) != 0
    if check:
        other = in_tilted_richardson(M, u, v, open_flag)
        if other != result:
            raise InternalConsistencyError(
                f"rank and Plücker membership disagree for u={u}, v={v}"
            )
    return result


def in_tilted_schubert_cell(
    M: ExactMatrix, w: Perm, a: Tilt, kind: str = "cell"
) -> bool:
    """Plücker-vanishing membership in X°_{w,a} (kind 'cell') or
    Ω°_{w,a} (kind 'opposite')."""
    n = M.n
    a = check_tilt(a, n)
    if multi_plucker(M, w) == 0:
        return False
    diagram = tilted_rothe_op(a, w) if kind == "cell" else tilted_rothe(a, w)
    for (i, k) in diagram:
        if plucker(M, w[: k - 1] + (i,)) != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# tilted Rothe diagrams and canonical cell matrices


def tilted_rothe(a: Tilt, w: Perm) -> frozenset[tuple[int, int]]:
    """D_a(w) = {(w_i, k) : i > k, w_i <_{a_k} w_k}; |D_a(w)| = l_a(w)."""
    n = len(w)
    a = check_tilt(a, n)
    return frozenset(
        (w[i - 1], k)
        for k in range(1, n + 1)
        for i in range(k + 1, n + 1)
        if shifted_less(n, a[k - 1], w[i - 1], w[k - 1])
    )


def tilted_rothe_op(a: Tilt, w: Perm) -> frozenset[tuple[int, int]]:
    """The complementary diagram: i > k with w_i >_{a_k} w_k."""
    n = len(w)
    a = check_tilt(a, n)
    return frozenset(
        (w[i - 1], k)
        for k in range(1, n + 1)
        for i in range(k + 1, n + 1)
        if shifted_less(n, a[k - 1], w[k - 1], w[i - 1])
    )


def canonical_cell_matrix(
    a: Tilt,
    w: Perm,
    kind: str = "cell",
    params: Optional[Mapping[tuple[int, int], Scalar]] = None,
    field: Optional[int] = None,
) -> ExactMatrix:
    """Canonical representative: 1 at (w_k, k), free entries exactly on the
    tilted Rothe diagram (or its opposite), 0 elsewhere."""
    n = len(w)
    diagram = tilted_rothe(a, w) if kind == "cell" else tilted_rothe_op(a, w)
    params = dict(params or {})
    if set(params) != set(diagram):
        raise ValueError(
            f"params must assign exactly the diagram cells {sorted(diagram)}"
        )
    rows = [[0] * n for _ in range(n)]
    for k, wk in enumerate(w, start=1):
        rows[wk - 1][k - 1] = 1
    for (i, k), val in params.items():
        rows[i - 1][k - 1] = val
    return make_matrix(rows, field)


# ---------------------------------------------------------------------------
# pinned matrices for the Deodhar parametrization


def _phi(n: int, i: int, block: Sequence[Sequence[Scalar]], field: Optional[int]) -> ExactMatrix:
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    for r in range(2):
        for c in range(2):
            rows[i - 1 + r][i - 1 + c] = block[r][c]
    return make_matrix(rows, field)


def y_matrix(n: int, i: int, p: Scalar, field: Optional[int] = None) -> ExactMatrix:
    return _phi(n, i, [[1, 0], [p, 1]], field)


def x_matrix(n: int, i: int, m: Scalar, field: Optional[int] = None) -> ExactMatrix:
    return _phi(n, i, [[1, m], [0, 1]], field)


def sdot_matrix(n: int, i: int, field: Optional[int] = None) -> ExactMatrix:
    """The signed permutation matrix with -1 above the diagonal."""
    return _phi(n, i, [[0, -1], [1, 0]], field)


def sdot_inverse_matrix(n: int, i: int, field: Optional[int] = None) -> ExactMatrix:
    return _phi(n, i, [[0, 1], [-1, 0]], field)


def deodhar_point(
    word_v: TiltedWord,
    sub: Subword,
    p_map: Mapping[int, Scalar],
    m_map: Optional[Mapping[int, Scalar]] = None,
    field: Optional[int] = None,
) -> ExactMatrix:
    """The product g_1 ... g_l: sdot at kept ascents, y_i(p_j) at dropped
    positions, x_i(m_j) sdot_i^{-1} at forced keeps; bars contribute the
    identity.  p_j must be nonzero."""
    n = word_v.n
    m_map = dict(m_map or {})
    if set(p_map) != set(sub.jcirc) or set(m_map) != set(sub.jminus):
        raise ValueError("parameter maps must cover J° and J- exactly")
    out = make_matrix([[1 if r == c else 0 for c in range(n)] for r in range(n)], field)
    for j, f in enumerate(word_v.factors, start=1):
        if f is BAR:
            continue
        if j in sub.jplus:
            g = sdot_matrix(n, f, field)
        elif j in sub.jcirc:
            p = p_map[j]
            if p == 0:
                raise ValueError(f"Deodhar parameter p_{j} must be nonzero")
            g = y_matrix(n, f, p, field)
        else:
            g = mat_mul(x_matrix(n, f, m_map[j], field), sdot_inverse_matrix(n, f, field))
        out = mat_mul(out, g)
    return out


# ---------------------------------------------------------------------------
# total nonnegativity


def tnn_signs(
    word_v: TiltedWord, positive_sub: Subword
) -> tuple[dict[int, int], list[tuple[int, ...]]]:
    """Signs for the positive parametrization, with the full sign-vector
    trace sign^(0), ..., sign^(l).

    Kept generators swap the two tracked entries; a bar flips the block
    (p, q] by (-1)^p for its flattening split p; dropped positions read
    off the parameter sign as the product of the two adjacent entries.
    """
    if positive_sub.jminus:
        raise ValueError("sign data is defined for the positive subword only")
    n = word_v.n
    if not is_regular(word_v):
        raise ValueError("sign data requires a regular word")
    seqs = tilt_sequence(word_v)
    prods = prefix_products(word_v)
    sign = [1] * n
    trace: list[tuple[int, ...]] = [tuple(sign)]
    out: dict[int, int] = {}
    for j, f in enumerate(word_v.factors, start=1):
        if f is BAR:
            aj = seqs[j]
            q = jump_min(aj)
            p = flattenable(aj, prods[j - 1])
            if p is None:
                raise InternalConsistencyError("invalid word reached tnn_signs")
            if p % 2:
                for t in range(p, q):
                    sign[t] = -sign[t]
        elif j in positive_sub.jplus:
            sign[f - 1], sign[f] = sign[f], sign[f - 1]
        else:
            out[j] = sign[f - 1] * sign[f]
        trace.append(tuple(sign))
    return out, trace


def is_tnn(M: ExactMatrix, a: Tilt) -> bool:
    """Whether all shifted-sorted Plücker coordinates share a sign in each
    degree k (rational matrices only)."""
    if M.field is not None:
        raise ValueError("total nonnegativity is a real/rational notion")
    n = M.n
    a = check_tilt(a, n)
    for k in range(1, n + 1):
        seen_pos = seen_neg = False
        for combo in itertools.combinations(range(1, n + 1), k):
            ordered = sort_shifted(n, a[k - 1], combo)
            val = plucker(M, ordered)
            if val > 0:
                seen_pos = True
            elif val < 0:
                seen_neg = True
            if seen_pos and seen_neg:
                return False
    return True


# ---------------------------------------------------------------------------
# F_q point counting


def count_total_flags(n: int, p: int) -> int:
    return sum(p ** length(w) for w in all_permutations(n))


def enumerate_flags_fq(n: int, p: int) -> Iterator[ExactMatrix]:
    """Every flag of Fl_n(F_p) exactly once, via the canonical classical
    Schubert-cell matrices (p^{l(w)} matrices per cell)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for w in all_permutations(n):
        winv = inverse(w)
        free = [
            (i, k)
            for k in range(1, n + 1)
            for i in range(1, w[k - 1])
            if winv[i - 1] > k
        ]
        base = [[0] * n for _ in range(n)]
        for k, wk in enumerate(w, start=1):
            base[wk - 1][k - 1] = 1
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [row[:] for row in base]
            for (i, k), val in zip(free, vals):
                rows[i - 1][k - 1] = val
            yield make_matrix(rows, p)


def count_points_fq(u: Perm, v: Perm, p: int) -> int:
    """#T°_{u,v}(F_p) by brute-force flag enumeration."""
    n = len(u)
    if n > max_count_n():
        raise GateError(
            f"n={n} exceeds the counting gate {max_count_n()}; "
            "set QBRUHAT_MAX_COUNT_N to override"
        )
    if len(v) != n:
        raise ValueError("size mismatch")
    a = witness_a(u, v)
    return sum(
        1
        for M in enumerate_flags_fq(n, p)
        if in_tilted_richardson(M, u, v, open_flag=True, a=a)
    )


# ---------------------------------------------------------------------------
# generic exact solving and interpolation


def solve_exact(
    A: Sequence[Sequence[Scalar]], b: Sequence[Scalar]
) -> Optional[list[Fraction]]:
    """Unique exact solution of a (possibly overdetermined) consistent
    system over Q; None if inconsistent; raises if underdetermined."""
    nr = len(A)
    nc = len(A[0]) if nr else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b[r])] for r, row in enumerate(A)]
    pivots: list[int] = []
    row = 0
    for col in range(nc):
        piv = next((r for r in range(row, nr) if aug[r][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        lead = aug[row][col]
        aug[row] = [x / lead for x in aug[row]]
        for r in range(nr):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, nr):
        if aug[r][nc] != 0:
            return None
    if len(pivots) < nc:
        raise ValueError("underdetermined system")
    sol = [Fraction(0)] * nc
    for r, col in enumerate(pivots):
        sol[col] = aug[r][nc]
    return sol


def interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (ascending) of the unique polynomial through the points."""
    k = len(points)
    A = [[Fraction(x) ** e for e in range(k)] for x, _ in points]
    sol = solve_exact(A, [y for _, y in points])
    if sol is None:
        raise ValueError("interpolation points are inconsistent")
    while sol and sol[-1] == 0:
        sol.pop()
    return sol


# ---------------------------------------------------------------------------
# matrix JSON


def matrix_to_json(M: ExactMatrix) -> str:
    return json.dumps([[str(x) for x in row] for row in M.rows])


def matrix_from_json(text: str, field: Optional[int] = None) -> ExactMatrix:
    data = json.loads(text)
    rows = [[Fraction(cell) for cell in row] for row in data]
    if field is not None:
        conv = []
        for row in rows:
            out_row = []
            for x in row:
                if x.denominator % field == 0:
                    raise ValueError(f"entry {x} has no image in F_{field}")
                out_row.append(x.numerator * pow(x.denominator, field - 2, field))
            conv.append(out_row)
        return make_matrix(conv, field)
    return make_matrix(rows, None)
