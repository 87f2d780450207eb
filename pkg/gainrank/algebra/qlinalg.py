import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from gainrank.algebra.quat import Quaternion, ZERO
from gainrank.exceptions import AdjointParityException
from gainrank.utils.consts import Tower, RankMethod, DEFAULT_TOLERANCE

logger = logging.getLogger(__name__)

GaussianRational = Tuple[Fraction, Fraction]
ComplexAdjoint = Union[List[List[GaussianRational]], np.ndarray]

_IntQuat = Tuple[int, int, int, int]
_INT_ZERO = (0, 0, 0, 0)


class QMatrix:
    """
    dense row-major quaternion matrix. immutable; elimination works on private copies
    """

    def __init__(self, entries: Sequence[Sequence[Quaternion]], cols: Optional[int] = None):
        self._entries: Tuple[Tuple[Quaternion, ...], ...] = tuple(tuple(row) for row in entries)
        self.rows = len(self._entries)
        self.cols = len(self._entries[0]) if self._entries else (cols or 0)
        if any(len(row) != self.cols for row in self._entries):
            raise ValueError('ragged quaternion matrix')

    @classmethod
    def zeros(cls, rows: int, cols: int) -> 'QMatrix':
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    @property
    def entries(self) -> Tuple[Tuple[Quaternion, ...], ...]:
        return self._entries

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def tower(self) -> Tower:
        for row in self._entries:
            for q in row:
                if q.tower == Tower.FLOAT:
                    return Tower.FLOAT
        return Tower.EXACT

    def __getitem__(self, index: Tuple[int, int]) -> Quaternion:
        i, j = index
        return self._entries[i][j]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def __repr__(self):
        return f'QMatrix({self.rows}x{self.cols})'

    def conjugate_transpose(self) -> 'QMatrix':
        return QMatrix([[self._entries[i][j].conj() for i in range(self.rows)] for j in range(self.cols)],
                       cols=self.rows)

    def is_hermitian(self, tol: float = 0.0) -> bool:
        if self.rows != self.cols:
            return False
        return all(self._entries[i][j].is_close(self._entries[j][i].conj(), tol)
                   for i in range(self.rows) for j in range(i, self.cols))

    def has_zero_diagonal(self) -> bool:
        return all(self._entries[i][i].is_zero() for i in range(min(self.rows, self.cols)))

    def delete(self, index: int) -> 'QMatrix':
        """
        removes row and column `index`
        """
        keep = [i for i in range(self.rows) if i != index]
        return QMatrix([[self._entries[i][j] for j in keep] for i in keep], cols=len(keep))

    def to_float(self) -> 'QMatrix':
        return QMatrix([[q.to_float() for q in row] for row in self._entries], cols=self.cols)


def block_diagonal(a: QMatrix, b: QMatrix) -> QMatrix:
    rows = [list(row) + [ZERO] * b.cols for row in a.entries]
    rows += [[ZERO] * a.cols + list(row) for row in b.entries]
    return QMatrix(rows, cols=a.cols + b.cols)


@dataclass
class RankReport:
    rank: int
    method: RankMethod
    tolerance: Optional[float] = None
    ranks: Dict[RankMethod, int] = field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        return len(set(self.ranks.values())) <= 1

    def to_dict(self) -> Dict:
        return {'rank': self.rank,
                'method': self.method.value,
                'tolerance': self.tolerance,
                'ranks': {k.value: v for k, v in self.ranks.items()},
                'agrees': self.agrees}


# integer quaternion helpers for the exact tower

def _imul(a: _IntQuat, b: _IntQuat) -> _IntQuat:
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0)


def _iconj(a: _IntQuat) -> _IntQuat:
    return a[0], -a[1], -a[2], -a[3]


def _inorm(a: _IntQuat) -> int:
    return a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]


def _primitive(row: List[tuple]) -> List[tuple]:
    content = 0
    for entry in row:
        for c in entry:
            content = gcd(content, c)
    if content <= 1:
        return row
    return [tuple(c // content for c in entry) for entry in row]


def _integer_rows(a: QMatrix) -> List[List[_IntQuat]]:
    # left-multiplying a row by a nonzero real keeps its left span
    rows = []
    for row in a.entries:
        scale = lcm(*(c.denominator for q in row for c in q.coefficients)) if row else 1
        rows.append([tuple(int(c * scale) for c in q.coefficients) for q in row])
    return rows


def _exact_left_rank(a: QMatrix) -> int:
    rows = _integer_rows(a)
    m, n = a.rows, a.cols
    pivot_row = 0
    for col in range(n):
        if pivot_row == m:
            break
        best, best_norm = None, 0
        for r in range(pivot_row, m):
            norm = _inorm(rows[r][col])
            if norm > best_norm:
                best, best_norm = r, norm
        if best is None:
            continue
        rows[pivot_row], rows[best] = rows[best], rows[pivot_row]
        pivot = rows[pivot_row]
        pivot_conj = _iconj(pivot[col])
        for r in range(pivot_row + 1, m):
            e = rows[r][col]
            if e == _INT_ZERO:
                continue
            # N(p) * row_r - (e * conj(p)) * row_p clears column col
            f = _imul(e, pivot_conj)
            target = rows[r]
            updated = target[:col]
            for c in range(col, n):
                t = target[c]
                s = _imul(f, pivot[c])
                updated.append((best_norm * t[0] - s[0], best_norm * t[1] - s[1],
                                best_norm * t[2] - s[2], best_norm * t[3] - s[3]))
            rows[r] = _primitive(updated)
        pivot_row += 1
    return pivot_row


def _float_left_rank(a: QMatrix, tol: float) -> int:
    rows = [list(row) for row in a.to_float().entries]
    m, n = a.rows, a.cols
    scale = max((sum(q.norm_sq() for q in row) for row in rows), default=0.0)
    threshold = tol * tol * scale
    pivot_row = 0
    for col in range(n):
        if pivot_row == m:
            break
        best, best_norm = None, threshold
        for r in range(pivot_row, m):
            norm = rows[r][col].norm_sq()
            if norm > best_norm:
                best, best_norm = r, norm
        if best is None:
            continue
        rows[pivot_row], rows[best] = rows[best], rows[pivot_row]
        pivot = rows[pivot_row]
        pivot_inverse = pivot[col].inverse()
        for r in range(pivot_row + 1, m):
            f = rows[r][col] * pivot_inverse
            rows[r] = rows[r][:col] + [rows[r][c] - f * pivot[c] for c in range(col, n)]
            rows[r][col] = Quaternion.approx(0.0)
        pivot_row += 1
    return pivot_row


def left_row_rank_eliminate(a: QMatrix, tol: float = DEFAULT_TOLERANCE) -> RankReport:
    """
    left row rank by forward elimination. every row operation left-multiplies a row
    by a scalar and adds it to another row.
    :param a:
    :param tol: relative zero threshold, float tower only
    :return:
    """
    if a.tower == Tower.EXACT:
        rank = _exact_left_rank(a)
        return RankReport(rank, RankMethod.ELIMINATION, ranks={RankMethod.ELIMINATION: rank})
    rank = _float_left_rank(a, tol)
    return RankReport(rank, RankMethod.ELIMINATION, tol, {RankMethod.ELIMINATION: rank})


def complex_adjoint(a: QMatrix) -> ComplexAdjoint:
    """
    [[A1, A2], [-conj(A2), conj(A1)]] for A = A1 + A2 j.
    exact tower: nested lists of (re, im) Fraction pairs; float tower: complex numpy array
    """
    m, n = a.rows, a.cols
    if a.tower == Tower.FLOAT:
        out = np.zeros((2 * m, 2 * n), dtype=complex)
        for i, row in enumerate(a.entries):
            for j, q in enumerate(row):
                z1 = complex(q.x0, q.x1)
                z2 = complex(q.x2, q.x3)
                out[i, j] = z1
                out[i, n + j] = z2
                out[m + i, j] = -z2.conjugate()
                out[m + i, n + j] = z1.conjugate()
        return out

    zero = (Fraction(0), Fraction(0))
    out = [[zero] * (2 * n) for _ in range(2 * m)]
    for i, row in enumerate(a.entries):
        for j, q in enumerate(row):
            out[i][j] = (q.x0, q.x1)
            out[i][n + j] = (q.x2, q.x3)
            out[m + i][j] = (-q.x2, q.x3)
            out[m + i][n + j] = (q.x0, -q.x1)
    return out


def _gaussian_rank(matrix: List[List[GaussianRational]]) -> int:
    rows = []
    for row in matrix:
        scale = lcm(*(c.denominator for z in row for c in z)) if row else 1
        rows.append([(int(z[0] * scale), int(z[1] * scale)) for z in row])
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivot_row = 0
    for col in range(n):
        if pivot_row == m:
            break
        best = next((r for r in range(pivot_row, m) if rows[r][col] != (0, 0)), None)
        if best is None:
            continue
        rows[pivot_row], rows[best] = rows[best], rows[pivot_row]
        pivot = rows[pivot_row]
        p_re, p_im = pivot[col]
        for r in range(pivot_row + 1, m):
            e_re, e_im = rows[r][col]
            if e_re == 0 and e_im == 0:
                continue
            target = rows[r]
            updated = target[:col]
            for c in range(col, n):
                t_re, t_im = target[c]
                s_re, s_im = pivot[c]
                # p * t - e * s
                updated.append((p_re * t_re - p_im * t_im - (e_re * s_re - e_im * s_im),
                                p_re * t_im + p_im * t_re - (e_re * s_im + e_im * s_re)))
            rows[r] = _primitive(updated)
        pivot_row += 1
    return pivot_row


def rank_via_adjoint(a: QMatrix, tol: float = DEFAULT_TOLERANCE) -> RankReport:
    """
    quaternion rank as half the complex rank of the adjoint
    """
    adjoint = complex_adjoint(a)
    if a.tower == Tower.EXACT:
        complex_rank = _gaussian_rank(adjoint)
        tolerance = None
    else:
        tolerance = tol
        if adjoint.size == 0:
            complex_rank = 0
        else:
            singular_values = np.linalg.svd(adjoint, compute_uv=False)
            complex_rank = int(np.sum(singular_values > tol * singular_values[0])) if singular_values[0] > 0 else 0

    if complex_rank % 2:
        raise AdjointParityException(f'complex adjoint rank {complex_rank} is odd for {a!r} (tol={tolerance})')

    rank = complex_rank // 2
    return RankReport(rank, RankMethod.ADJOINT, tolerance, {RankMethod.ADJOINT: rank})


def rank(a: QMatrix, method: RankMethod = RankMethod.ELIMINATION, tol: float = DEFAULT_TOLERANCE) -> RankReport:
    if method == RankMethod.ELIMINATION:
        return left_row_rank_eliminate(a, tol)
    if method == RankMethod.ADJOINT:
        return rank_via_adjoint(a, tol)

    elimination = left_row_rank_eliminate(a, tol)
    adjoint = rank_via_adjoint(a, tol)
    report = RankReport(elimination.rank, RankMethod.BOTH, elimination.tolerance,
                        {RankMethod.ELIMINATION: elimination.rank, RankMethod.ADJOINT: adjoint.rank})
    if not report.agrees:
        logger.warning(f'rank methods disagree on {a!r}: {report.ranks}')
    return report
