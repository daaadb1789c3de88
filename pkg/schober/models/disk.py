"""Decategorified perverse schobers on a disk.

GMV data (D; D_i, u_i, v_i) with local monodromies m_i = 1 - v_i u_i, KS quiver
data, linear spherical pairs and twist presentations. The Hurwitz action of
braid words on GMV data preserves the ordered product m_1 ... m_n.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from schober.core.arith import (
    Matrix, hstack, identity, is_invertible, mat_inverse, matmul, rank_one_factor, zeros,
)
from schober.errors import (
    IndexOutOfRangeError, NotDirectSumError, CrossMapSingularError, ShapeMismatchError,
    SingularMatrixError,
)
from schober.models.braid import BraidWord
from schober.models.reports import Report

logger = logging.getLogger(__name__)


def _shape(m: Matrix, rows: int, cols: int, what: str) -> None:
    if m.shape != (rows, cols):
        raise ShapeMismatchError(f'{what} is {m.rows}x{m.cols}, expected {rows}x{cols}',
                                 expected=[rows, cols], actual=[m.rows, m.cols])


# ===== Twist presentations =====

@dataclass(frozen=True)
class TwistPresentation:
    """Decategorified spherical functor D' -> D: u is D -> D', v is D' -> D"""
    u: Matrix
    v: Matrix

    def __post_init__(self):
        if self.u.rows != self.v.cols or self.u.cols != self.v.rows:
            raise ShapeMismatchError(
                f'u is {self.u.rows}x{self.u.cols} but v is {self.v.rows}x{self.v.cols}')

    @property
    def dim(self) -> int:
        return self.v.rows

    @property
    def local_dim(self) -> int:
        return self.u.rows

    def twist(self) -> Matrix:
        """1 - v u on D."""
        return identity(self.dim) - matmul(self.v, self.u)

    def cotwist(self) -> Matrix:
        return cotwist(self.u, self.v)


def cotwist(u: Matrix, v: Matrix) -> Matrix:
    """1 - u v on the source of the spherical functor; u (1 - v u) = (1 - u v) u."""
    if u.cols != v.rows or u.rows != v.cols:
        raise ShapeMismatchError(
            f'Cannot form 1 - uv from u {u.rows}x{u.cols} and v {v.rows}x{v.cols}')
    return identity(u.rows) - matmul(u, v)


def twist_presentation_for(m: Matrix) -> TwistPresentation:
    """A presentation with 1 - v u = m, through a rank factorization of 1 - m."""
    if m.rows != m.cols:
        raise ShapeMismatchError('Twist must be square')
    v, u = rank_one_factor(identity(m.rows) - m)
    return TwistPresentation(u=u, v=v)


# ===== GMV data =====

@dataclass(frozen=True)
class GMVPoint:
    local_dim: int
    u: Matrix
    v: Matrix

    def monodromy(self, ambient_dim: int) -> Matrix:
        return identity(ambient_dim) - matmul(self.v, self.u)


@dataclass(frozen=True)
class GMVData:
    ambient_dim: int
    points: Tuple[GMVPoint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(self.points))
        for k, p in enumerate(self.points, start=1):
            _shape(p.u, p.local_dim, self.ambient_dim, f'u_{k}')
            _shape(p.v, self.ambient_dim, p.local_dim, f'v_{k}')

    @classmethod
    def from_twists(cls, ambient_dim: int, twists: Sequence[TwistPresentation]) -> 'GMVData':
        return cls(ambient_dim, tuple(GMVPoint(t.local_dim, t.u, t.v) for t in twists))

    def __len__(self) -> int:
        return len(self.points)

    def monodromies(self) -> list:
        return [p.monodromy(self.ambient_dim) for p in self.points]

    def total_monodromy(self) -> Matrix:
        total = identity(self.ambient_dim)
        for m in self.monodromies():
            total = matmul(total, m)
        return total

    def with_point(self, point: GMVPoint) -> 'GMVData':
        return GMVData(self.ambient_dim, self.points + (point,))


def gmv_monodromies(d: GMVData) -> list:
    return d.monodromies()


def gmv_concat(d1: GMVData, d2: GMVData) -> GMVData:
    if d1.ambient_dim != d2.ambient_dim:
        raise ShapeMismatchError(
            f'Ambient dimensions differ: {d1.ambient_dim} and {d2.ambient_dim}')
    return GMVData(d1.ambient_dim, d1.points + d2.points)


def gmv_validate(d: GMVData) -> Report:
    """Every m_i must be invertible; reports m_i and m_1 ... m_n."""
    report = Report('gmv')
    monodromies = d.monodromies()
    for k, m in enumerate(monodromies, start=1):
        if not is_invertible(m):
            report.add_issue('Singular', f'm_{k} = 1 - v_{k} u_{k} is not invertible', point=k)
    report.data['perMonodromy'] = monodromies
    report.data['totalMonodromy'] = d.total_monodromy()
    return report


def _sigma(points: list, k: int, sign: int, ambient_dim: int) -> None:
    """Apply sigma_{k+1}^{sign} in place to 0-based positions k, k+1."""
    p, q = points[k], points[k + 1]
    if sign == 1:
        m_next = q.monodromy(ambient_dim)
        points[k] = q
        points[k + 1] = GMVPoint(p.local_dim, matmul(p.u, m_next),
                                 matmul(mat_inverse(m_next), p.v))
    else:
        m_this = p.monodromy(ambient_dim)
        points[k] = GMVPoint(q.local_dim, matmul(q.u, mat_inverse(m_this)),
                             matmul(m_this, q.v))
        points[k + 1] = p


def gmv_braid_act(d: GMVData, w: BraidWord) -> GMVData:
    """Hurwitz action; letters act left to right, generator indices run 1..n-1."""
    n = len(d.points)
    for i, _ in w.letters:
        if not 1 <= i <= n - 1:
            raise IndexOutOfRangeError(f'Generator s{i} does not act on {n} points',
                                       index=i, points=n)
    points = list(d.points)
    for i, s in w.letters:
        _sigma(points, i - 1, s, d.ambient_dim)
    return GMVData(d.ambient_dim, tuple(points))


# ===== KS quiver data =====

@dataclass(frozen=True)
class KSQuiverData:
    """u_pm: E_pm -> E_0 and v_pm: E_0 -> E_pm"""
    dim_minus: int
    dim_zero: int
    dim_plus: int
    u_minus: Matrix
    u_plus: Matrix
    v_minus: Matrix
    v_plus: Matrix

    def __post_init__(self):
        _shape(self.u_minus, self.dim_zero, self.dim_minus, 'u_-')
        _shape(self.u_plus, self.dim_zero, self.dim_plus, 'u_+')
        _shape(self.v_minus, self.dim_minus, self.dim_zero, 'v_-')
        _shape(self.v_plus, self.dim_plus, self.dim_zero, 'v_+')


def ks_validate(k: KSQuiverData) -> Report:
    """Splitting v_pm u_pm = 1 and invertible transitions v_+ u_-, v_- u_+."""
    report = Report('ks')
    if matmul(k.v_plus, k.u_plus) != identity(k.dim_plus):
        report.add_issue('SplitCondition', 'v_+ u_+ is not the identity')
    if matmul(k.v_minus, k.u_minus) != identity(k.dim_minus):
        report.add_issue('SplitCondition', 'v_- u_- is not the identity')
    t_pm = matmul(k.v_plus, k.u_minus)
    t_mp = matmul(k.v_minus, k.u_plus)
    report.data['transitions'] = {'t+-': t_pm, 't-+': t_mp}
    for name, t in (('v_+ u_-', t_pm), ('v_- u_+', t_mp)):
        if not is_invertible(t):
            report.add_issue('TransitionSingular', f'{name} is not invertible')
    mu_plus, mu_minus = matmul(t_pm, t_mp), matmul(t_mp, t_pm)
    report.data['monodromies'] = {'mu+': mu_plus, 'mu-': mu_minus}
    if report.valid:
        # t_+- conjugates mu_- into mu_+
        report.data['conjugacyWitness'] = t_pm
        report.check('mu+ = t+- mu- t+-^-1', mu_plus,
                     matmul(t_pm, mu_minus, mat_inverse(t_pm)))
    return report


# ===== Linear spherical pairs =====

@dataclass(frozen=True)
class LinearSphericalPair:
    """E_0 = Q_- + P_- = Q_+ + P_+, each subspace given by basis columns"""
    total_dim: int
    q_minus: Matrix
    p_minus: Matrix
    q_plus: Matrix
    p_plus: Matrix

    def __post_init__(self):
        for name in ('q_minus', 'p_minus', 'q_plus', 'p_plus'):
            m = getattr(self, name)
            if m.rows != self.total_dim:
                raise ShapeMismatchError(
                    f'{name} has {m.rows} rows, ambient dimension is {self.total_dim}')

    def decomposition(self, side: str) -> Tuple[Matrix, Matrix]:
        return (self.q_minus, self.p_minus) if side == '-' else (self.q_plus, self.p_plus)


def _is_direct_sum(q: Matrix, p: Matrix, total: int) -> bool:
    if q.cols + p.cols != total:
        return False
    return total == 0 or is_invertible(hstack([q, p], total))


def _coordinates(q: Matrix, p: Matrix, total: int) -> Matrix:
    """Inverse of [Q|P]: top rows give Q-coordinates, bottom rows P-coordinates."""
    if total == 0:
        return zeros(0, 0)
    return mat_inverse(hstack([q, p], total))


def _project(q: Matrix, p: Matrix, total: int, onto: str, source: Matrix) -> Matrix:
    """Coordinates of the Q- or P-component of the columns of ``source``."""
    coords = _coordinates(q, p, total)
    rows = range(0, q.cols) if onto == 'Q' else range(q.cols, q.cols + p.cols)
    if not rows or source.cols == 0:
        return zeros(len(rows), source.cols)
    return matmul(coords.extract(list(rows), list(range(coords.cols))), source)


def _cross_maps(pair: LinearSphericalPair) -> dict:
    n = pair.total_dim
    qm, pm, qp, pp = pair.q_minus, pair.p_minus, pair.q_plus, pair.p_plus
    return {
        'pi_Q+ i_Q-': _project(qp, pp, n, 'Q', qm),
        'pi_Q- i_Q+': _project(qm, pm, n, 'Q', qp),
        'pi_P+ i_P-': _project(qp, pp, n, 'P', pm),
        'pi_P- i_P+': _project(qm, pm, n, 'P', pp),
    }


def pair_validate(p: LinearSphericalPair) -> Report:
    report = Report('pair')
    for side, (q, pp) in (('-', p.decomposition('-')), ('+', p.decomposition('+'))):
        if not _is_direct_sum(q, pp, p.total_dim):
            report.add_issue(NotDirectSumError.code,
                             f'Q{side} and P{side} do not form a direct sum decomposition',
                             side=side)
    if report.issues:
        return report
    for name, m in _cross_maps(p).items():
        if not is_invertible(m):
            report.add_issue(CrossMapSingularError.code, f'{name} is not invertible', map=name)
    return report


def pair_half_monodromies(p: LinearSphericalPair) -> Tuple[Matrix, Matrix]:
    """(h_-+ : Q_- -> Q_+ along P_+, h_+- : Q_+ -> Q_- along P_-)."""
    pair_validate(p).raise_for_issues()
    n = p.total_dim
    h_mp = _project(p.q_plus, p.p_plus, n, 'Q', p.q_minus)
    h_pm = _project(p.q_minus, p.p_minus, n, 'Q', p.q_plus)
    return h_mp, h_pm


def pair_twist(p: LinearSphericalPair) -> Matrix:
    """Q_+ -> Q_- -> Q_+."""
    h_mp, h_pm = pair_half_monodromies(p)
    return matmul(h_mp, h_pm)


def pair_to_gmv(p: LinearSphericalPair) -> GMVData:
    """One-point datum on D = Q_+ with D_1 = P_-."""
    pair_validate(p).raise_for_issues()
    n = p.total_dim
    v1 = _project(p.q_plus, p.p_plus, n, 'Q', p.p_minus)
    u1 = _project(p.q_minus, p.p_minus, n, 'P', p.q_plus)
    return GMVData(p.q_plus.cols, (GMVPoint(p.p_minus.cols, u1, v1),))


def require_valid_gmv(d: GMVData) -> None:
    report = gmv_validate(d)
    if report.issues:
        raise SingularMatrixError(report.issues[0].message)
