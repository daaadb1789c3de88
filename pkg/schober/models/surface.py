"""Schobers on punctured surfaces at the level of lattices.

A SurfaceSchober is one reference shadow on a disk (GMV data), an outside
local system with a basepoint x on the disk boundary, and a boundary word in
the outside generators whose monodromy must equal m_1 ... m_n.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence, Tuple

from schober.core.arith import identity
from schober.errors import (
    BadLoopError, BoundaryMismatchError, GlobalRelationFailsError,
    HalfMonodromyMismatchError, MonodromyNotTwistError, SchoberError, ShapeMismatchError,
)
from schober.models.braid import BraidWord
from schober.models.disk import (
    GMVData, GMVPoint, LinearSphericalPair, TwistPresentation, gmv_braid_act, gmv_validate,
    pair_half_monodromies, pair_to_gmv,
)
from schober.models.local_system import (
    Generator, GroupoidPresentation, LatticeLocalSystem, Letter, Relation, Word,
    inverse_word, ls_monodromy, ls_validate, refinement_report,
)
from schober.models.reports import Report

logger = logging.getLogger(__name__)

__all__ = [
    'SurfaceSchober', 'Refinement', 'TwistPresentation', 'PairTypeSchober', 'PeriodicSchober',
    'surface_validate', 'extend_with_twist', 'extend_with_pair', 'restrict_full', 'restrict_coarse',
    'compactify_check', 'surface_to_skeleton', 'puncture_label',
]


def puncture_label(k: int) -> str:
    return f'gamma{k}'


@dataclass(frozen=True)
class Refinement:
    """A finer local system on the same surface.

    ``inclusion`` factors every generator of the coarse restriction (outside
    generators and the puncture loops gamma_k) as a word in the fine system.
    ``points`` are the integer positions of the disk points when they sit on
    a lattice, in disk order.
    """
    system: LatticeLocalSystem
    inclusion: Mapping[str, Word]
    points: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'inclusion', {k: tuple(w) for k, w in self.inclusion.items()})
        object.__setattr__(self, 'points', tuple(self.points))


@dataclass(frozen=True)
class SurfaceSchober:
    disk: GMVData
    outside: LatticeLocalSystem
    boundary_word: Word
    base: str
    refinement: Optional[Refinement] = None

    def __post_init__(self):
        object.__setattr__(self, 'boundary_word', tuple(self.boundary_word))
        if self.base not in self.outside.dims:
            raise ShapeMismatchError(f'Basepoint {self.base} is not in the outside system')
        if self.outside.dims[self.base] != self.disk.ambient_dim:
            raise ShapeMismatchError(
                f'Stalk at {self.base} has rank {self.outside.dims[self.base]}, '
                f'disk has {self.disk.ambient_dim}')
        if self.refinement is not None and self.refinement.points \
                and len(self.refinement.points) != len(self.disk):
            raise ShapeMismatchError(
                f'{len(self.refinement.points)} point positions for {len(self.disk)} disk points')


def _loop_issue(L: LatticeLocalSystem, w: Sequence[Letter], base: str) -> Optional[str]:
    labels = {g.label for g in L.presentation.generators}
    unknown = [label for label, _ in w if label not in labels]
    if unknown:
        return f'Unknown generators {unknown}'
    if not L.presentation.is_loop(w, base):
        return f'Word is not a closed loop at {base}'
    return None


def surface_validate(s: SurfaceSchober) -> Report:
    report = Report('surface')
    disk = gmv_validate(s.disk)
    report.extend(disk, 'disk: ')
    report.extend(ls_validate(s.outside), 'outside: ')
    problem = _loop_issue(s.outside, s.boundary_word, s.base)
    if problem:
        report.add_issue(BadLoopError.code, f'Boundary word: {problem}')
        return report
    try:
        boundary = ls_monodromy(s.outside, s.boundary_word, s.base)
    except SchoberError as error:
        report.add_error(error)
        return report
    report.check('boundary = m_1 ... m_n', boundary, disk.data['totalMonodromy'],
                 code=BoundaryMismatchError.code)
    if s.refinement is not None:
        report.extend(ls_validate(s.refinement.system), 'fine: ')
        try:
            refined = refinement_report(restrict_coarse(s), s.refinement.system,
                                        s.refinement.inclusion)
        except SchoberError as error:
            report.add_error(error)
            return report
        report.extend(refined, 'refinement: ')
    return report


def puncture_labels(s: SurfaceSchober) -> list:
    """Labels of the loops gamma_k in the restriction, clear of outside labels."""
    taken = {g.label for g in s.outside.presentation.generators}
    loops = []
    for k in range(1, len(s.disk.points) + 1):
        label = puncture_label(k)
        while label in taken:
            label = f'{label}_'
        loops.append(label)
    return loops


def restrict_coarse(s: SurfaceSchober) -> LatticeLocalSystem:
    """Glue the loops gamma_i -> m_i to the outside system along the boundary word."""
    pres = s.outside.presentation
    loops = puncture_labels(s)
    generators = pres.generators + tuple(Generator(l, s.base, s.base) for l in loops)
    mats = dict(s.outside.mats)
    mats.update(zip(loops, s.disk.monodromies()))
    relations = pres.relations
    gluing = tuple((l, 1) for l in loops) + inverse_word(s.boundary_word)
    if gluing:
        relations = relations + (Relation('boundary', gluing),)
    glued = GroupoidPresentation(pres.basepoints, generators, relations)
    return LatticeLocalSystem(glued, dict(s.outside.dims), mats)


def restrict_full(s: SurfaceSchober) -> LatticeLocalSystem:
    """The local system on the surface minus B; a refined schober gives its finer system."""
    if s.refinement is not None:
        return s.refinement.system
    return restrict_coarse(s)


def extend_with_twist(s: SurfaceSchober, loop_word: Sequence[Letter],
                      t: TwistPresentation) -> SurfaceSchober:
    """Fill in a puncture whose loop monodromy is presented as 1 - v u.

    The loop word is appended to the boundary word. The outside presentation
    keeps its loop generators, since the new boundary word is written in them.
    Any refinement of ``s`` is dropped.
    """
    loop_word = tuple(loop_word)
    problem = _loop_issue(s.outside, loop_word, s.base)
    if problem:
        raise BadLoopError(problem, word=list(loop_word))
    if t.dim != s.disk.ambient_dim:
        raise ShapeMismatchError(f'Twist acts on rank {t.dim}, stalk has {s.disk.ambient_dim}')
    monodromy = ls_monodromy(s.outside, loop_word, s.base)
    if monodromy != t.twist():
        raise MonodromyNotTwistError('Loop monodromy is not 1 - v u',
                                     monodromy=monodromy, twist=t.twist())
    logger.debug('Appending a rank %d point to a %d-point disk', t.local_dim, len(s.disk))
    return SurfaceSchober(s.disk.with_point(GMVPoint(t.local_dim, t.u, t.v)), s.outside,
                          s.boundary_word + loop_word, s.base)


def surface_to_skeleton(s: SurfaceSchober, w: BraidWord) -> SurfaceSchober:
    """The shadow for the skeleton moved by w; the boundary is unchanged."""
    return SurfaceSchober(gmv_braid_act(s.disk, w), s.outside, s.boundary_word, s.base)


# ===== Spherical-pair type =====

@dataclass(frozen=True)
class PairTypeSchober:
    """Outside system with basepoints x_-, x_+ and a pair whose half-monodromies match"""
    system: LatticeLocalSystem
    pair: LinearSphericalPair
    half_minus_plus: Word
    half_plus_minus: Word
    x_plus: str
    x_minus: str

    def induced(self) -> SurfaceSchober:
        """Plain schober through pair_to_gmv; the boundary loop is h_-+ h_+- at x_+."""
        return SurfaceSchober(pair_to_gmv(self.pair), self.system,
                              self.half_minus_plus + self.half_plus_minus, self.x_plus)


def extend_with_pair(L: LatticeLocalSystem, pair: LinearSphericalPair,
                     half_minus_plus: Sequence[Letter], half_plus_minus: Sequence[Letter],
                     x_plus: str, x_minus: str) -> PairTypeSchober:
    h_mp, h_pm = pair_half_monodromies(pair)
    pres = L.presentation
    for name, w, start, end, expected in (
            ('x_- -> x_+', tuple(half_minus_plus), x_minus, x_plus, h_mp),
            ('x_+ -> x_-', tuple(half_plus_minus), x_plus, x_minus, h_pm)):
        try:
            src, dst = pres.endpoints(w, start)
        except SchoberError as error:
            raise BadLoopError(f'Half loop {name}: {error.message}') from error
        if dst != end:
            raise BadLoopError(f'Half loop {name} ends at {dst}')
        actual = ls_monodromy(L, w, start)
        if actual != expected:
            raise HalfMonodromyMismatchError(f'Half loop {name} does not match the pair',
                                             expected=expected, actual=actual)
    return PairTypeSchober(L, pair, tuple(half_minus_plus), tuple(half_plus_minus),
                           x_plus, x_minus)


# ===== Periodic schobers on (C, iZ) =====

@dataclass(frozen=True)
class PeriodicSchober:
    """Point iw carries rule(w); truncate() keeps w in the window"""
    ambient_dim: int
    rule: Callable[[int], TwistPresentation]
    window: Tuple[int, int]

    def points(self) -> list:
        lo, hi = self.window
        return list(range(lo, hi + 1))

    def disk(self) -> GMVData:
        return GMVData.from_twists(self.ambient_dim, [self.rule(w) for w in self.points()])

    def truncate(self, base: str = 'x') -> SurfaceSchober:
        """Schober on C: the outside is an annulus with one boundary generator."""
        disk = self.disk()
        pres = GroupoidPresentation((base,), (Generator('boundary', base, base),), ())
        outside = LatticeLocalSystem(pres, {base: self.ambient_dim},
                                     {'boundary': disk.total_monodromy()})
        return SurfaceSchober(disk, outside, (('boundary', 1),), base)


# ===== Compactification =====

def compactify_check(L: LatticeLocalSystem,
                     punctures: Sequence[Tuple[Sequence[Letter], str, TwistPresentation]],
                     global_word: Sequence[Letter], base: Optional[str] = None) -> Report:
    """Each puncture loop must be a presented twist and the global relation must close."""
    report = Report('compactify')
    for k, (loop, at, t) in enumerate(punctures, start=1):
        problem = _loop_issue(L, loop, at)
        if problem:
            report.add_issue(BadLoopError.code, f'Puncture {k}: {problem}', puncture=k)
            continue
        try:
            monodromy = ls_monodromy(L, loop, at)
        except SchoberError as error:
            report.add_error(error)
            continue
        if t.dim != monodromy.rows:
            report.add_issue(MonodromyNotTwistError.code,
                             f'Puncture {k}: presentation acts on rank {t.dim}', puncture=k)
            continue
        report.check(f'puncture {k}: monodromy = 1 - v u', monodromy, t.twist(),
                     code=MonodromyNotTwistError.code)
    problem = _loop_issue(L, global_word, base) if global_word else None
    if problem:
        report.add_issue(GlobalRelationFailsError.code, f'Global word: {problem}')
        return report
    try:
        total = ls_monodromy(L, global_word, base) if global_word else None
    except SchoberError as error:
        report.add_issue(GlobalRelationFailsError.code, error.message)
        return report
    if total is not None:
        report.check('global relation', total, identity(total.rows),
                     code=GlobalRelationFailsError.code)
    return report
