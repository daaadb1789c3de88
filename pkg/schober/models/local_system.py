"""Local systems of lattices presented by fundamental groupoids.

Words are read in composition order: the word (a, b, c) evaluates to
M_a M_b M_c, so c is traversed first and the source of the rightmost letter
is the starting basepoint. An inverse letter traverses its arrow backwards.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import networkx as nx

from schober.core.arith import Matrix, identity, is_invertible, mat_inverse, matmul
from schober.errors import (
    InputFormatError, MissingFactorizationError, NotComposableError, ShapeMismatchError,
    SingularGeneratorError, TruncationBoundaryError, RelationViolatedError,
)
from schober.models.reports import Report

logger = logging.getLogger(__name__)

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]


def word(*letters) -> Word:
    """word('a', ('b', -1)) -> (('a', 1), ('b', -1))."""
    out = []
    for letter in letters:
        if isinstance(letter, str):
            out.append((letter, 1))
        else:
            label, sign = letter
            if sign not in (1, -1):
                raise InputFormatError(f'Bad sign {sign!r} for {label}')
            out.append((str(label), int(sign)))
    return tuple(out)


def inverse_word(w: Sequence[Letter]) -> Word:
    return tuple((g, -s) for g, s in reversed(w))


# ===== Presentations =====

@dataclass(frozen=True)
class Generator:
    label: str
    src: str
    dst: str


@dataclass(frozen=True)
class Relation:
    label: str
    word: Word


@dataclass(frozen=True)
class GroupoidPresentation:
    basepoints: Tuple[str, ...] = ()
    generators: Tuple[Generator, ...] = ()
    relations: Tuple[Relation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'basepoints', tuple(self.basepoints))
        object.__setattr__(self, 'generators', tuple(self.generators))
        object.__setattr__(self, 'relations', tuple(self.relations))
        points = set(self.basepoints)
        if len(points) != len(self.basepoints):
            raise InputFormatError('Duplicate basepoint labels')
        labels = [g.label for g in self.generators]
        if len(set(labels)) != len(labels):
            raise InputFormatError('Duplicate generator labels')
        for g in self.generators:
            if g.src not in points or g.dst not in points:
                raise InputFormatError(f'Generator {g.label} joins unknown basepoints')
        for r in self.relations:
            for label, _ in r.word:
                if label not in labels:
                    raise InputFormatError(f'Relation {r.label} uses unknown generator {label}')

    def generator(self, label: str) -> Generator:
        for g in self.generators:
            if g.label == label:
                return g
        raise InputFormatError(f'Unknown generator {label}')

    def endpoints(self, w: Sequence[Letter], base: Optional[str] = None) -> Tuple[str, str]:
        """(start, end) of a composable word; ``base`` pins the start."""
        if not w:
            if base is None:
                raise NotComposableError('Empty word needs a basepoint')
            return base, base
        current = None
        for label, sign in reversed(w):
            g = self.generator(label)
            src, dst = (g.src, g.dst) if sign == 1 else (g.dst, g.src)
            if current is None:
                start = src
                if base is not None and src != base:
                    raise NotComposableError(f'Word starts at {src}, not at {base}', word=list(w))
            elif src != current:
                raise NotComposableError(
                    f'{label} starts at {src} but the path so far ends at {current}', word=list(w))
            current = dst
        return start, current

    def is_loop(self, w: Sequence[Letter], base: Optional[str] = None) -> bool:
        try:
            start, end = self.endpoints(w, base)
        except NotComposableError:
            return False
        return start == end

    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.basepoints)
        for gen in self.generators:
            g.add_edge(gen.src, gen.dst, key=gen.label)
        return g

    def is_connected(self) -> bool:
        if len(self.basepoints) <= 1:
            return True
        return nx.is_weakly_connected(self.graph())


# ===== Local systems =====

@dataclass(frozen=True)
class LatticeLocalSystem:
    presentation: GroupoidPresentation
    dims: Dict[str, int] = field(default_factory=dict)
    mats: Dict[str, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        pres = self.presentation
        if set(self.dims) != set(pres.basepoints):
            raise ShapeMismatchError('Dimensions must be given for exactly the basepoints')
        if set(self.mats) != {g.label for g in pres.generators}:
            raise ShapeMismatchError('Matrices must be given for exactly the generators')
        for g in pres.generators:
            m = self.mats[g.label]
            expected = (self.dims[g.dst], self.dims[g.src])
            if m.shape != expected:
                raise ShapeMismatchError(
                    f'{g.label}: {g.src} -> {g.dst} needs a {expected[0]}x{expected[1]} matrix',
                    generator=g.label, actual=list(m.shape))

    def matrix(self, letter: Letter) -> Matrix:
        label, sign = letter
        m = self.mats[label]
        return m if sign == 1 else mat_inverse(m)


def ls_monodromy(L: LatticeLocalSystem, w: Sequence[Letter], base: Optional[str] = None) -> Matrix:
    """Ordered product of generator matrices (inverses for inverse letters)."""
    start, _ = L.presentation.endpoints(w, base)
    result = None
    for letter in w:
        m = L.matrix(letter)
        result = m if result is None else matmul(result, m)
    return identity(L.dims[start]) if result is None else result


def ls_validate(L: LatticeLocalSystem) -> Report:
    report = Report('local-system')
    singular = set()
    for g in L.presentation.generators:
        if not is_invertible(L.mats[g.label]):
            singular.add(g.label)
            report.add_issue(SingularGeneratorError.code,
                             f'Generator {g.label} is not invertible', generator=g.label)
    for r in L.presentation.relations:
        if not L.presentation.is_loop(r.word):
            report.add_issue(NotComposableError.code,
                             f'Relation {r.label} is not a composable loop', relation=r.label)
            continue
        if singular & {label for label, s in r.word if s == -1}:
            continue
        value = ls_monodromy(L, r.word)
        report.check(r.label, value, identity(value.rows), code=RelationViolatedError.code)
    return report


def ls_check_iso(L1: LatticeLocalSystem, L2: LatticeLocalSystem,
                 witness: Mapping[str, Matrix]) -> bool:
    """Witness W_x: L1_x -> L2_x must be invertible with W_dst M1 = M2 W_src."""
    if L1.presentation != L2.presentation or L1.dims != L2.dims:
        raise ShapeMismatchError('Local systems are not on the same presentation')
    for x in L1.presentation.basepoints:
        w = witness.get(x)
        if w is None or w.shape != (L1.dims[x], L1.dims[x]):
            raise ShapeMismatchError(f'Witness at {x} has the wrong shape')
        if not is_invertible(w):
            return False
    for g in L1.presentation.generators:
        if matmul(witness[g.dst], L1.mats[g.label]) != matmul(L2.mats[g.label], witness[g.src]):
            logger.info('Witness does not intertwine %s', g.label)
            return False
    return True


def ls_check_strong_iso(L1: LatticeLocalSystem, L2: LatticeLocalSystem) -> bool:
    return ls_check_iso(L1, L2, {x: identity(n) for x, n in L1.dims.items()})


def ls_conjugate(L: LatticeLocalSystem, witness: Mapping[str, Matrix]) -> LatticeLocalSystem:
    """The system W_dst M W_src^-1, isomorphic to L through ``witness``."""
    mats = {g.label: matmul(witness[g.dst], L.mats[g.label], mat_inverse(witness[g.src]))
            for g in L.presentation.generators}
    return LatticeLocalSystem(L.presentation, dict(L.dims), mats)


def ls_restrict(L: LatticeLocalSystem, generators: Iterable[str]) -> LatticeLocalSystem:
    """Sub-system on the given generators, keeping relations that only use them."""
    keep = set(generators)
    pres = L.presentation
    gens = tuple(g for g in pres.generators if g.label in keep)
    rels = tuple(r for r in pres.relations if {label for label, _ in r.word} <= keep)
    sub = GroupoidPresentation(pres.basepoints, gens, rels)
    return LatticeLocalSystem(sub, dict(L.dims), {g.label: L.mats[g.label] for g in gens})


# ===== Refinement =====

def refinement_report(coarse: LatticeLocalSystem, fine: LatticeLocalSystem,
                      inclusion: Mapping[str, Sequence[Letter]],
                      names: Optional[Mapping[str, str]] = None) -> Report:
    """One check per coarse generator: its matrix against its fine factorization."""
    missing = set(coarse.dims) - set(fine.dims)
    if missing:
        raise ShapeMismatchError(f'Basepoints {sorted(missing)} are missing from the refinement')
    names = names or {}
    report = Report('refinement')
    for g in coarse.presentation.generators:
        if g.label not in inclusion:
            raise MissingFactorizationError(f'No factorization given for {g.label}',
                                            generator=g.label)
        factor = tuple(inclusion[g.label])
        _, end = fine.presentation.endpoints(factor, g.src)
        if end != g.dst:
            raise NotComposableError(f'Factorization of {g.label} ends at {end}, not {g.dst}')
        report.check(names.get(g.label, g.label), coarse.mats[g.label],
                     ls_monodromy(fine, factor, g.src), code=RelationViolatedError.code)
    return report


def refinement_mismatches(coarse: LatticeLocalSystem, fine: LatticeLocalSystem,
                          inclusion: Mapping[str, Sequence[Letter]]) -> list:
    """Coarse generators whose matrix differs from their fine factorization."""
    report = refinement_report(coarse, fine, inclusion)
    return [c.name for c in report.checks if not c.passed]


def ls_check_refinement(coarse: LatticeLocalSystem, fine: LatticeLocalSystem,
                        inclusion: Mapping[str, Sequence[Letter]]) -> bool:
    return refinement_report(coarse, fine, inclusion).valid


def ls_rename_basepoints(L: LatticeLocalSystem, names: Mapping[str, str]) -> LatticeLocalSystem:
    """The same system with basepoints renamed through ``names``."""
    def rename(x: str) -> str:
        return names.get(x, x)

    pres = L.presentation
    gens = tuple(Generator(g.label, rename(g.src), rename(g.dst)) for g in pres.generators)
    renamed = GroupoidPresentation(tuple(rename(x) for x in pres.basepoints), gens, pres.relations)
    return LatticeLocalSystem(renamed, {rename(x): n for x, n in L.dims.items()}, dict(L.mats))


# ===== Covers and pullback =====

def sheet_label(name: str, sheet: int) -> str:
    return f'{name}@{sheet}'


@dataclass(frozen=True)
class Lift:
    generator: str
    sheet: int
    target_sheet: int


@dataclass(frozen=True)
class CoveringSpec:
    """Lifts of each base generator: (generator, sheet) starts at src@sheet, ends at dst@target"""
    base: GroupoidPresentation
    sheets: Tuple[int, ...]
    lifts: Tuple[Lift, ...]

    def __post_init__(self):
        object.__setattr__(self, 'sheets', tuple(self.sheets))
        object.__setattr__(self, 'lifts', tuple(self.lifts))
        seen, targets = set(), {}
        for lift in self.lifts:
            key = (lift.generator, lift.sheet)
            if key in seen:
                raise InputFormatError(f'Two lifts of {lift.generator} at sheet {lift.sheet}')
            seen.add(key)
            hit = (lift.generator, lift.target_sheet)
            if hit in targets:
                raise InputFormatError(f'Lifts of {lift.generator} are not a permutation')
            targets[hit] = lift.sheet

    def lift_of(self, generator: str, sheet: int) -> Optional[Lift]:
        for lift in self.lifts:
            if lift.generator == generator and lift.sheet == sheet:
                return lift
        return None

    def lift_into(self, generator: str, target_sheet: int) -> Optional[Lift]:
        for lift in self.lifts:
            if lift.generator == generator and lift.target_sheet == target_sheet:
                return lift
        return None


def cyclic_cover(base: GroupoidPresentation, sheets: Sequence[int],
                 shifts: Mapping[str, int]) -> CoveringSpec:
    """Z-cover truncated to ``sheets``: a generator moves from sheet k to k + shift."""
    lifts = tuple(Lift(g.label, k, k + shifts.get(g.label, 0))
                  for g in base.generators for k in sheets)
    return CoveringSpec(base, tuple(sheets), lifts)


@dataclass(frozen=True)
class Pullback:
    system: LatticeLocalSystem
    boundary: Tuple[Lift, ...] = ()
    dropped_relations: Tuple[str, ...] = ()


def _lift_word(c: CoveringSpec, w: Word, start_sheet: int):
    """Lift a word starting at sheet ``start_sheet``; None when it leaves the window."""
    sheets = set(c.sheets)
    lifted = []
    sheet = start_sheet
    for label, sign in reversed(w):
        if sign == 1:
            lift = c.lift_of(label, sheet)
            if lift is None or lift.target_sheet not in sheets:
                return None
            lifted.append((sheet_label(label, lift.sheet), 1))
            sheet = lift.target_sheet
        else:
            lift = c.lift_into(label, sheet)
            if lift is None or lift.sheet not in sheets:
                return None
            lifted.append((sheet_label(label, lift.sheet), -1))
            sheet = lift.sheet
    return tuple(reversed(lifted)), sheet


def ls_pullback(L: LatticeLocalSystem, c: CoveringSpec, strict: bool = False) -> Pullback:
    """Copy generator matrices along lifts; lifts leaving the window form the boundary."""
    if c.base != L.presentation:
        raise ShapeMismatchError('Covering is not over the presentation of the local system')
    sheets = set(c.sheets)
    basepoints = tuple(sheet_label(x, k) for x in L.presentation.basepoints for k in c.sheets)
    generators, mats, boundary = [], {}, []
    for lift in c.lifts:
        if lift.sheet not in sheets:
            continue
        if lift.target_sheet not in sheets:
            boundary.append(lift)
            continue
        g = L.presentation.generator(lift.generator)
        label = sheet_label(g.label, lift.sheet)
        generators.append(Generator(label, sheet_label(g.src, lift.sheet),
                                    sheet_label(g.dst, lift.target_sheet)))
        mats[label] = L.mats[g.label]
    if boundary and strict:
        raise TruncationBoundaryError(
            f'{len(boundary)} lifts leave the sheet window',
            lifts=[sheet_label(b.generator, b.sheet) for b in boundary])

    relations, dropped = [], []
    for r in L.presentation.relations:
        for k in c.sheets:
            label = sheet_label(r.label, k)
            lifted = _lift_word(c, r.word, k)
            if lifted is None or lifted[1] != k:
                dropped.append(label)
                continue
            relations.append(Relation(label, lifted[0]))
    if dropped:
        logger.debug('Relations not lifted inside the window: %s', ', '.join(dropped))
    pres = GroupoidPresentation(basepoints, tuple(generators), tuple(relations))
    dims = {sheet_label(x, k): L.dims[x] for x in L.presentation.basepoints for k in c.sheets}
    return Pullback(LatticeLocalSystem(pres, dims, mats), tuple(boundary), tuple(dropped))
