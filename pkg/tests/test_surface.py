import pytest

from schober.core.arith import identity, mat_inverse, matmul
from schober.errors import (
    BadLoopError, HalfMonodromyMismatchError, MonodromyNotTwistError, ShapeMismatchError,
)
from schober.models.braid import BraidWord
from schober.models.disk import GMVData, TwistPresentation
from schober.models.git_flop import (
    build_git_pair, build_skms, flop_periodic, flop_spec, skms_compactification,
)
from schober.models.local_system import (
    Generator, GroupoidPresentation, LatticeLocalSystem, ls_conjugate, ls_monodromy,
    ls_restrict, ls_validate, word,
)
from schober.models.surface import (
    SurfaceSchober, compactify_check, extend_with_pair, extend_with_twist, restrict_full,
    surface_to_skeleton, surface_validate,
)
from tests.conftest import random_gmv, random_invertible, random_twist


def _annulus(d: GMVData, extra=None):
    """Outside system with a boundary loop carrying m_1 ... m_n and one free loop b"""
    gens = [Generator('a', 'x', 'x')]
    mats = {'a': d.total_monodromy()}
    if extra is not None:
        gens.append(Generator('b', 'x', 'x'))
        mats['b'] = extra
    pres = GroupoidPresentation(('x',), tuple(gens))
    return SurfaceSchober(d, LatticeLocalSystem(pres, {'x': d.ambient_dim}, mats), word('a'), 'x')


def test_validate_and_boundary_mismatch(rng):
    d = random_gmv(rng)
    s = _annulus(d)
    assert surface_validate(s).valid
    outside = LatticeLocalSystem(s.outside.presentation, dict(s.outside.dims),
                                 {'a': matmul(d.total_monodromy(), d.total_monodromy())})
    bad = SurfaceSchober(d, outside, s.boundary_word, 'x')
    report = surface_validate(bad)
    if d.total_monodromy() != identity(d.ambient_dim):
        assert 'BoundaryMismatch' in [i.code for i in report.issues]


def test_basepoint_rank_must_match(rng):
    d = random_gmv(rng)
    s = _annulus(d)
    with pytest.raises(ShapeMismatchError):
        SurfaceSchober(GMVData(d.ambient_dim + 1), s.outside, (), 'x')


def test_restrict_full_glues_boundary(rng):
    s = _annulus(random_gmv(rng))
    full = restrict_full(s)
    assert [g.label for g in full.presentation.generators][-3:] == ['gamma1', 'gamma2', 'gamma3']
    assert ls_validate(full).valid


def test_extension_round_trip(rng):
    for _ in range(50):
        d = random_gmv(rng, points=rng.randint(0, 2), max_dim=3)
        t = random_twist(rng, d.ambient_dim)
        s = _annulus(d, extra=t.twist())
        extended = extend_with_twist(s, word('b'), t)
        assert len(extended.disk) == len(d) + 1
        assert surface_validate(extended).valid
        assert extended.outside == s.outside
        assert extended.boundary_word == s.boundary_word + word('b')
        full = restrict_full(extended)
        assert ls_validate(full).valid
        assert full.mats[f'gamma{len(d) + 1}'] == ls_monodromy(s.outside, word('b'), 'x')
        original = restrict_full(s)
        kept = [g.label for g in original.presentation.generators]
        restricted = ls_restrict(full, kept)
        assert all(restricted.mats[label] == original.mats[label] for label in kept)


def test_extend_rejects_bad_input(rng):
    d = random_gmv(rng, points=1, max_dim=2)
    t = random_twist(rng, d.ambient_dim)
    s = _annulus(d, extra=t.twist())
    with pytest.raises(BadLoopError):
        extend_with_twist(s, word('zz'), t)
    wrong = TwistPresentation(u=t.u * 2, v=t.v)
    if wrong.twist() != t.twist():
        with pytest.raises(MonodromyNotTwistError):
            extend_with_twist(s, word('b'), wrong)
    with pytest.raises(ShapeMismatchError):
        extend_with_twist(s, word('b'), random_twist(rng, d.ambient_dim + 1))


def test_skeleton_change_keeps_boundary(rng):
    s = _annulus(random_gmv(rng))
    moved = surface_to_skeleton(s, BraidWord.of(1, -2))
    assert moved.boundary_word == s.boundary_word
    assert surface_validate(moved).valid


def test_pair_type_schober(conifold):
    system = build_skms(model=conifold).system
    pair = build_git_pair(flop_spec(1))
    schober = extend_with_pair(system, pair, word('f-+'), word('f+-'), 'x+', 'x-')
    assert surface_validate(schober.induced()).valid
    with pytest.raises(HalfMonodromyMismatchError):
        extend_with_pair(system, pair, word('l+', 'f-+'), word('f+-'), 'x+', 'x-')
    with pytest.raises(BadLoopError):
        extend_with_pair(system, pair, word('l+'), word('f+-'), 'x+', 'x-')


def test_truncated_periodic_schober(conifold):
    s = flop_periodic(conifold, (-2, 2)).truncate()
    assert len(s.disk) == 5
    assert surface_validate(s).valid


# ===== Compactification =====

def test_compactify_accepts_conifold(conifold):
    system, punctures, global_word, base = skms_compactification(conifold)
    report = compactify_check(system, punctures, global_word, base)
    assert report.valid
    assert len(report.checks) == 3


def test_compactify_rejects_single_entry_corruption(conifold):
    system, punctures, global_word, base = skms_compactification(conifold)
    for label, m in system.mats.items():
        for i in range(m.rows):
            for j in range(m.cols):
                corrupted = m.as_mutable()
                corrupted[i, j] += 1
                mats = dict(system.mats)
                mats[label] = corrupted.as_immutable()
                L = LatticeLocalSystem(system.presentation, dict(system.dims), mats)
                report = compactify_check(L, punctures, global_word, base)
                assert not report.valid, f'{label}[{i}, {j}] corruption was accepted'


def test_compactify_invariant_under_conjugation(rng, conifold):
    system, punctures, global_word, base = skms_compactification(conifold)
    witness = {x: random_invertible(rng, n) for x, n in system.dims.items()}
    conjugated = ls_conjugate(system, witness)
    moved = [(loop, at, TwistPresentation(u=matmul(t.u, mat_inverse(witness[at])),
                                          v=matmul(witness[at], t.v)))
             for loop, at, t in punctures]
    assert compactify_check(conjugated, moved, global_word, base).valid


def test_compactify_reports_bad_loops(conifold):
    system, punctures, global_word, base = skms_compactification(conifold)
    report = compactify_check(system, [(word('f-+'), 'x+', punctures[0][2])], word('f-+'), base)
    codes = [i.code for i in report.issues]
    assert codes == ['BadLoop', 'GlobalRelationFails']
