"""K-theoretic instances: toric GIT wall crossings and the standard flop.

Classes on the GIT quotients are integer Laurent polynomials in the character
t. K(X_-) is Z[t, 1/t] modulo koszul_minus = prod(1 - t^a_i) and K(X_+) is
Z[t, 1/t] modulo koszul_plus = prod(1 - t^-b_j). Both have span eta, so any
eta consecutive exponents W_s = [s, s + eta - 1] give a basis of either side.
The reference bases are W_w on X_+ and W_{w+1} on X_-.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

from schober.core.arith import (
    Matrix, identity, mat, mat_det, mat_inverse, mat_rank, matmul,
)
from schober.core.laurent import (
    LaurentPoly, Window, laurent_reduce, one_minus_t_power, product_of, reduction_matrix,
)
from schober.errors import (
    CrossMapSingularError, InputFormatError, NotCalabiYauError, RelationViolatedError,
    ShapeMismatchError, TruncationBoundaryError, UnsupportedError,
)
from schober.models.disk import (
    LinearSphericalPair, TwistPresentation, pair_half_monodromies, pair_twist, pair_validate,
    twist_presentation_for,
)
from schober.models.local_system import (
    Generator, GroupoidPresentation, LatticeLocalSystem, Pullback, Relation, Word,
    cyclic_cover, inverse_word, ls_pullback, ls_rename_basepoints, ls_restrict,
    refinement_report, sheet_label,
)
from schober.models.reports import Report
from schober.models.surface import (
    PeriodicSchober, Refinement, SurfaceSchober, puncture_label, puncture_labels, restrict_coarse,
)

logger = logging.getLogger(__name__)


# ===== Wall crossings =====

@dataclass(frozen=True)
class WallCrossingSpec:
    """Weights a_i on U_+, b_j on U_-, window offset w"""
    a: Tuple[int, ...]
    b: Tuple[int, ...]
    w: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'a', tuple(self.a))
        object.__setattr__(self, 'b', tuple(self.b))
        for weight in self.a + self.b:
            if isinstance(weight, bool) or not isinstance(weight, int) or weight <= 0:
                raise InputFormatError(f'Weights must be positive integers, got {weight!r}')
        if not self.a or not self.b:
            raise InputFormatError('Both weight lists must be non-empty')

    def is_calabi_yau(self) -> bool:
        return sum(self.a) == sum(self.b)

    def at(self, w: int) -> 'WallCrossingSpec':
        return WallCrossingSpec(self.a, self.b, w)

    def __str__(self) -> str:
        return f"a={','.join(map(str, self.a))} b={','.join(map(str, self.b))} w={self.w}"


def _require_cy(spec: WallCrossingSpec) -> None:
    if not spec.is_calabi_yau():
        raise NotCalabiYauError(f'Weight sums differ: {sum(spec.a)} != {sum(spec.b)}',
                                a=list(spec.a), b=list(spec.b))


def koszul_polynomials(spec: WallCrossingSpec) -> Tuple[LaurentPoly, LaurentPoly]:
    """(prod(1 - t^a_i), prod(1 - t^-b_j))."""
    minus = product_of(one_minus_t_power(a) for a in spec.a)
    plus = product_of(one_minus_t_power(-b) for b in spec.b)
    return minus, plus


@dataclass(frozen=True)
class KPresentation:
    spec: WallCrossingSpec
    eta: int
    koszul_minus: LaurentPoly
    koszul_plus: LaurentPoly

    def window(self, s: int) -> Window:
        return s, s + self.eta - 1

    @property
    def basis_plus(self) -> Window:
        return self.window(self.spec.w)

    @property
    def basis_minus(self) -> Window:
        return self.window(self.spec.w + 1)

    @property
    def closed_window(self) -> Window:
        return self.spec.w, self.spec.w + self.eta

    def res_plus(self, s: int) -> Matrix:
        """Restriction to X_+ of the window W_s, in the X_+ reference basis."""
        return reduction_matrix(self.koszul_plus, self.window(s), self.basis_plus)

    def res_minus(self, s: int) -> Matrix:
        """Restriction to X_- of the window W_s, in the X_- reference basis."""
        return reduction_matrix(self.koszul_minus, self.window(s), self.basis_minus)

    def window_restriction(self, s: int) -> Matrix:
        """X_- -> X_+ through the window W_s: res_+ o res_-^-1."""
        return matmul(self.res_plus(s), mat_inverse(self.res_minus(s)))

    def phi(self, k: int) -> Matrix:
        """Phi^k : X_- -> X_+."""
        return self.window_restriction(k + 1)

    def phi_inverse_side(self, k: int) -> Matrix:
        """Phi^k : X_+ -> X_-."""
        return mat_inverse(self.window_restriction(k - 1))

    def class_plus(self, p: LaurentPoly) -> Matrix:
        lo, hi = self.basis_plus
        return mat([[c] for c in laurent_reduce(p, self.koszul_plus, self.basis_plus)
                    .coefficient_vector(lo, hi)], ncols=1)


def build_windows(spec: WallCrossingSpec) -> KPresentation:
    _require_cy(spec)
    minus, plus = koszul_polynomials(spec)
    logger.debug('Building windows for %s (eta=%d)', spec, sum(spec.a))
    return KPresentation(spec=spec, eta=sum(spec.a), koszul_minus=minus, koszul_plus=plus)


def build_git_pair(spec: WallCrossingSpec) -> LinearSphericalPair:
    """Pair on the closed window [w, w + eta] with P_- at weight w and P_+ at weight w + eta."""
    k = build_windows(spec)
    lo, hi = k.closed_window
    p_minus = k.koszul_minus.shift(spec.w).coefficient_vector(lo, hi)
    p_plus = k.koszul_plus.shift(spec.w + k.eta).coefficient_vector(lo, hi)
    e = identity(k.eta + 1)
    pair = LinearSphericalPair(
        total_dim=k.eta + 1,
        q_minus=e[:, 1:],
        p_minus=mat([[c] for c in p_minus], ncols=1),
        q_plus=e[:, :k.eta],
        p_plus=mat([[c] for c in p_plus], ncols=1),
    )
    report = pair_validate(pair)
    if report.issues:
        raise CrossMapSingularError(f'Window pair for {spec} is not spherical',
                                    issues=[i.message for i in report.issues])
    logger.debug('Built window pair for %s', spec)
    return pair


def twist_vs_phi(spec: WallCrossingSpec) -> Report:
    """Twist of the window pair against Phi^w o Phi^{w+1}."""
    report = Report(f'twist-vs-phi {spec}')
    k = build_windows(spec)
    report.check('eta+ = eta-', mat([[k.koszul_plus.span()]]), mat([[k.koszul_minus.span()]]))
    phi_w = k.phi(spec.w)
    report.check('det Phi^w = +-1', mat([[abs(mat_det(phi_w))]]), mat([[1]]))
    twist = pair_twist(build_git_pair(spec))
    composite = matmul(phi_w, k.phi_inverse_side(spec.w + 1))
    report.check('T^w = Phi^w Phi^(w+1)', twist, composite)
    report.data['phi'] = phi_w
    report.data['twist'] = twist
    return report


# ===== Standard flop =====

def chi_pn(n: int, d: int) -> int:
    """Euler characteristic of O(d) on P^n: C(d + n, n) as a polynomial in d."""
    if n < 0:
        raise UnsupportedError('chi_pn needs n >= 0')
    return math.prod(d + k for k in range(1, n + 1)) // math.factorial(n)


def euler_pairing_flop(n: int, i: int, j: int) -> int:
    """chi(O_E(i), O_E(j)) in Tot(O(-1)^(n+1)) through the Koszul resolution."""
    if n < 1:
        raise UnsupportedError('euler_pairing_flop needs n >= 1')
    return sum((-1) ** k * math.comb(n + 1, k) * chi_pn(n, j - i + k) for k in range(n + 2))


def flop_spec(n: int) -> WallCrossingSpec:
    return WallCrossingSpec((1,) * (n + 1), (1,) * (n + 1), -1)


@dataclass(frozen=True)
class FlopModel:
    """Bases are [O(k)] for k in W_-1 on X_+ and k in W_0 on X_-"""
    n: int
    windows: KPresentation
    f_minus_plus: Matrix
    f_plus_minus: Matrix
    l_plus: Matrix
    l_minus: Matrix

    @property
    def rank(self) -> int:
        return self.n + 1

    def basis_plus(self) -> list:
        lo, hi = self.windows.basis_plus
        return [f'[O({k})]' for k in range(lo, hi + 1)]

    def basis_minus(self) -> list:
        lo, hi = self.windows.basis_minus
        return [f'[O({k})]' for k in range(lo, hi + 1)]

    def supported_basis(self) -> list:
        return [f'[O_E({k})]' for k in range(0, self.n + 1)]


def build_flop_model(n: int) -> FlopModel:
    """Flop functors from the window pair, line bundle twists from the Koszul relation."""
    if n < 1:
        raise UnsupportedError('Flop models need n >= 1')
    k = build_windows(flop_spec(n))
    f_mp, f_pm = pair_half_monodromies(build_git_pair(k.spec))
    lo_p, hi_p = k.basis_plus
    lo_m, hi_m = k.basis_minus
    # O(1) shifts t-exponents by +1 on X_+ and by -1 on X_-
    l_plus = reduction_matrix(k.koszul_plus, (lo_p + 1, hi_p + 1), k.basis_plus)
    l_minus = reduction_matrix(k.koszul_minus, (lo_m - 1, hi_m - 1), k.basis_minus)
    logger.debug('Built flop model for n=%d', n)
    return FlopModel(n=n, windows=k, f_minus_plus=f_mp, f_plus_minus=f_pm,
                     l_plus=l_plus, l_minus=l_minus)


def flop_twist_presentation(model: FlopModel, w: int) -> TwistPresentation:
    """v_w = [O_E(w)], u_w = Euler pairing row against the basis of X_+."""
    v = model.windows.class_plus(LaurentPoly.monomial(w))
    lo, hi = model.windows.basis_plus
    u = mat([[euler_pairing_flop(model.n, w, k) for k in range(lo, hi + 1)]])
    return TwistPresentation(u=u, v=v)


def flop_twist(model: FlopModel, w: int) -> Matrix:
    """T^w = 1 - v_w u_w."""
    return flop_twist_presentation(model, w).twist()


def infinity_word() -> Word:
    """F_+-^-1 o L_- o F_-+^-1 o L_+, a loop at x_+."""
    return (('f+-', -1), ('l-', 1), ('f-+', -1), ('l+', 1))


def verify_relations(model: FlopModel) -> Report:
    report = Report(f'flop n={model.n}')
    if model.n != 1:
        raise UnsupportedError('The relation suite is asserted for n = 1 only', n=model.n)
    f_mp, f_pm, l_p, l_m = model.f_minus_plus, model.f_plus_minus, model.l_plus, model.l_minus
    code = RelationViolatedError.code
    twist = flop_twist(model, -1)
    report.check('R1: FF = T^-1', matmul(f_mp, f_pm), mat_inverse(twist), code=code)
    report.check('R2: F+-^-1 = L+^-1 F-+ L-^-1', mat_inverse(f_pm),
                 matmul(mat_inverse(l_p), f_mp, mat_inverse(l_m)), code=code)
    report.check('R3: F+-^-1 L- F-+^-1 L+ = Id',
                 matmul(mat_inverse(f_pm), l_m, mat_inverse(f_mp), l_p),
                 identity(model.rank), code=code)
    for name, m in (('R4: rank(L+ - Id) = 1', l_p), ('R4: rank(L- - Id) = 1', l_m)):
        report.check(name, mat([[mat_rank(m - identity(model.rank))]]), mat([[1]]), code=code)
    return report


# ===== (C, iZ) schober =====

def flop_periodic(model: FlopModel, window: Tuple[int, int]) -> PeriodicSchober:
    return PeriodicSchober(model.rank, lambda w: flop_twist_presentation(model, w), window)


def crossing_label(s: int) -> str:
    """The arrow x- -> x+ through the gap between i(s - 1) and is, restricting through W_s."""
    return f'W{s}'


def half_monodromy_system(model: FlopModel, window: Tuple[int, int]) -> LatticeLocalSystem:
    """x+ right of iZ, x- left of it, one window restriction through every gap."""
    lo, hi = window
    gaps = range(lo, hi + 2)
    pres = GroupoidPresentation(
        basepoints=('x+', 'x-'),
        generators=tuple(Generator(crossing_label(s), 'x-', 'x+') for s in gaps),
    )
    mats = {crossing_label(s): model.windows.window_restriction(s) for s in gaps}
    return LatticeLocalSystem(pres, {'x+': model.rank, 'x-': model.rank}, mats)


def loop_around_point(w: int) -> Word:
    """Loop at x+ around iw: Phi^w o Phi^(w+1), out through W_w and back through W_(w+1)."""
    return ((crossing_label(w + 1), 1), (crossing_label(w), -1))


def build_schober_C(n: int, window: Tuple[int, int],
                    model: Optional[FlopModel] = None) -> SurfaceSchober:
    """Truncation to ``window`` of the schober with monodromy T^w around iw.

    The restriction to C - iZ comes refined by the half-monodromies: each loop
    gamma_k around iw factors through the two gaps next to iw.
    """
    if n != 1:
        raise UnsupportedError('The (C, iZ) schober is built for n = 1', n=n)
    model = model or build_flop_model(n)
    logger.debug('Building the (C, iZ) schober on %s', window)
    coarse = flop_periodic(model, window).truncate(base='x+')
    points = tuple(range(window[0], window[1] + 1))
    loops = [loop_around_point(w) for w in points]
    inclusion = {puncture_label(k): loop for k, loop in enumerate(loops, start=1)}
    inclusion['boundary'] = sum(loops, ())
    refinement = Refinement(half_monodromy_system(model, window), inclusion, points)
    return replace(coarse, refinement=refinement)


def half_monodromies_C(model: FlopModel, window: Tuple[int, int]) -> dict:
    """w -> (Phi^w : X_- -> X_+, Phi^{w+1} : X_+ -> X_-)."""
    fine = half_monodromy_system(model, window)
    return {w: (fine.mats[crossing_label(w + 1)], mat_inverse(fine.mats[crossing_label(w)]))
            for w in range(window[0], window[1] + 1)}


# ===== SKMS =====

@dataclass(frozen=True)
class SKMSPresentation:
    system: LatticeLocalSystem
    x_plus: str = 'x+'
    x_minus: str = 'x-'

    @property
    def infinity_word(self) -> Word:
        return infinity_word()


def build_skms(n: int = 1, model: Optional[FlopModel] = None) -> SKMSPresentation:
    """Loops l_pm around -+1 and the half arcs f around the conifold point."""
    model = model or build_flop_model(n)
    pres = GroupoidPresentation(
        basepoints=('x+', 'x-'),
        generators=(Generator('l+', 'x+', 'x+'), Generator('l-', 'x-', 'x-'),
                    Generator('f-+', 'x-', 'x+'), Generator('f+-', 'x+', 'x-')),
        relations=(Relation('infinity', infinity_word()),),
    )
    mats = {'l+': model.l_plus, 'l-': model.l_minus,
            'f-+': model.f_minus_plus, 'f+-': model.f_plus_minus}
    logger.debug('Built SKMS presentation for n=%d', model.n)
    return SKMSPresentation(LatticeLocalSystem(pres, {'x+': model.rank, 'x-': model.rank}, mats))


SKMS_SHIFTS = {'l+': -1, 'l-': 1, 'f-+': 0, 'f+-': 0}


def skms_pullback(model: FlopModel, N: int) -> Pullback:
    """Pullback to C - Z along g, sheets k in [-N, N]."""
    skms = build_skms(model=model)
    cover = cyclic_cover(skms.system.presentation, range(-N, N + 1), SKMS_SHIFTS)
    return ls_pullback(skms.system, cover)


def loop_around(m: int) -> Word:
    """Loop at x+@0 around the integer m: L+^m (F-+ F+-) L+^-m."""
    if m > 0:
        out = tuple((sheet_label('l+', j), 1) for j in range(1, m + 1))
    else:
        out = tuple((sheet_label('l+', j), -1) for j in range(0, m, -1))
    return out + ((sheet_label('f-+', m), 1), (sheet_label('f+-', m), 1)) + inverse_word(out)


def check_pullback_refinement(fine: Pullback, schober_c: SurfaceSchober, N: int,
                              ws: Optional[Sequence[int]] = None) -> Report:
    """Each loop of ``schober_c`` around iw against the conjugated flop-flop loop around w + 1.

    The fine word is inverted: T^w inverts L+^(w+1) F F L+^-(w+1).
    """
    if schober_c.refinement is None or not schober_c.refinement.points:
        raise ShapeMismatchError('The schober carries no point positions along iZ')
    points = schober_c.refinement.points
    if ws is None:
        ws = [w for w in points if abs(w) < N]
    base = sheet_label('x+', 0)
    labels = {g.label for g in fine.system.presentation.generators}
    gammas = puncture_labels(schober_c)
    inclusion, names = {}, {}
    for w in ws:
        if abs(w) >= N or w not in points:
            raise TruncationBoundaryError(f'w={w} is not interior to the window [-{N}, {N}]', w=w)
        factor = inverse_word(loop_around(w + 1))
        if any(label not in labels for label, _ in factor):
            raise TruncationBoundaryError(f'Loop around {w + 1} leaves the window', w=w)
        gamma = gammas[points.index(w)]
        inclusion[gamma] = factor
        names[gamma] = f'T^{w} around {w + 1}'
    coarse = ls_rename_basepoints(ls_restrict(restrict_coarse(schober_c), inclusion),
                                  {schober_c.base: base})
    report = refinement_report(coarse, fine.system, inclusion, names)
    report.name = f'pullback N={N}'
    return report


def skms_pullback_refines(model: FlopModel, N: int) -> Report:
    fine = skms_pullback(model, N)
    report = check_pullback_refinement(fine, build_schober_C(model.n, (-N + 1, N - 1), model), N)
    report.data['boundary'] = [sheet_label(b.generator, b.sheet) for b in fine.boundary]
    return report


def skms_compactification(model: FlopModel) -> Tuple[LatticeLocalSystem, list, Word, str]:
    """(system, punctures, global word, base) for compactify_check."""
    skms = build_skms(model=model)
    punctures = [
        ((('l+', 1),), skms.x_plus, twist_presentation_for(model.l_plus)),
        ((('l-', 1),), skms.x_minus, twist_presentation_for(model.l_minus)),
    ]
    return skms.system, punctures, skms.infinity_word, skms.x_plus
