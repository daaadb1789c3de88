"""JSON codecs for the domain types.

Rationals are strings "p/q" (integers may also be read as JSON numbers),
matrices are arrays of row arrays, Laurent polynomials are {"exp": coeff}.
Everything written is sorted and free of timestamps.
"""
from __future__ import annotations

import json
import logging
from typing import Any, Optional, Tuple

from schober.core.arith import Matrix, format_rational, mat
from schober.core.laurent import LaurentPoly
from schober.errors import InputFormatError, SchoberError
from schober.models.braid import BraidWord
from schober.models.disk import (
    GMVData, GMVPoint, KSQuiverData, LinearSphericalPair, TwistPresentation,
)
from schober.models.git_flop import WallCrossingSpec
from schober.models.local_system import (
    Generator, GroupoidPresentation, LatticeLocalSystem, Relation, Word,
)
from schober.models.surface import Refinement, SurfaceSchober

logger = logging.getLogger(__name__)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def load_json(path: str) -> Any:
    with open(path, encoding='utf-8') as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as error:
            raise InputFormatError(f'{path}: invalid JSON ({error.msg} at line {error.lineno})')


def _field(data: dict, key: str):
    if not isinstance(data, dict):
        raise InputFormatError(f'Expected an object with "{key}", got {type(data).__name__}')
    if key not in data:
        raise InputFormatError(f'Missing field "{key}"')
    return data[key]


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputFormatError(f'{what} must be an integer, got {value!r}')
    return value


# ===== Matrices and polynomials =====

def matrix_to_json(m: Matrix) -> list:
    return [[format_rational(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def matrix_from_json(rows, shape: Optional[Tuple[int, int]] = None) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InputFormatError('A matrix must be an array of row arrays')
    m = mat(rows, ncols=shape[1] if shape and not rows else None)
    if shape is not None and m.shape != tuple(shape):
        if m.rows == 0 and shape[0] == 0:
            return Matrix.zeros(*shape)
        raise InputFormatError(f'Expected a {shape[0]}x{shape[1]} matrix, got {m.rows}x{m.cols}')
    return m


def laurent_to_json(p: LaurentPoly) -> dict:
    return {str(e): c for e, c in p.terms}


def laurent_from_json(data) -> LaurentPoly:
    if not isinstance(data, dict):
        raise InputFormatError('A Laurent polynomial must be an {"exp": coeff} object')
    try:
        return LaurentPoly.from_dict({int(e): _int(c, 'coefficient') for e, c in data.items()})
    except ValueError as error:
        raise InputFormatError(f'Bad exponent: {error}')


# ===== Braids =====

def braid_to_json(w: BraidWord) -> list:
    return [{'i': i, 's': s} for i, s in w.letters]


def braid_from_json(data) -> BraidWord:
    if not isinstance(data, list):
        raise InputFormatError('A braid word must be an array')
    letters = []
    for item in data:
        if isinstance(item, dict):
            letters.append((_int(_field(item, 'i'), 'i'), _int(_field(item, 's'), 's')))
        else:
            signed = _int(item, 'braid letter')
            if signed == 0:
                raise InputFormatError('Braid letter 0 is ambiguous')
            letters.append((abs(signed), 1 if signed > 0 else -1))
    return BraidWord(tuple(letters))


# ===== Disk data =====

def gmv_to_json(d: GMVData) -> dict:
    return {
        'ambientDim': d.ambient_dim,
        'points': [{'localDim': p.local_dim, 'u': matrix_to_json(p.u), 'v': matrix_to_json(p.v)}
                   for p in d.points],
    }


def gmv_from_json(data) -> GMVData:
    n = _int(_field(data, 'ambientDim'), 'ambientDim')
    points = []
    for item in _field(data, 'points'):
        k = _int(_field(item, 'localDim'), 'localDim')
        points.append(GMVPoint(k, matrix_from_json(_field(item, 'u'), (k, n)),
                               matrix_from_json(_field(item, 'v'), (n, k))))
    return GMVData(n, tuple(points))


def twist_to_json(t: TwistPresentation) -> dict:
    return {'u': matrix_to_json(t.u), 'v': matrix_to_json(t.v)}


def twist_from_json(data, dim: Optional[int] = None) -> TwistPresentation:
    u_rows, v_rows = _field(data, 'u'), _field(data, 'v')
    local = len(u_rows)
    u = matrix_from_json(u_rows, (0, dim) if dim is not None and local == 0 else None)
    v = matrix_from_json(v_rows, (dim, local) if dim is not None else None)
    return TwistPresentation(u=u, v=v)


def ks_to_json(k: KSQuiverData) -> dict:
    return {
        'dims': {'minus': k.dim_minus, 'zero': k.dim_zero, 'plus': k.dim_plus},
        'uMinus': matrix_to_json(k.u_minus), 'uPlus': matrix_to_json(k.u_plus),
        'vMinus': matrix_to_json(k.v_minus), 'vPlus': matrix_to_json(k.v_plus),
    }


def ks_from_json(data) -> KSQuiverData:
    dims = _field(data, 'dims')
    em, e0, ep = (_int(_field(dims, key), key) for key in ('minus', 'zero', 'plus'))
    return KSQuiverData(
        em, e0, ep,
        u_minus=matrix_from_json(_field(data, 'uMinus'), (e0, em)),
        u_plus=matrix_from_json(_field(data, 'uPlus'), (e0, ep)),
        v_minus=matrix_from_json(_field(data, 'vMinus'), (em, e0)),
        v_plus=matrix_from_json(_field(data, 'vPlus'), (ep, e0)),
    )


def pair_to_json(p: LinearSphericalPair) -> dict:
    return {
        'totalDim': p.total_dim,
        'qMinus': matrix_to_json(p.q_minus), 'pMinus': matrix_to_json(p.p_minus),
        'qPlus': matrix_to_json(p.q_plus), 'pPlus': matrix_to_json(p.p_plus),
    }


def pair_from_json(data) -> LinearSphericalPair:
    n = _int(_field(data, 'totalDim'), 'totalDim')

    def basis(key):
        rows = _field(data, key)
        return matrix_from_json(rows, (0, 0) if n == 0 else None)

    return LinearSphericalPair(n, basis('qMinus'), basis('pMinus'), basis('qPlus'), basis('pPlus'))


# ===== Local systems =====

def word_to_json(w: Word) -> list:
    return [{'gen': g, 's': s} for g, s in w]


def word_from_json(data) -> Word:
    if not isinstance(data, list):
        raise InputFormatError('A path word must be an array')
    out = []
    for item in data:
        if isinstance(item, str):
            out.append((item, 1))
        elif isinstance(item, dict):
            sign = _int(_field(item, 's'), 's')
            if sign not in (1, -1):
                raise InputFormatError(f'Letter sign must be 1 or -1, got {sign}')
            out.append((str(_field(item, 'gen')), sign))
        else:
            raise InputFormatError(f'Bad path letter {item!r}')
    return tuple(out)


def presentation_to_json(p: GroupoidPresentation) -> dict:
    return {
        'basepoints': list(p.basepoints),
        'generators': [{'label': g.label, 'src': g.src, 'dst': g.dst} for g in p.generators],
        'relations': [{'label': r.label, 'word': word_to_json(r.word)} for r in p.relations],
    }


def presentation_from_json(data) -> GroupoidPresentation:
    return GroupoidPresentation(
        basepoints=tuple(str(x) for x in _field(data, 'basepoints')),
        generators=tuple(Generator(str(_field(g, 'label')), str(_field(g, 'src')),
                                   str(_field(g, 'dst'))) for g in _field(data, 'generators')),
        relations=tuple(Relation(str(_field(r, 'label')), word_from_json(_field(r, 'word')))
                        for r in data.get('relations', [])),
    )


def local_system_to_json(L: LatticeLocalSystem) -> dict:
    return {
        'presentation': presentation_to_json(L.presentation),
        'dims': dict(L.dims),
        'mats': {label: matrix_to_json(m) for label, m in L.mats.items()},
    }


def local_system_from_json(data) -> LatticeLocalSystem:
    pres = presentation_from_json(_field(data, 'presentation'))
    dims = {str(x): _int(n, f'dims[{x}]') for x, n in _field(data, 'dims').items()}
    raw = _field(data, 'mats')
    mats = {}
    for g in pres.generators:
        if g.label not in raw:
            raise InputFormatError(f'No matrix for generator {g.label}')
        if g.src not in dims or g.dst not in dims:
            raise InputFormatError(f'No dimension for the ends of {g.label}')
        mats[g.label] = matrix_from_json(raw[g.label], (dims[g.dst], dims[g.src]))
    return LatticeLocalSystem(pres, dims, mats)


def refinement_to_json(r: Refinement) -> dict:
    return {
        'system': local_system_to_json(r.system),
        'inclusion': {label: word_to_json(w) for label, w in r.inclusion.items()},
        'points': list(r.points),
    }


def refinement_from_json(data) -> Refinement:
    inclusion = _field(data, 'inclusion')
    if not isinstance(inclusion, dict):
        raise InputFormatError('"inclusion" must map generator labels to path words')
    return Refinement(
        system=local_system_from_json(_field(data, 'system')),
        inclusion={str(label): word_from_json(w) for label, w in inclusion.items()},
        points=tuple(_int(w, 'point') for w in data.get('points', [])),
    )


def surface_to_json(s: SurfaceSchober) -> dict:
    out = {
        'disk': gmv_to_json(s.disk),
        'outside': local_system_to_json(s.outside),
        'boundaryWord': word_to_json(s.boundary_word),
        'base': s.base,
    }
    if s.refinement is not None:
        out['refinement'] = refinement_to_json(s.refinement)
    return out


def surface_from_json(data) -> SurfaceSchober:
    refinement = data.get('refinement') if isinstance(data, dict) else None
    return SurfaceSchober(
        disk=gmv_from_json(_field(data, 'disk')),
        outside=local_system_from_json(_field(data, 'outside')),
        boundary_word=word_from_json(_field(data, 'boundaryWord')),
        base=str(_field(data, 'base')),
        refinement=refinement_from_json(refinement) if refinement is not None else None,
    )


# ===== Wall crossings =====

def spec_to_json(spec: WallCrossingSpec) -> dict:
    return {'a': list(spec.a), 'b': list(spec.b), 'w': spec.w}


def spec_from_json(data) -> WallCrossingSpec:
    return WallCrossingSpec(tuple(_field(data, 'a')), tuple(_field(data, 'b')),
                            _int(data.get('w', 0), 'w'))


def decode(kind: str, data):
    """Decode by kind; any structural problem becomes InputFormatError."""
    decoders = {
        'gmv': gmv_from_json, 'ks': ks_from_json, 'pair': pair_from_json,
        'local-system': local_system_from_json, 'schober': surface_from_json,
        'spec': spec_from_json, 'braid': braid_from_json,
    }
    try:
        return decoders[kind](data)
    except InputFormatError:
        raise
    except SchoberError as error:
        # Shape problems in a file are input errors at this boundary
        raise InputFormatError(f'{kind}: {error.message}') from error
    except (KeyError, TypeError, ValueError, AttributeError) as error:
        raise InputFormatError(f'{kind}: malformed input ({error})') from error
