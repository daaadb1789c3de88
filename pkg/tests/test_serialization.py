import json

import pytest

from schober.core.arith import mat
from schober.core.laurent import one_minus_t_power
from schober.errors import InputFormatError
from schober.models.braid import BraidWord
from schober.models.git_flop import (WallCrossingSpec, build_flop_model, build_git_pair, build_schober_C,
                                     build_skms, flop_twist_presentation)
from schober.utils import serialization as codec

GMV = {'ambientDim': 2, 'points': [{'localDim': 1, 'u': [[1, 0]], 'v': [[0], [1]]}]}


def test_gmv_codec():
    d = codec.decode('gmv', GMV)
    assert d.points[0].v == mat([[0], [1]])
    assert codec.gmv_to_json(d) == {
        'ambientDim': 2, 'points': [{'localDim': 1, 'u': [['1', '0']], 'v': [['0'], ['1']]}]}


def test_rational_entries():
    m = codec.matrix_from_json([['1/2', 3], ['-2/4', '0']])
    assert codec.matrix_to_json(m) == [['1/2', '3'], ['-1/2', '0']]


def test_local_system_codec(conifold):
    system = build_skms(model=conifold).system
    data = json.loads(codec.dumps(codec.local_system_to_json(system)))
    assert codec.decode('local-system', data) == system


def test_braid_and_laurent_codecs():
    assert codec.braid_from_json([1, -2, {'i': 3, 's': 1}]) == BraidWord.of(1, -2, 3)
    p = one_minus_t_power(2)
    assert codec.laurent_from_json(codec.laurent_to_json(p)) == p
    assert codec.spec_from_json({'a': [1, 2], 'b': [3]}) == WallCrossingSpec((1, 2), (3,), 0)


def test_dumps_is_sorted():
    assert codec.dumps({'b': 1, 'a': 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'


@pytest.mark.parametrize('kind,data', [
    ('gmv', {'ambientDim': 2}),
    ('gmv', {'ambientDim': 2, 'points': [{'localDim': 1, 'u': [[1, 0, 0]], 'v': [[0], [1]]}]}),
    ('gmv', {'ambientDim': 'two', 'points': []}),
    ('ks', {'dims': {'minus': 1, 'zero': 1}}),
    ('pair', []),
    ('local-system', {'presentation': {'basepoints': ['x'], 'generators': []}, 'dims': {}, 'mats': {}}),
    ('braid', [0]),
    ('spec', {'a': [1], 'b': [-1]}),
])
def test_malformed_input(kind, data):
    with pytest.raises(InputFormatError):
        codec.decode(kind, data)


def test_load_json_reports_bad_files(tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text('{not json', encoding='utf-8')
    with pytest.raises(InputFormatError):
        codec.load_json(str(path))


KS = {'dims': {'minus': 1, 'zero': 2, 'plus': 1},
      'uMinus': [[1], [0]], 'uPlus': [[0], [1]], 'vMinus': [['1/2', 1]], 'vPlus': [[1, -3]]}


def _schober():
    return {
        'disk': GMV,
        'outside': {
            'presentation': {'basepoints': ['x'],
                             'generators': [{'label': 'a', 'src': 'x', 'dst': 'x'}],
                             'relations': []},
            'dims': {'x': 2},
            'mats': {'a': [[1, 0], [-1, 1]]},
        },
        'boundaryWord': ['a'],
        'base': 'x',
    }


def _round_trip(obj, encode, decode):
    text = codec.dumps(encode(obj))
    again = decode(json.loads(text))
    assert again == obj
    assert codec.dumps(encode(again)) == text


def test_ks_file_round_trip():
    _round_trip(codec.decode('ks', KS), codec.ks_to_json, codec.ks_from_json)


def test_pair_file_round_trip():
    pair = build_git_pair(WallCrossingSpec((1, 2), (3,), 0))
    _round_trip(pair, codec.pair_to_json, codec.pair_from_json)


def test_twist_file_round_trip():
    twist = flop_twist_presentation(build_flop_model(1), 1)
    _round_trip(twist, codec.twist_to_json, lambda data: codec.twist_from_json(data, 2))


def test_schober_file_round_trip():
    _round_trip(codec.decode('schober', _schober()), codec.surface_to_json, codec.surface_from_json)


def test_refined_schober_file_round_trip():
    s = build_schober_C(1, (-1, 1))
    _round_trip(s, codec.surface_to_json, codec.surface_from_json)
    assert 'refinement' in codec.surface_to_json(s)
