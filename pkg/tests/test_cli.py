import io
import json

import pytest

from schober.controllers.main import run
from schober.models.git_flop import build_schober_C, build_skms
from schober.utils import serialization as codec

GMV = {'ambientDim': 2, 'points': [{'localDim': 1, 'u': [[1, 0]], 'v': [[0], [1]]}]}
GMV_SINGULAR = {'ambientDim': 2, 'points': [{'localDim': 1, 'u': [[1, 0]], 'v': [[1], [0]]}]}

KS = {'dims': {'minus': 1, 'zero': 2, 'plus': 1},
      'uMinus': [[1], [0]], 'uPlus': [[0], [1]], 'vMinus': [[1, 1]], 'vPlus': [[1, 1]]}

PAIR = {'totalDim': 2, 'qMinus': [[1], [0]], 'pMinus': [[0], [1]],
        'qPlus': [[1], [1]], 'pPlus': [[0], [1]]}


def _schober(a):
    return {
        'disk': GMV,
        'outside': {
            'presentation': {'basepoints': ['x'],
                             'generators': [{'label': 'a', 'src': 'x', 'dst': 'x'}],
                             'relations': []},
            'dims': {'x': 2},
            'mats': {'a': a},
        },
        'boundaryWord': ['a'],
        'base': 'x',
    }


def _skms(corrupt=False):
    data = codec.local_system_to_json(build_skms(1).system)
    if corrupt:
        data['mats']['f-+'] = [['1', '0'], ['0', '1']]
    return data


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data), encoding='utf-8')
    return str(path)


def _run(*argv):
    out = io.StringIO()
    code = run(['--config', 'testing'] + list(argv), stdout=out)
    return code, out.getvalue()


VALID = [
    ('gmv.json', GMV, '--data'),
    ('ks.json', KS, '--ks'),
    ('pair.json', PAIR, '--pair'),
    ('skms.json', _skms(), '--local-system'),
    ('schober.json', _schober([[1, 0], [-1, 1]]), '--schober'),
]

CORRUPTED = [
    ('gmv.json', GMV_SINGULAR, '--data', 1),
    ('ks.json', dict(KS, vPlus=[[0, 1]]), '--ks', 1),
    ('pair.json', dict(PAIR, pPlus=[[1], [1]]), '--pair', 1),
    ('skms.json', _skms(corrupt=True), '--local-system', 1),
    ('schober.json', _schober([[1, 0], [1, 1]]), '--schober', 1),
    ('broken.json', '{"ambientDim": 2, "points": [', '--data', 2),
]


@pytest.mark.parametrize('name,data,flag', VALID)
def test_valid_files_pass(tmp_path, name, data, flag):
    code, out = _run('validate', flag, _write(tmp_path, name, data), '--json')
    assert code == 0
    assert json.loads(out)['reports'][0]['valid'] is True


def test_smith_file_passes(tmp_path):
    path = _write(tmp_path, 'm.json', [[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    code, out = _run('smith', '--matrix', path, '--json')
    assert code == 0
    assert json.loads(out)['result']['invariantFactors'] == [2, 6, 12]


@pytest.mark.parametrize('name,data,flag,expected', CORRUPTED)
def test_corrupted_files_fail(tmp_path, name, data, flag, expected):
    code, _ = _run('validate', flag, _write(tmp_path, name, data), '--json')
    assert code == expected


def test_json_output_is_deterministic(tmp_path):
    path = _write(tmp_path, 'skms.json', _skms())
    for argv in (('validate', '--local-system', path), ('verify', '--flop', 'n=1'),
                 ('pullback', '--window', '3'), ('twist-vs-phi', '--weights', 'a=1,2,b=3')):
        first = _run(*argv, '--json')
        assert first == _run(*argv, '--json')
        assert first[0] == 0


def test_usage_errors_exit_2(tmp_path):
    assert _run('smith')[0] == 2
    assert _run('no-such-command')[0] == 2
    assert _run('validate', '--data', str(tmp_path / 'missing.json'))[0] == 2
    assert _run('build-windows', '--weights', 'a=1')[0] == 2
    assert run(['verify', '--config', 'nowhere'], stdout=io.StringIO()) == 2


def test_mathematical_failures_exit_1(tmp_path):
    assert _run('build-windows', '--weights', 'a=1,1,b=3')[0] == 1
    assert _run('braid-equal', '--word', '1 2', '--other', '2 1')[0] == 1
    path = _write(tmp_path, 'gmv.json', GMV)
    code, out = _run('braid-act', '--data', path, '--word', '3', '--json')
    assert code == 1
    assert json.loads(out)['reports'][0]['issues'][0]['code'] == 'IndexOutOfRange'


def test_braid_commands(tmp_path):
    assert _run('braid-equal', '--word', '1 2 1', '--other', '2 1 2')[0] == 0
    two = dict(GMV, points=GMV['points'] * 2)
    code, out = _run('braid-act', '--data', _write(tmp_path, 'two.json', two), '--word', '1', '--json')
    assert code == 0
    assert len(json.loads(out)['result']['points']) == 2


def test_monodromy_command(tmp_path):
    path = _write(tmp_path, 'skms.json', _skms())
    code, out = _run('monodromy', '--local-system', path, '--word', 'f-+ f+-', '--json')
    assert code == 0
    assert json.loads(out)['result']['monodromy'] == [['1', '0'], ['0', '1']]


def test_build_commands_write_results(tmp_path):
    out_file = tmp_path / 'skms.json'
    assert _run('build-skms', '--out', str(out_file))[0] == 0
    assert json.loads(out_file.read_text())['dims'] == {'x+': 2, 'x-': 2}
    code, out = _run('build-pair', '--weights', 'a=1,2,b=3', '--json')
    assert code == 0
    assert json.loads(out)['result']['pair']['totalDim'] == 4
    code, out = _run('build-windows', '--weights', 'a=1,1,b=1,1', '--w', '-1', '--json')
    assert json.loads(out)['result']['phi'] == [['0', '-1'], ['1', '2']]


def test_compactify_and_extend(tmp_path):
    assert _run('compactify', '--flop', 'n=1')[0] == 0
    assert _run('compactify', '--local-system', _write(tmp_path, 'bad.json', _skms(True)))[0] == 1
    schober = _write(tmp_path, 'schober.json', _schober([[1, 0], [-1, 1]]))
    twist = _write(tmp_path, 'twist.json', {'u': [[1, 0]], 'v': [[0], [1]]})
    code, out = _run('extend', '--schober', schober, '--loop', 'a', '--twist', twist, '--json')
    assert code == 0
    assert len(json.loads(out)['result']['disk']['points']) == 2
    bad_twist = _write(tmp_path, 'bad_twist.json', {'u': [[0, 1]], 'v': [[0], [1]]})
    assert _run('extend', '--schober', schober, '--loop', 'a', '--twist', bad_twist)[0] == 1


def test_export_dot_and_xlsx(tmp_path):
    code, out = _run('export-dot', '--flop', 'n=1')
    assert code == 0 and out.startswith('digraph')
    xlsx = tmp_path / 'verify.xlsx'
    assert _run('verify', '--flop', 'n=1', '--xlsx', str(xlsx))[0] == 0
    assert xlsx.exists()


GMV3 = {'ambientDim': 2, 'points': [
    {'localDim': 1, 'u': [[1, 0]], 'v': [[0], [1]]},
    {'localDim': 1, 'u': [[0, 1]], 'v': [[1], [0]]},
    {'localDim': 1, 'u': [[2, 0]], 'v': [[0], [1]]},
]}


def test_braid_relation_gives_identical_files(tmp_path):
    path = _write(tmp_path, 'gmv3.json', GMV3)
    results = []
    for name, w in (('121.json', '1 2 1'), ('212.json', '2 1 2')):
        out_file = tmp_path / name
        assert _run('braid-act', '--data', path, '--word', w, '--out', str(out_file))[0] == 0
        results.append(out_file.read_bytes())
    assert results[0] == results[1]


def test_validate_refined_schober_on_the_line(tmp_path):
    data = codec.surface_to_json(build_schober_C(1, (-2, 2)))
    code, out = _run('validate', '--schober', _write(tmp_path, 'line.json', data), '--json')
    assert code == 0
    names = [c['name'] for c in json.loads(out)['reports'][0]['checks']]
    assert 'refinement: boundary' in names
    data['refinement']['system']['mats']['W1'] = [['1', '0'], ['0', '1']]
    assert _run('validate', '--schober', _write(tmp_path, 'bad_line.json', data))[0] == 1


def test_internal_errors_have_their_own_exit_code(monkeypatch):
    def broken(args, settings):
        raise RuntimeError('unexpected')

    monkeypatch.setattr('schober.controllers.main.dispatch', broken)
    code, out = _run('verify', '--flop', 'n=1')
    assert code == 3
    assert out == ''
