"""Command-line front end: load objects, run checks, print reports.

Exit codes: 0 when every requested check passes, 1 on a mathematical
failure, 2 on usage, parse or IO errors, 3 on an internal error.
"""
import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Optional

from schober import configure
from schober.core.arith import mat_rank_inverse_solve, smith_normal_form
from schober.errors import InputFormatError, SchoberError
from schober.forms.forms import (
    parse_flop, parse_path_word, parse_weights, validate_options,
)
from schober.models.braid import braid_act_free, braid_equal, parse_word
from schober.models.disk import (
    gmv_braid_act, gmv_validate, ks_validate, pair_half_monodromies, pair_twist, pair_validate,
)
from schober.models.git_flop import (
    build_flop_model, build_git_pair, build_skms, build_windows, half_monodromies_C,
    skms_compactification, skms_pullback_refines, twist_vs_phi, verify_relations,
)
from schober.models.local_system import ls_monodromy, ls_validate
from schober.models.reports import Report, matrix_rows
from schober.models.surface import compactify_check, extend_with_twist, surface_validate
from schober.utils import serialization as codec
from schober.utils.dot import export_dot
from schober.utils.excel_utils import export_reports_to_excel

logger = logging.getLogger(__name__)

COMMANDS = [
    'validate', 'braid-act', 'monodromy', 'build-windows', 'build-pair', 'build-skms',
    'verify', 'pullback', 'export-dot', 'twist-vs-phi', 'compactify', 'extend', 'smith',
    'braid-equal',
]

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Outcome:
    reports: list = field(default_factory=list)
    payload: Optional[object] = None
    text: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(r.valid for r in self.reports)


def build_parser():
    parser = _Parser(prog='schober', description='Exact checks for decategorified schobers.')
    parser.add_argument('command', choices=COMMANDS, help='Command to execute')
    parser.add_argument('--json', action='store_true', help='Print a machine-readable report')
    parser.add_argument('--out', type=str, help='Write the command result to this file')
    parser.add_argument('--xlsx', type=str, help='Also export the reports to an .xlsx file')
    parser.add_argument('--config', type=str, help='Configuration name (development, testing, production)')
    parser.add_argument('--data', type=str, help='GMV data JSON file')
    parser.add_argument('--ks', type=str, help='KS quiver data JSON file')
    parser.add_argument('--pair', type=str, help='Spherical pair JSON file')
    parser.add_argument('--local-system', dest='local_system', type=str, help='Local system JSON file')
    parser.add_argument('--schober', type=str, help='Surface schober JSON file')
    parser.add_argument('--twist', type=str, help='Twist presentation JSON file {"u", "v"}')
    parser.add_argument('--matrix', type=str, help='Integer matrix JSON file (array of rows)')
    parser.add_argument('--word', type=str, help='Braid word "1 2 -1" or path word "a b^-1"')
    parser.add_argument('--other', type=str, help='Second braid word for braid-equal')
    parser.add_argument('--loop', type=str, help='Loop word around the puncture for extend')
    parser.add_argument('--base', type=str, help='Basepoint for monodromy')
    parser.add_argument('--weights', type=str, help='Toric weights, e.g. a=1,2,b=3')
    parser.add_argument('--w', type=int, default=0, help='Window offset')
    parser.add_argument('--flop', type=str, help='Flop dimension, e.g. n=1')
    parser.add_argument('--window', type=int, help='Truncation window N for pullbacks')
    return parser


def _load(kind, path):
    return codec.decode(kind, codec.load_json(path))


# ===== Verb handlers =====

def _validate(args):
    if args.data:
        report = gmv_validate(_load('gmv', args.data))
    elif args.ks:
        report = ks_validate(_load('ks', args.ks))
    elif args.pair:
        report = pair_validate(_load('pair', args.pair))
    elif args.local_system:
        report = ls_validate(_load('local-system', args.local_system))
    else:
        report = surface_validate(_load('schober', args.schober))
    return Outcome([report])


def _braid_act(args):
    d = _load('gmv', args.data)
    w = parse_word(args.word)
    result = gmv_braid_act(d, w)
    report = gmv_validate(result)
    report.name = f'braid-act {w}'
    return Outcome([report], codec.gmv_to_json(result))


def _braid_equal(args):
    w1, w2 = parse_word(args.word), parse_word(args.other)
    report = Report(f'braid-equal {w1} | {w2}')
    if not braid_equal(w1, w2):
        report.add_issue('NotEqual', 'Words represent different braids',
                         left=str(braid_act_free(w1)), right=str(braid_act_free(w2)))
    return Outcome([report], {'equal': report.valid, 'action': str(braid_act_free(w1))})


def _monodromy(args):
    L = _load('local-system', args.local_system)
    m = ls_monodromy(L, parse_path_word(args.word), args.base)
    return Outcome([Report('monodromy')], {'monodromy': matrix_rows(m)})


def _spec(args):
    return parse_weights(args.weights, args.w)


def _build_windows(args):
    spec = _spec(args)
    k = build_windows(spec)
    payload = {
        'spec': codec.spec_to_json(spec),
        'eta': k.eta,
        'koszulMinus': codec.laurent_to_json(k.koszul_minus),
        'koszulPlus': codec.laurent_to_json(k.koszul_plus),
        'phi': matrix_rows(k.phi(spec.w)),
        'phiNext': matrix_rows(k.phi_inverse_side(spec.w + 1)),
    }
    return Outcome([Report(f'build-windows {spec}')], payload)


def _build_pair(args):
    spec = _spec(args)
    pair = build_git_pair(spec)
    h_mp, h_pm = pair_half_monodromies(pair)
    payload = {
        'pair': codec.pair_to_json(pair),
        'halfMonodromies': {'-+': matrix_rows(h_mp), '+-': matrix_rows(h_pm)},
        'twist': matrix_rows(pair_twist(pair)),
    }
    return Outcome([pair_validate(pair)], payload)


def _flop_n(args):
    return parse_flop(args.flop) if args.flop else 1


def _build_skms(args):
    skms = build_skms(_flop_n(args))
    return Outcome([ls_validate(skms.system)], codec.local_system_to_json(skms.system))


def _verify(args):
    if args.weights:
        return Outcome([twist_vs_phi(_spec(args))])
    model = build_flop_model(_flop_n(args))
    return Outcome([verify_relations(model)])


def _pullback(args, settings):
    model = build_flop_model(_flop_n(args))
    N = args.window or settings.DEFAULT_WINDOW
    report = skms_pullback_refines(model, N)
    halves = half_monodromies_C(model, (-N + 1, N - 1))
    payload = {str(w): {'phi': matrix_rows(a), 'phiNext': matrix_rows(b)}
               for w, (a, b) in halves.items()}
    return Outcome([report], payload)


def _export_dot(args):
    if args.local_system:
        obj = _load('local-system', args.local_system)
    elif args.schober:
        obj = _load('schober', args.schober)
    else:
        obj = build_skms(_flop_n(args)).system
    return Outcome([], text=export_dot(obj))


def _twist_vs_phi(args):
    return Outcome([twist_vs_phi(_spec(args))])


def _compactify(args):
    system, punctures, global_word, base = skms_compactification(build_flop_model(_flop_n(args)))
    if args.local_system:
        system = _load('local-system', args.local_system)
    return Outcome([compactify_check(system, punctures, global_word, base)])


def _extend(args):
    s = _load('schober', args.schober)
    t = codec.twist_from_json(codec.load_json(args.twist), s.disk.ambient_dim)
    extended = extend_with_twist(s, parse_path_word(args.loop), t)
    return Outcome([surface_validate(extended)], codec.surface_to_json(extended))


def _smith(args):
    m = codec.matrix_from_json(codec.load_json(args.matrix))
    snf = smith_normal_form(m)
    info = mat_rank_inverse_solve(m)
    payload = {'diag': matrix_rows(snf.diag), 'left': matrix_rows(snf.left),
               'right': matrix_rows(snf.right), 'rank': info.rank,
               'invariantFactors': snf.invariant_factors()}
    return Outcome([Report('smith')], payload)


def dispatch(args, settings):
    if args.command == 'validate':
        return _validate(args)
    elif args.command == 'braid-act':
        return _braid_act(args)
    elif args.command == 'braid-equal':
        return _braid_equal(args)
    elif args.command == 'monodromy':
        return _monodromy(args)
    elif args.command == 'build-windows':
        return _build_windows(args)
    elif args.command == 'build-pair':
        return _build_pair(args)
    elif args.command == 'build-skms':
        return _build_skms(args)
    elif args.command == 'verify':
        return _verify(args)
    elif args.command == 'pullback':
        return _pullback(args, settings)
    elif args.command == 'export-dot':
        return _export_dot(args)
    elif args.command == 'twist-vs-phi':
        return _twist_vs_phi(args)
    elif args.command == 'compactify':
        return _compactify(args)
    elif args.command == 'extend':
        return _extend(args)
    elif args.command == 'smith':
        return _smith(args)
    raise UsageError(f'Unknown command {args.command}')


# ===== Output =====

def _failure_outcome(command, error):
    report = Report(command)
    report.add_error(error)
    return Outcome([report])


def _print_summary(outcome, stdout):
    for report in outcome.reports:
        status = 'PASS' if report.valid else 'FAIL'
        print(f'{status} {report.name}', file=stdout)
        for check in report.checks:
            print(f"  {'ok ' if check.passed else 'BAD'} {check.name}", file=stdout)
        for issue in report.issues:
            print(f'  {issue.code}: {issue.message}', file=stdout)


def _write(path, text):
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(text)


def run(argv=None, stdout=None):
    """Run one command; returns the exit code"""
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        settings = configure(args.config)
    except (UsageError, KeyError) as error:
        print(f'Error: {error}', file=sys.stderr)
        return EXIT_USAGE

    errors = validate_options(args.command, vars(args))
    if errors:
        for error in errors:
            print(f'Error: {error}', file=sys.stderr)
        return EXIT_USAGE

    try:
        outcome = dispatch(args, settings)
    except (InputFormatError, OSError) as error:
        print(f'Error: {error}', file=sys.stderr)
        return EXIT_USAGE
    except SchoberError as error:
        logger.info('%s failed: %s', args.command, error)
        outcome = _failure_outcome(args.command, error)
    except Exception:
        logger.exception('Unexpected failure in %s', args.command)
        return EXIT_INTERNAL

    code = EXIT_OK if outcome.passed else EXIT_FAILED
    try:
        if args.out:
            if outcome.text is not None:
                _write(args.out, outcome.text)
            elif outcome.payload is not None:
                _write(args.out, codec.dumps(outcome.payload))
        if args.xlsx:
            export_reports_to_excel(outcome.reports, args.xlsx, settings.REPORT_DIR)
    except OSError as error:
        print(f'Error: {error}', file=sys.stderr)
        return EXIT_USAGE

    if args.json:
        document = {'command': args.command, 'exit': code,
                    'reports': [r.to_dict() for r in outcome.reports]}
        if outcome.payload is not None and not args.out:
            document['result'] = outcome.payload
        stdout.write(codec.dumps(document))
    elif outcome.text is not None and not args.out:
        stdout.write(outcome.text)
    else:
        _print_summary(outcome, stdout)
        if outcome.payload is not None and not args.out:
            stdout.write(codec.dumps(outcome.payload))
    return code


def main():
    sys.exit(run())
