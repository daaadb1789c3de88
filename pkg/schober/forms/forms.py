import re

from schober.errors import InputFormatError
from schober.models.braid import parse_word
from schober.models.git_flop import WallCrossingSpec

# Option groups each verb needs (at least one option from every group)
REQUIRED_OPTIONS = {
    'validate': [('data', 'ks', 'pair', 'local_system', 'schober')],
    'braid-act': [('data',), ('word',)],
    'braid-equal': [('word',), ('other',)],
    'monodromy': [('local_system',), ('word',)],
    'build-windows': [('weights',)],
    'build-pair': [('weights',)],
    'twist-vs-phi': [('weights',)],
    'extend': [('schober',), ('loop',), ('twist',)],
    'smith': [('matrix',)],
    'export-dot': [('local_system', 'schober', 'flop')],
}

_WEIGHTS_RE = re.compile(r'^\s*a\s*=\s*([\d,\s]+?)\s*[,;]?\s*b\s*=\s*([\d,\s]+?)\s*$')
_FLOP_RE = re.compile(r'^\s*n\s*=\s*(\d+)\s*$')


def parse_weights(text, w=0):
    """Read "a=1,2,b=3" (or "a=1,2;b=3") into a WallCrossingSpec"""
    match = _WEIGHTS_RE.match(text or '')
    if not match:
        raise InputFormatError(f"'{text}' is not of the form a=1,2,b=3")
    a = [int(x) for x in re.split(r'[,\s]+', match.group(1).strip(' ,')) if x]
    b = [int(x) for x in re.split(r'[,\s]+', match.group(2).strip(' ,')) if x]
    return WallCrossingSpec(tuple(a), tuple(b), w)


def parse_flop(text):
    """Read "n=1" into the flop dimension"""
    match = _FLOP_RE.match(text or '')
    if not match:
        raise InputFormatError(f"'{text}' is not of the form n=K")
    return int(match.group(1))


def parse_path_word(text):
    """Read "a b^-1 c" into a path word in composition order"""
    letters = []
    for token in (text or '').split():
        if token.endswith('^-1'):
            label, sign = token[:-3], -1
        elif token.endswith('^1'):
            label, sign = token[:-2], 1
        else:
            label, sign = token, 1
        if not label:
            raise InputFormatError(f"'{token}' has no generator label")
        letters.append((label, sign))
    return tuple(letters)


def validate_options(command, options):
    """Performs basic validation on the CLI options for a command."""
    errors = []
    for group in REQUIRED_OPTIONS.get(command, []):
        if not any(options.get(name) for name in group):
            flags = ' or '.join('--' + name.replace('_', '-') for name in group)
            errors.append(f"'{command}' needs {flags}.")

    if options.get('weights'):
        try:
            parse_weights(options['weights'])
        except InputFormatError as error:
            errors.append(str(error))

    if options.get('flop'):
        try:
            parse_flop(options['flop'])
        except InputFormatError as error:
            errors.append(str(error))

    for name in ('word', 'other'):
        if options.get(name) and command in ('braid-act', 'braid-equal'):
            try:
                parse_word(options[name])
            except InputFormatError as error:
                errors.append(f'--{name}: {error}')

    window = options.get('window')
    if window is not None and window < 1:
        errors.append("'--window' must be a positive integer.")

    return errors
