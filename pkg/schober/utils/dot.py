"""Graphviz DOT text for groupoid presentations, local systems and surface schobers."""
from __future__ import annotations

from typing import Optional, Union

from schober.core.arith import Matrix, format_rational
from schober.models.local_system import GroupoidPresentation, LatticeLocalSystem
from schober.models.surface import SurfaceSchober, restrict_full


def _escape(text: str) -> str:
    return text.replace('\\', '\\\\').replace('"', '\\"').replace('\n', '\\n')


def matrix_label(m: Matrix) -> str:
    rows = ['[' + ', '.join(format_rational(m[i, j]) for j in range(m.cols)) + ']'
            for i in range(m.rows)]
    return '[' + ', '.join(rows) + ']'


def _render(pres: GroupoidPresentation, mats: Optional[dict], name: str) -> str:
    lines = [f'digraph "{_escape(name)}" {{']
    graph = pres.graph()
    for node in sorted(graph.nodes):
        lines.append(f'  "{_escape(node)}";')
    for src, dst, key in sorted(graph.edges(keys=True)):
        label = key if mats is None else f'{key}\n{matrix_label(mats[key])}'
        lines.append(f'  "{_escape(src)}" -> "{_escape(dst)}" [label="{_escape(label)}"];')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def export_dot(obj: Union[GroupoidPresentation, LatticeLocalSystem, SurfaceSchober],
               name: str = 'G') -> str:
    """Nodes and edges sorted by label; matrices stringified into edge labels."""
    if isinstance(obj, SurfaceSchober):
        obj = restrict_full(obj)
    if isinstance(obj, LatticeLocalSystem):
        return _render(obj.presentation, obj.mats, name)
    if isinstance(obj, GroupoidPresentation):
        return _render(obj, None, name)
    raise TypeError(f'Cannot export {type(obj).__name__} as DOT')
