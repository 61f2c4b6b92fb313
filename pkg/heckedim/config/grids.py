import os
from typing import List

import yaml

from ..dihedral import InvalidParamsError, Params

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.realpath(__file__))))


def _resolve(grid_file: str) -> str:
    if os.path.exists(grid_file):
        return grid_file
    return os.path.join(REPO_ROOT, grid_file)


def parse_inline_grid(text: str) -> List[Params]:
    """'qs:qt,qs:qt,...' -> Params list."""
    points = []
    for item in text.split(','):
        parts = item.strip().split(':')
        if len(parts) != 2:
            raise InvalidParamsError(f'grid point {item!r} is not of the form qs:qt')
        points.append(Params.parse(*parts))
    return points


def load_grid(name: str, grid_file: str = 'configs/grids.yml') -> List[Params]:
    """A named grid from the YAML grid file, or an inline 'qs:qt,...' list."""
    if ':' in name:
        return parse_inline_grid(name)
    with open(_resolve(grid_file), 'r') as f:
        grids = yaml.safe_load(f)['grids']
    if name not in grids:
        raise InvalidParamsError(f'unknown grid {name!r}; known grids: {sorted(grids)}')
    entry = grids[name]
    return [Params.parse(qs, qt) for qs, qt in entry.get('open', []) + entry.get('boundary', [])]
