"""Reading and writing the ``CPLXMAT v1`` text format.

A block is a header line ``cplxmat <rows> <cols>`` followed by ``rows*cols``
lines ``<re> <im>`` in row-major order.  Several blocks may be concatenated
in one file.  The reader is whitespace-agnostic.
"""

import numpy as np

from .errors import FormatError

__all__ = ['dumps', 'loads', 'loads_all', 'read', 'write']


def _fmt(x):
    # repr gives the shortest string that round-trips, at most 17 digits
    return repr(float(x))


def dumps(m):
    """Serialize one matrix to a CPLXMAT v1 block."""
    a = np.asarray(getattr(m, 'm', m), dtype=complex)
    if a.ndim != 2:
        raise ValueError(f'expected a 2-d matrix, got shape {a.shape}')
    if not np.all(np.isfinite(a)):
        raise ValueError('cannot serialize non-finite entries')
    lines = [f'cplxmat {a.shape[0]} {a.shape[1]}']
    lines.extend(f'{_fmt(z.real)} {_fmt(z.imag)}' for z in a.ravel())
    return '\n'.join(lines) + '\n'


def loads_all(text):
    """Parse every block in ``text``; returns a list of complex arrays."""
    tokens = text.split()
    pos = 0
    out = []
    while pos < len(tokens):
        if tokens[pos] != 'cplxmat':
            raise FormatError(f'expected "cplxmat" header, got {tokens[pos]!r}')
        try:
            rows, cols = int(tokens[pos + 1]), int(tokens[pos + 2])
        except (IndexError, ValueError):
            raise FormatError('malformed cplxmat header') from None
        if rows < 0 or cols < 0:
            raise FormatError('negative matrix dimensions')
        pos += 3
        count = rows * cols
        chunk = tokens[pos:pos + 2 * count]
        if len(chunk) != 2 * count:
            raise FormatError(
                f'expected {count} entries, file ends after {len(chunk) // 2}')
        try:
            vals = np.array([float(t) for t in chunk]).reshape(count, 2)
        except ValueError as exc:
            raise FormatError(str(exc)) from None
        if not np.all(np.isfinite(vals)):
            raise FormatError('non-finite entry')
        out.append((vals[:, 0] + 1j * vals[:, 1]).reshape(rows, cols))
        pos += 2 * count
    return out


def loads(text):
    """Parse exactly one block."""
    blocks = loads_all(text)
    if len(blocks) != 1:
        raise FormatError(f'expected one matrix, found {len(blocks)}')
    return blocks[0]


def read(path):
    with open(path) as fh:
        return loads_all(fh.read())


def write(path, *matrices):
    with open(path, 'w') as fh:
        for m in matrices:
            fh.write(dumps(m))
