"""Command line entry point ``projgeom``.

Exit codes: 0 success, 1 invariant or domain failure, 2 usage or I/O error.
Matrices are read and written in the CPLXMAT v1 format; reports go to
standard output as JSON, diagnostics to standard error.
"""

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import atlas, cplxmat, lattice
from . import projections as pa
from . import twoproj as tp
from .errors import FormatError, NotAProjection, ProjGeomError
from .numeric import DEFAULT_TOL, ToleranceConfig
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class BadArguments(Exception):
    pass


def _tol(overrides):
    values = {}
    names = {f.name for f in dataclasses.fields(ToleranceConfig)}
    for item in overrides or ():
        name, sep, value = item.partition('=')
        if not sep or name not in names:
            raise BadArguments(f'bad --tol {item!r}; expected one of '
                               f'{sorted(names)} as name=value')
        try:
            values[name] = float(value)
        except ValueError:
            raise BadArguments(f'bad --tol value {value!r}') from None
    try:
        return dataclasses.replace(DEFAULT_TOL, **values)
    except ValueError as exc:
        raise BadArguments(str(exc)) from None


def _read_blocks(path, count=None):
    if path is None:
        raise BadArguments('--input is required')
    try:
        if path == '-':
            blocks = cplxmat.loads_all(sys.stdin.read())
        else:
            blocks = cplxmat.read(path)
    except OSError as exc:
        raise BadArguments(f'cannot read {path}: {exc}') from None
    except FormatError as exc:
        raise BadArguments(f'{path}: {exc}') from None
    if count is not None and len(blocks) != count:
        raise BadArguments(f'{path}: expected {count} matrices, '
                           f'found {len(blocks)}')
    return blocks


def _projection(m, tol, what):
    try:
        return pa.Projection.from_matrix(m, tol)
    except (NotAProjection, ValueError) as exc:
        raise BadArguments(f'{what} is not a projection: {exc}') from None


def _emit(args, *matrices):
    _write(args, ''.join(cplxmat.dumps(m) for m in matrices))


def _write(args, text):
    if args.output:
        try:
            with open(args.output, 'w') as fh:
                fh.write(text)
        except OSError as exc:
            raise BadArguments(f'cannot write {args.output}: {exc}') from None
    else:
        sys.stdout.write(text)


def cmd_check(args):
    tol = _tol(args.tol)
    if not 1 <= args.n <= 64 or args.trials < 1:
        raise BadArguments('need 1 <= --n <= 64 and --trials >= 1')
    pairs = []
    if args.input:
        blocks = _read_blocks(args.input)
        if len(blocks) % 2:
            raise BadArguments('--input must hold an even number of matrices')
        for i in range(0, len(blocks), 2):
            p = _projection(blocks[i], tol, f'matrix {i}')
            q = _projection(blocks[i + 1], tol, f'matrix {i + 1}')
            if p.n != q.n or p.rank != q.rank:
                raise BadArguments(f'pair {i // 2} is not an equal-rank pair')
            pairs.append((p, q))
    report = run_suite(args.suite, n=args.n, trials=args.trials,
                       seed=args.seed, tol=tol, pairs=pairs)
    print(report.to_json())
    return EXIT_OK if report.failures == 0 else EXIT_FAIL


def cmd_midpoint(args):
    tol = _tol(args.tol)
    pm, qm = _read_blocks(args.input, 2)
    p, q = _projection(pm, tol, 'p'), _projection(qm, tol, 'q')
    r, cert = tp.find_common_ball(p, q, tol, certificate=True)
    print(f'dist(p, r) = {cert.dist_p:.17g}\ndist(q, r) = {cert.dist_q:.17g}',
          file=sys.stderr)
    _emit(args, r.m)
    return EXIT_OK


def _coords_out(p, coords, tol):
    index = atlas.standard_index_of(p, tol)
    if index is None:
        return coords.x
    rows, comp = list(index.indices), list(index.complement)
    return coords.x[np.ix_(comp, rows)]


def _coords_in(p, m, tol):
    index = atlas.standard_index_of(p, tol)
    if index is not None and m.shape == (index.n - index.k, index.k) \
            and m.shape != p.m.shape:
        x = np.zeros(p.m.shape, dtype=complex)
        x[np.ix_(list(index.complement), list(index.indices))] = m
        m = x
    try:
        return atlas.AffineCoordinates(p, m)
    except ValueError as exc:
        raise BadArguments(f'coordinates: {exc}') from None


def cmd_chart(args):
    tol = _tol(args.tol)
    if args.action == 'coords':
        pm, qm = _read_blocks(args.input, 2)
        p, q = _projection(pm, tol, 'basepoint'), _projection(qm, tol, 'q')
        _emit(args, _coords_out(p, atlas.phi(p, q, tol), tol))
    elif args.action == 'reconstruct':
        pm, xm = _read_blocks(args.input, 2)
        p = _projection(pm, tol, 'basepoint')
        _emit(args, atlas.phi_inverse(p, _coords_in(p, xm, tol), tol).m)
    else:
        p1m, p2m, xm = _read_blocks(args.input, 3)
        p1 = _projection(p1m, tol, 'first basepoint')
        p2 = _projection(p2m, tol, 'second basepoint')
        y = atlas.chart_transition(p1, p2, _coords_in(p1, xm, tol), tol)
        _emit(args, _coords_out(p2, y, tol))
    return EXIT_OK


def cmd_path(args):
    tol = _tol(args.tol)
    if args.samples < 1:
        raise BadArguments('--samples must be positive')
    pm, qm = _read_blocks(args.input, 2)
    p, q = _projection(pm, tol, 'p'), _projection(qm, tol, 'q')
    ts = np.linspace(0.0, 1.0, args.samples + 1)
    _emit(args, *(g.m for g in pa.sample_projection_path(p, q, ts, tol)))
    return EXIT_OK


def cmd_halmos(args):
    tol = _tol(args.tol)
    pm, qm = _read_blocks(args.input, 2)
    p, q = _projection(pm, tol, 'p'), _projection(qm, tol, 'q')
    h = tp.halmos_form(p, q, tol)
    lines = ['dims ' + ' '.join(str(d) for d in h.dims)]
    lines.extend(format(float(a), '.17g') for a in h.angles)
    _write(args, '\n'.join(lines) + '\n')
    return EXIT_OK


def cmd_dedekind(args):
    if args.action == 'demo':
        p, q, report = lattice.dedekind_pair()
        print(f'p = {p}')
        print(f'q = {q}')
        for name, value in dataclasses.asdict(report).items():
            print(f'{name}: {str(value).lower()}')
        named = [('p', p), ('q', q), ('p_perp', lattice.complement(p)),
                 ('q_perp', lattice.complement(q))]
        for name, s in named:
            print(f'support {name}: ' + ' '.join(map(str, s.support(16))))
        return EXIT_OK if report.ok else EXIT_FAIL
    if args.k < 2:
        raise BadArguments('--k must be at least 2')
    family = lattice.ball_disjoint_family(args.k)
    for k, pk in enumerate(family, start=1):
        print(json.dumps({'k': k, 'projection': str(pk),
                          'cardinality': str(lattice.card(pk)),
                          'support': pk.support(16)}))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog='projgeom', description='Projection geometry toolkit.')
    sub = parser.add_subparsers(dest='command', required=True)

    def common(sp, io=True):
        sp.add_argument('--tol', action='append', metavar='NAME=VALUE',
                        help='override a tolerance (rank_tol, residual_tol, '
                             'inv_tol); repeatable')
        if io:
            sp.add_argument('--input', help='CPLXMAT v1 file ("-" for stdin)')
            sp.add_argument('--output', help='write result here, not stdout')

    sp = sub.add_parser('check', help='run an invariant suite')
    sp.add_argument('suite', choices=SUITES + ('all',))
    sp.add_argument('--n', type=int, default=8)
    sp.add_argument('--trials', type=int, default=100)
    sp.add_argument('--seed', type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser('midpoint', help='projection near both p and q')
    common(sp)
    sp.set_defaults(func=cmd_midpoint)

    sp = sub.add_parser('chart', help='affine chart maps')
    sp.add_argument('action', choices=('coords', 'reconstruct', 'transition'))
    common(sp)
    sp.set_defaults(func=cmd_chart)

    sp = sub.add_parser('path', help='projection path from p to q')
    sp.add_argument('--samples', type=int, default=10)
    common(sp)
    sp.set_defaults(func=cmd_path)

    sp = sub.add_parser('halmos', help='angles of a projection pair')
    common(sp)
    sp.set_defaults(func=cmd_halmos)

    sp = sub.add_parser('dedekind', help='lattice model demos')
    sp.add_argument('action', choices=('demo', 'family'))
    sp.add_argument('--k', type=int, default=4)
    sp.set_defaults(func=cmd_dedekind)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BadArguments as exc:
        print(f'projgeom: error: {exc}', file=sys.stderr)
        return EXIT_USAGE
    except ProjGeomError as exc:
        print(f'projgeom: {type(exc).__name__}: {exc}', file=sys.stderr)
        return EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
