'''Command line interface.

    newton-condg [--problems Pb1,Pb23 | all] [--gamma 1,2,3] [--theta 1e-5]
                 [--tol 1e-6] [--max-iter 300] [--condg-max-iter 300]
                 [--format table|csv] [--output PATH] [--workers N] ...
    newton-condg radius --family holder --K 1 --p 1 [--lambda 0]
                 [--kappa inf]

Exit code 0 when every selected run converged, 2 when any failed and 1
on usage errors.
'''
import argparse
import csv
import io
import math
import sys
from twisted.python import log  # @UnresolvedImport
from . import statusmap
from .bench import BenchmarkRow
from .bench import run_benchmark
from .bench import run_benchmark_deferred
from .defaults import DEFAULT_CONDG_MAX_INNER
from .defaults import DEFAULT_GAMMAS
from .defaults import DEFAULT_MAX_OUTER
from .defaults import DEFAULT_RESIDUAL_TOL
from .defaults import DEFAULT_THETA
from .defaults import DEFAULT_WORKERS
from .exceptions import OutOfBox
from .exceptions import UnknownProblem
from .majorant import Holder
from .majorant import Smale
from .majorant import radius
from .problems import default_registry
from .solver import ConstantTheta
from .solver import SolverConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2

CSV_HEADER = ('problem', 'gamma', 'status', 'iterations', 'time_s',
              'residual_inf')

FAILURE_MARK = '∗'

TABLE_HEADER = ('Problem', 'gamma', 'Iter', 'Time', '||F||inf', 'Status')


def format_sci(value):
    '''Two significant digits, exponent without padding: 2.7e-8.'''
    if value is None:
        return ''
    if not math.isfinite(value):
        return str(value)
    mantissa, exponent = '{:.1e}'.format(value).split('e')
    return '{}e{:+d}'.format(mantissa, int(exponent))


def format_gamma(gamma):
    return '{:g}'.format(gamma)


def _csv_fields(row):
    return (
        row.problem_id,
        format_gamma(row.gamma),
        row.status,
        '' if row.iterations is None else str(row.iterations),
        '' if row.wall_time_seconds is None else repr(row.wall_time_seconds),
        format_sci(row.final_residual_inf))


def _table_fields(row):
    return (
        row.problem_id,
        format_gamma(row.gamma),
        FAILURE_MARK if row.iterations is None else str(row.iterations),
        format_sci(row.wall_time_seconds),
        format_sci(row.final_residual_inf),
        row.status)


def emit(rows, fmt='table'):
    '''Render rows as csv or as an aligned table.'''
    if fmt == 'csv':
        out = io.StringIO()
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(_csv_fields(row))
        return out.getvalue()

    if fmt != 'table':
        raise ValueError('unknown format: {}'.format(fmt))

    lines = [TABLE_HEADER] + [_table_fields(row) for row in rows]
    widths = [max(len(line[i]) for line in lines)
              for i in range(len(TABLE_HEADER))]
    return ''.join(
        '  '.join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() +
        '\n' for line in lines)


def _optional(text, tipe):
    return None if text == '' else tipe(text)


def parse_csv(text):
    '''Read rows written by emit(rows, 'csv').

    The residual column comes back at the two significant digits it was
    written with; every other column is exact.
    '''
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        return []
    if tuple(header) != CSV_HEADER:
        raise ValueError('unexpected csv header: {}'.format(header))
    rows = []
    for fields in reader:
        problem, gamma, status, iterations, time_s, residual = fields
        if status not in statusmap.SOLVE_TEXT_MAP:
            raise ValueError('unknown status: {}'.format(status))
        gamma = float(gamma)
        rows.append(BenchmarkRow(
            problem,
            int(gamma) if gamma.is_integer() else gamma,
            status,
            iterations=_optional(iterations, int),
            wall_time_seconds=_optional(time_s, float),
            final_residual_inf=_optional(residual, float)))
    return rows


class _ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{}: error: {}\n'.format(self.prog, message))


def _gamma_list(text):
    try:
        values = [float(part) for part in text.split(',') if part]
    except ValueError:
        raise argparse.ArgumentTypeError('invalid gamma list: ' + text)
    return [int(v) if v.is_integer() else v for v in values]


def _problem_list(text):
    if text == 'all':
        return 'all'
    return [part.strip() for part in text.split(',') if part.strip()]


def build_parser():
    parser = _ArgumentParser(
        prog='newton-condg',
        description='Newton conditional gradient benchmark runner')
    sub = parser.add_subparsers(dest='command')

    bench = sub.add_parser('bench', help='run the benchmark protocol')
    bench.add_argument('--problems', type=_problem_list, default='all',
                       help='comma separated problem ids or "all"')
    bench.add_argument('--gamma', type=_gamma_list,
                       default=list(DEFAULT_GAMMAS),
                       help='comma separated initial point factors')
    bench.add_argument('--theta', type=float, default=DEFAULT_THETA,
                       help='constant theta_k')
    bench.add_argument('--tol', type=float, default=DEFAULT_RESIDUAL_TOL,
                       help='stop when ||F||inf is below this value')
    bench.add_argument('--max-iter', type=int, default=DEFAULT_MAX_OUTER)
    bench.add_argument('--condg-max-iter', type=int,
                       default=DEFAULT_CONDG_MAX_INNER)
    bench.add_argument('--condg-steps-only', action='store_true',
                       help='always take CondG steps from x_k, also when '
                            'the Newton point is already feasible')
    bench.add_argument('--format', choices=('table', 'csv'),
                       default='table')
    bench.add_argument('--output', help='write the report to this path')
    bench.add_argument('--trace-file',
                       help='write packed iteration traces to this path')
    bench.add_argument('--workers', type=int, default=DEFAULT_WORKERS)
    bench.add_argument('--analytic-jacobian', action='store_true',
                       help='use shipped Jacobians instead of finite '
                            'differences')
    bench.add_argument('--no-gamma-overrides', action='store_true',
                       help='ignore per-problem gamma replacements')
    bench.add_argument('--list', action='store_true',
                       help='list the registered problems and exit')
    bench.add_argument('--verbose', action='store_true')

    rad = sub.add_parser('radius', help='convergence radius calculator')
    rad.add_argument('--family', choices=('holder', 'smale'),
                     required=True)
    rad.add_argument('--K', type=float)
    rad.add_argument('--p', type=float)
    rad.add_argument('--gamma-smale', type=float)
    rad.add_argument('--lambda', dest='lam', type=float, default=0.0)
    rad.add_argument('--kappa', type=float, default=math.inf)
    rad.add_argument('--verbose', action='store_true')
    return parser


def _list_problems(out):
    for problem in default_registry():
        out.write('{:<6} n={:<4} {} [{}]\n'.format(
            problem.id, problem.n, problem.name, problem.source))


def _run_radius(parser, args, out):
    try:
        if args.family == 'holder':
            if args.K is None or args.p is None:
                parser.error('--family holder needs --K and --p')
            model = Holder(args.K, args.p)
        else:
            if args.gamma_smale is None:
                parser.error('--family smale needs --gamma-smale')
            model = Smale(args.gamma_smale)
        bundle = radius(model, args.lam, args.kappa)
    except ValueError as e:
        parser.error(str(e))
    out.write('nu={!r}\nrho={!r}\nr={!r}\nlambda={!r}\nkappa={!r}\n'.format(
        bundle.nu, bundle.rho, bundle.r, bundle.lam, bundle.kappa))
    return EXIT_OK


def _run_deferred(kwargs, workers):
    from twisted.internet import task  # @UnresolvedImport
    rows = []

    def main(reactor):
        d = run_benchmark_deferred(reactor, workers=workers, **kwargs)
        d.addCallback(rows.extend)
        return d

    try:
        task.react(main)
    except SystemExit as e:
        if e.code:
            raise
    return rows


def _run_bench(parser, args, out):
    if args.list:
        _list_problems(out)
        return EXIT_OK

    try:
        config = SolverConfig(
            theta_schedule=ConstantTheta(args.theta),
            residual_tol=args.tol,
            max_outer=args.max_iter,
            condg_max_inner=args.condg_max_iter,
            condg_accept_target=not args.condg_steps_only)
    except (ValueError, AssertionError) as e:
        parser.error(str(e))

    packed = []
    kwargs = dict(
        selection=args.problems,
        gammas=args.gamma,
        config=config,
        gamma_overrides=not args.no_gamma_overrides,
        analytic_jacobian=args.analytic_jacobian,
        trace_sink=packed.append if args.trace_file else None)

    try:
        if args.workers > 1:
            rows = _run_deferred(kwargs, args.workers)
        else:
            rows = run_benchmark(**kwargs)
    except UnknownProblem as e:
        parser.error('unknown problem: {}'.format(e.args[0]))
    except OutOfBox as e:
        parser.error(str(e))

    text = emit(rows, args.format)
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        out.write(text)

    if args.trace_file:
        with open(args.trace_file, 'wb') as f:
            f.write(b''.join(packed))

    return EXIT_OK if all(row.converged for row in rows) else EXIT_FAILURE


def main(argv=None, out=None):
    if argv is None:
        argv = sys.argv[1:]
    if out is None:
        out = sys.stdout
    argv = list(argv)
    if not argv or argv[0] not in ('bench', 'radius', '-h', '--help'):
        argv.insert(0, 'bench')

    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        log.startLogging(sys.stderr)

    if args.command == 'radius':
        return _run_radius(parser, args, out)
    return _run_bench(parser, args, out)


def run():
    sys.exit(main())


if __name__ == '__main__':
    run()
