'''Benchmark cells: one Newton-CondG run per (problem, gamma) pair.

Cells either run in order (run_benchmark) or on a twisted thread pool
(run_benchmark_deferred). Rows always come back in (problem, gamma) order.
'''
import logging
from dataclasses import dataclass
from twisted.internet import defer  # @UnresolvedImport
from twisted.internet import threads  # @UnresolvedImport
from twisted.python import log  # @UnresolvedImport
from twisted.python.threadpool import ThreadPool  # @UnresolvedImport
from . import statusmap
from .defaults import DEFAULT_WORKERS
from .problems import default_registry
from .problems import initial_point
from .solver import SolverConfig
from .solver import solve
from .tracepackage import pack_report


@dataclass(frozen=True)
class BenchmarkRow:
    '''One line of the report. Numerics are None for failed runs.'''
    problem_id: str
    gamma: float
    status: str
    iterations: int = None
    wall_time_seconds: float = None
    final_residual_inf: float = None

    @property
    def converged(self):
        return self.status == statusmap.TEXT_SOLVE_MAP[
            statusmap.SOLVE_CONVERGED]


@dataclass(frozen=True)
class Cell:
    problem: object
    gamma: float
    analytic_jacobian: bool = False


def make_cells(selection, gammas, registry=None, gamma_overrides=True,
               analytic_jacobian=False):
    '''Expand a selection ("all" or a list of ids) into cells.

    Raises UnknownProblem for ids that are not registered.
    '''
    if registry is None:
        registry = default_registry()
    if selection == 'all':
        problems = list(registry)
    else:
        problems = [registry.get(pid) for pid in selection]
        problems.sort(key=lambda problem: registry.index(problem.id))

    cells = []
    for problem in problems:
        seen = set()
        for gamma in gammas:
            if gamma_overrides:
                gamma = problem.effective_gamma(gamma)
            if gamma in seen:
                continue
            seen.add(gamma)
            cells.append(Cell(problem, gamma, analytic_jacobian))
    return cells


def run_cell(cell, config, trace_sink=None):
    problem = cell.problem
    system = problem.system_with_jacobian() if cell.analytic_jacobian \
        else problem.system
    x0 = initial_point(problem, cell.gamma)

    report = solve(system, problem.box, x0, config)

    log.msg('{} gamma={}: {} after {} iterations'.format(
        problem.id, cell.gamma, report.status_text, report.iterations),
        logLevel=logging.DEBUG)

    if trace_sink is not None:
        trace_sink(pack_report(report, problem=problem.id, gamma=cell.gamma))

    if not report.converged:
        return BenchmarkRow(problem.id, cell.gamma, report.status_text)
    return BenchmarkRow(
        problem.id,
        cell.gamma,
        report.status_text,
        iterations=report.iterations,
        wall_time_seconds=report.wall_time,
        final_residual_inf=report.final_residual_inf)


def run_benchmark(selection, gammas, config=None, registry=None,
                  gamma_overrides=True, analytic_jacobian=False,
                  trace_sink=None):
    '''Run every (problem, gamma) cell in order and return the rows.

    trace_sink, when given, receives one packed trace (bytes) per cell.
    '''
    if config is None:
        config = SolverConfig()
    cells = make_cells(selection, gammas, registry, gamma_overrides,
                       analytic_jacobian)
    return [run_cell(cell, config, trace_sink) for cell in cells]


@defer.inlineCallbacks
def run_benchmark_deferred(reactor, selection, gammas, config=None,
                           registry=None, gamma_overrides=True,
                           analytic_jacobian=False, trace_sink=None,
                           workers=DEFAULT_WORKERS):
    '''Same as run_benchmark() but computes the cells on a thread pool.

    Returns a Deferred firing with the rows in (problem, gamma) order,
    independent of completion order. trace_sink is called from the
    reactor thread.
    '''
    if config is None:
        config = SolverConfig()
    cells = make_cells(selection, gammas, registry, gamma_overrides,
                       analytic_jacobian)

    pool = ThreadPool(minthreads=1, maxthreads=max(1, workers),
                      name='newton-condg-bench')
    pool.start()

    packed = [None] * len(cells)

    def sink_for(i):
        def sink(data):
            packed[i] = data
        return sink

    try:
        deferreds = [
            threads.deferToThreadPool(
                reactor, pool, run_cell, cell, config,
                sink_for(i) if trace_sink is not None else None)
            for i, cell in enumerate(cells)]
        rows = yield defer.gatherResults(deferreds, consumeErrors=True)
    except defer.FirstError as e:
        log.err(e.subFailure, 'Benchmark cell failed')
        e.subFailure.raiseException()
    finally:
        pool.stop()

    if trace_sink is not None:
        for data in packed:
            trace_sink(data)
    return rows
