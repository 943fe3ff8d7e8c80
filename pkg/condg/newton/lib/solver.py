'''Newton-CondG method for F(x) = 0, x in C.

Each outer iteration takes a full Newton step y_k = x_k + s_k and pulls
y_k back onto C with the CondG procedure warm started at x_k, using the
tolerance theta_k * ||s_k||^2.

Exception handling:

    - InfeasibleWarmStart
        Raised by solve() when x0 is not in C. Nothing was evaluated.
    - DimensionMismatch
        Raised when x0, the set and the system disagree on n.

    Breakdowns during the iteration (singular Jacobian, leaving the
    domain of F, hitting the iteration cap and, when configured as
    fatal, hitting the CondG cap) are not raised but reported through
    SolveReport.status.
'''
import logging
import time
from dataclasses import dataclass
from dataclasses import field
import numpy as np
from twisted.python import log  # @UnresolvedImport
from . import statusmap
from .defaults import DEFAULT_CONDG_MAX_INNER
from .defaults import DEFAULT_FEAS_TOL
from .defaults import DEFAULT_MAX_OUTER
from .defaults import DEFAULT_RESIDUAL_TOL
from .defaults import DEFAULT_THETA
from .exceptions import CondGCapExceeded
from .exceptions import DimensionMismatch
from .exceptions import DomainViolation
from .exceptions import InfeasibleWarmStart
from .exceptions import SingularJacobian
from .exceptions import SingularMatrix
from .linalg import as_vector
from .linalg import fd_jacobian
from .linalg import lu_solve
from .linalg import norm2
from .linalg import norm_inf
from .oracle import condg


class NonlinearSystem(object):
    '''The map F: Omega -> R^n.

    Arguments:
        n: Dimension.
        F: Callable taking and returning a length-n array.

    Keyword arguments:
        jacobian: Analytic Jacobian. When given it is used instead of
                  finite differences.
        domain: Predicate representing Omega. F must only be evaluated
                where it returns True. (default: everywhere)
    '''

    __slots__ = ('n', 'F', 'jacobian', 'domain')

    def __init__(self, n, F, jacobian=None, domain=None):
        self.n = int(n)
        self.F = F
        self.jacobian = jacobian
        self.domain = domain

    def in_domain(self, x):
        return self.domain is None or bool(self.domain(x))

    def evaluate(self, x):
        if not self.in_domain(x):
            raise DomainViolation('x is outside the domain of F')
        fx = np.asarray(self.F(x), dtype=float)
        if fx.shape != (self.n,):
            raise DimensionMismatch(
                'F returned shape {}, expecting ({},)'.format(
                    fx.shape, self.n))
        if not np.all(np.isfinite(fx)):
            raise DomainViolation('F is not finite at x')
        return fx

    def jacobian_at(self, x, fx=None):
        if self.jacobian is not None:
            if not self.in_domain(x):
                raise DomainViolation('x is outside the domain of F')
            return np.asarray(self.jacobian(x), dtype=float)
        return fd_jacobian(self.F, x, fx=fx, domain=self.domain)

    def with_jacobian(self, jacobian):
        return NonlinearSystem(self.n, self.F, jacobian, self.domain)


class ConstantTheta(object):
    '''theta_k = value'''

    __slots__ = ('value',)

    def __init__(self, value=DEFAULT_THETA):
        assert value >= 0, 'theta should be nonnegative'
        self.value = float(value)

    def __call__(self, k):
        return self.value

    def __repr__(self):
        return 'ConstantTheta({!r})'.format(self.value)


class GeometricTheta(object):
    '''theta_k = scale * ratio ** k'''

    __slots__ = ('scale', 'ratio')

    def __init__(self, scale, ratio):
        assert scale >= 0 and ratio >= 0, \
            'scale and ratio should be nonnegative'
        self.scale = float(scale)
        self.ratio = float(ratio)

    def __call__(self, k):
        return self.scale * self.ratio ** k

    def __repr__(self):
        return 'GeometricTheta({!r}, {!r})'.format(self.scale, self.ratio)


@dataclass(frozen=True)
class SolverConfig:
    '''Settings for solve().

    theta_schedule maps k to theta_k >= 0. The local theory asks for
    theta_k <= lambda^2 / 2 with lambda < 1; this is not enforced.

    condg_accept_target lets CondG return a Newton point that already
    lies in C without taking steps (see oracle.condg).
    '''
    theta_schedule: object = field(default_factory=ConstantTheta)
    residual_tol: float = DEFAULT_RESIDUAL_TOL
    max_outer: int = DEFAULT_MAX_OUTER
    condg_max_inner: int = DEFAULT_CONDG_MAX_INNER
    condg_eps_floor: float = 0.0
    condg_cap_fatal: bool = False
    condg_accept_target: bool = True
    feas_tol: float = DEFAULT_FEAS_TOL
    pivot_tol: float = None

    def __post_init__(self):
        if not self.residual_tol > 0:
            raise ValueError('residual_tol should be positive')
        if self.condg_eps_floor < 0:
            raise ValueError('condg_eps_floor should be nonnegative')
        if self.max_outer < 0 or self.condg_max_inner < 1:
            raise ValueError('invalid iteration caps')

    def theta(self, k):
        theta = float(self.theta_schedule(k))
        if theta < 0:
            raise ValueError('theta_{} = {} is negative'.format(k, theta))
        return theta


@dataclass(frozen=True)
class IterationRecord:
    '''One traced iterate x_k. The step fields are None for the last one.

    residual_inf is nan when F could not be evaluated at x.
    '''
    k: int
    x: np.ndarray
    residual_inf: float
    step_norm: float = None
    condg_eps: float = None
    condg_inner: int = None
    condg_gap: float = None
    condg_status: int = None


@dataclass
class SolveReport:
    status: int
    iterations: int
    final_point: np.ndarray
    final_residual_inf: float
    trace: list
    wall_time: float = 0.0

    @property
    def converged(self):
        return self.status == statusmap.SOLVE_CONVERGED

    @property
    def status_text(self):
        return statusmap.TEXT_SOLVE_MAP[self.status]

    @property
    def condg_caps(self):
        return sum(1 for rec in self.trace
                   if rec.condg_status == statusmap.CONDG_ITERATION_CAP)


def newton_step(system, x, fx=None, pivot_tol=None):
    '''Return (s, y) with F'(x) s = -F(x) and y = x + s.'''
    x = as_vector(x, system.n)
    if fx is None:
        fx = system.evaluate(x)
    jac = system.jacobian_at(x, fx)
    try:
        s = lu_solve(jac, -fx, pivot_tol)
    except SingularMatrix as e:
        raise SingularJacobian(str(e))
    return s, x + s


def solve(system, feasible_set, x0, config=None):
    '''Run Newton-CondG from x0 and return a SolveReport.

    see module doc-string for info on exception handling.
    '''
    if config is None:
        config = SolverConfig()

    if feasible_set.dimension != system.n:
        raise DimensionMismatch(
            'set dimension {} differs from system dimension {}'.format(
                feasible_set.dimension, system.n))
    x = as_vector(x0, system.n).copy()
    if not feasible_set.contains(x, config.feas_tol):
        raise InfeasibleWarmStart('x0 is not in {!r}'.format(feasible_set))

    start = time.perf_counter()
    trace = []
    k = 0
    residual = float('nan')

    while True:
        try:
            fx = system.evaluate(x)
        except DomainViolation as e:
            # residual is undefined outside the domain
            residual = float('nan')
            trace.append(IterationRecord(k, x, residual))
            status = statusmap.SOLVE_DOMAIN_VIOLATION
            log.msg('Iteration {}: {}'.format(k, e), logLevel=logging.DEBUG)
            break

        residual = norm_inf(fx)

        if residual <= config.residual_tol:
            trace.append(IterationRecord(k, x, residual))
            status = statusmap.SOLVE_CONVERGED
            break

        if k >= config.max_outer:
            trace.append(IterationRecord(k, x, residual))
            status = statusmap.SOLVE_MAX_ITERATIONS
            break

        try:
            s, y = newton_step(system, x, fx, config.pivot_tol)
        except SingularJacobian as e:
            trace.append(IterationRecord(k, x, residual))
            status = statusmap.SOLVE_SINGULAR_JACOBIAN
            log.msg('Iteration {}: singular Jacobian ({})'.format(k, e),
                    logLevel=logging.DEBUG)
            break
        except DomainViolation as e:
            trace.append(IterationRecord(k, x, residual))
            status = statusmap.SOLVE_DOMAIN_VIOLATION
            log.msg('Iteration {}: {}'.format(k, e), logLevel=logging.DEBUG)
            break

        step_norm = norm2(s)
        eps = max(config.theta(k) * step_norm ** 2, config.condg_eps_floor)
        result = condg(y, x, eps, feasible_set, config.condg_max_inner,
                       config.feas_tol, config.condg_accept_target)

        trace.append(IterationRecord(
            k, x, residual,
            step_norm=step_norm,
            condg_eps=eps,
            condg_inner=result.inner_iterations,
            condg_gap=result.final_gap,
            condg_status=result.status))

        log.msg('Iteration {}: |F|inf={:.3e} |s|={:.3e} condg={} ({} inner, '
                'gap {:.3e})'.format(
                    k, residual, step_norm,
                    statusmap.TEXT_CONDG_MAP[result.status],
                    result.inner_iterations, result.final_gap),
                logLevel=logging.DEBUG)

        x = result.point
        k += 1

        if not result.gap_reached:
            if config.condg_cap_fatal:
                try:
                    residual = norm_inf(system.evaluate(x))
                except DomainViolation:
                    residual = float('nan')
                trace.append(IterationRecord(k, x, residual))
                status = statusmap.SOLVE_CONDG_CAP_EXCEEDED
                break
            log.msg('CondG reached its cap of {} inner iterations at outer '
                    'iteration {}, continuing with the capped point'.format(
                        config.condg_max_inner, k - 1),
                    logLevel=logging.WARNING)

    return SolveReport(
        status=status,
        iterations=k,
        final_point=x,
        final_residual_inf=residual,
        trace=trace,
        wall_time=time.perf_counter() - start)


def error_trace(report, root):
    '''||x_k - x_*|| for every traced iterate.'''
    root = np.asarray(root, dtype=float)
    return np.array([norm2(rec.x - root) for rec in report.trace])


def require_converged(report):
    '''Return the final point of a converged report, raise otherwise.'''
    if report.status == statusmap.SOLVE_CONDG_CAP_EXCEEDED:
        raise CondGCapExceeded(
            'CondG cap exceeded after {} iterations'.format(
                report.iterations))
    if not report.converged:
        raise RuntimeError('Newton-CondG stopped with status {}'.format(
            report.status_text))
    return report.final_point
