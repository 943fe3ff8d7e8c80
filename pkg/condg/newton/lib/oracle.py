'''Feasible sets with exact linear minimization oracles and the CondG
procedure built on top of them.

'''
import logging
from dataclasses import dataclass
import numpy as np
from twisted.python import log  # @UnresolvedImport
from . import statusmap
from .defaults import DEFAULT_CONDG_MAX_INNER
from .defaults import DEFAULT_FEAS_TOL
from .exceptions import DimensionMismatch
from .exceptions import InfeasibleWarmStart
from .linalg import as_vector


class FeasibleSet(object):
    '''Convex compact set C. Instances are immutable.'''

    __slots__ = ()

    dimension = None

    def __setattr__(self, name, value):
        raise AttributeError('{} is immutable'.format(type(self).__name__))

    def lmo(self, c):
        raise NotImplementedError

    def project(self, y):
        raise NotImplementedError

    def contains(self, x, tol=DEFAULT_FEAS_TOL):
        raise NotImplementedError

    def _check(self, v):
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dimension,):
            raise DimensionMismatch(
                'expecting a vector of length {}, got shape {}'.format(
                    self.dimension, v.shape))
        return v


class Box(FeasibleSet):

    __slots__ = ('lower', 'upper')

    def __init__(self, lower, upper):
        lower = as_vector(lower)
        upper = as_vector(upper, lower.size)
        if np.any(lower > upper):
            raise ValueError('box bounds require lower <= upper')
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    @classmethod
    def uniform(cls, lower, upper, n):
        return cls(np.full(n, float(lower)), np.full(n, float(upper)))

    @property
    def dimension(self):
        return self.lower.size

    def lmo(self, c):
        c = self._check(c)
        # c_i = 0 picks the lower bound
        return np.where(c < 0, self.upper, self.lower)

    def project(self, y):
        return np.clip(self._check(y), self.lower, self.upper)

    def contains(self, x, tol=DEFAULT_FEAS_TOL):
        x = self._check(x)
        lo = self.lower - tol * np.maximum(1.0, np.abs(self.lower))
        hi = self.upper + tol * np.maximum(1.0, np.abs(self.upper))
        return bool(np.all(x >= lo) and np.all(x <= hi))

    def __repr__(self):
        return 'Box(n={})'.format(self.dimension)


class Simplex(FeasibleSet):
    '''{x >= 0, sum(x) = radius}'''

    __slots__ = ('n', 'radius')

    def __init__(self, n, radius=1.0):
        if not radius > 0:
            raise ValueError('simplex radius must be positive')
        object.__setattr__(self, 'n', int(n))
        object.__setattr__(self, 'radius', float(radius))

    @property
    def dimension(self):
        return self.n

    def lmo(self, c):
        c = self._check(c)
        u = np.zeros(self.n)
        # argmin returns the smallest index on ties
        u[int(np.argmin(c))] = self.radius
        return u

    def project(self, y):
        y = self._check(y)
        y_decr = np.sort(y)[::-1]
        y_cumsum = np.cumsum(y_decr)
        theta = (y_cumsum - self.radius) / np.arange(1, y.size + 1)
        idx = np.max(np.argwhere(y_decr - theta > 0).ravel())
        return np.maximum(y - theta[idx], 0.0)

    def contains(self, x, tol=DEFAULT_FEAS_TOL):
        x = self._check(x)
        scale = max(1.0, self.radius)
        return bool(
            np.all(x >= -tol * scale) and
            abs(x.sum() - self.radius) <= tol * scale * max(1, self.n))

    def __repr__(self):
        return 'Simplex(n={}, radius={})'.format(self.n, self.radius)


class Ball(FeasibleSet):

    __slots__ = ('center', 'radius')

    def __init__(self, center, radius):
        if not radius > 0:
            raise ValueError('ball radius must be positive')
        center = as_vector(center)
        center.setflags(write=False)
        object.__setattr__(self, 'center', center)
        object.__setattr__(self, 'radius', float(radius))

    @property
    def dimension(self):
        return self.center.size

    def lmo(self, c):
        c = self._check(c)
        norm = np.linalg.norm(c)
        if norm == 0.0:
            return self.center.copy()
        return self.center - self.radius * c / norm

    def project(self, y):
        y = self._check(y)
        d = y - self.center
        norm = np.linalg.norm(d)
        if norm <= self.radius:
            return y.copy()
        return self.center + self.radius * d / norm

    def contains(self, x, tol=DEFAULT_FEAS_TOL):
        x = self._check(x)
        return bool(
            np.linalg.norm(x - self.center) <=
            self.radius * (1.0 + tol) + tol)

    def __repr__(self):
        return 'Ball(n={}, radius={})'.format(self.dimension, self.radius)


@dataclass(frozen=True)
class CondGResult:
    point: np.ndarray
    inner_iterations: int
    final_gap: float
    status: int

    @property
    def gap_reached(self):
        return self.status == statusmap.CONDG_GAP_REACHED


def lmo(feasible_set, c):
    '''Exact minimizer of <c, u> over the set.'''
    return feasible_set.lmo(c)


def project(feasible_set, y):
    '''Exact Euclidean projection of y onto the set.'''
    return feasible_set.project(y)


def contains(feasible_set, x, tol=DEFAULT_FEAS_TOL):
    return feasible_set.contains(x, tol)


def _fw_direction(feasible_set, z, y):
    grad = z - y
    u = feasible_set.lmo(grad)
    return grad, u - z


def condg(y, x, eps, feasible_set, max_inner=DEFAULT_CONDG_MAX_INNER,
          feas_tol=DEFAULT_FEAS_TOL, accept_target=True):
    '''Approximately project y onto C, warm started at x in C.

    Runs conditional gradient steps with exact line search on
    1/2 ||z - y||^2 until the Frank-Wolfe gap
    g*_t = min_u <z_t - y, u - z_t> satisfies g*_t >= -eps, or until
    max_inner oracle calls have been made.

    With accept_target (the default) a target y that already lies in C is
    returned as it is, at inner iteration 1 with gap 0. Pass
    accept_target=False to always start the steps at x.

    final_gap is the gap at the returned point, also on the cap path.
    '''
    assert eps >= 0, 'eps should be nonnegative'
    assert max_inner >= 1, 'max_inner should be at least 1'

    y = feasible_set._check(y)
    z = feasible_set._check(x).copy()
    if not feasible_set.contains(z, feas_tol):
        raise InfeasibleWarmStart(
            'warm start is not in {!r}'.format(feasible_set))

    if accept_target and feasible_set.contains(y, 0.0):
        return CondGResult(y.copy(), 1, 0.0, statusmap.CONDG_GAP_REACHED)

    for t in range(1, max_inner + 1):
        grad, d = _fw_direction(feasible_set, z, y)
        gap = float(np.dot(grad, d))

        # must be tested before the step size; u == z gives gap 0
        if gap >= -eps:
            return CondGResult(z, t, gap, statusmap.CONDG_GAP_REACHED)

        alpha = min(1.0, -gap / float(np.dot(d, d)))
        z = z + alpha * d

    grad, d = _fw_direction(feasible_set, z, y)
    gap = float(np.dot(grad, d))

    log.msg('CondG stopped at the iteration cap ({}) with gap {:.3e} '
            '(eps {:.3e})'.format(max_inner, gap, eps),
            logLevel=logging.DEBUG)
    return CondGResult(z, max_inner, gap, statusmap.CONDG_ITERATION_CAP)
