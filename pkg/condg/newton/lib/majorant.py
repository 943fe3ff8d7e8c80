'''Majorant functions and the scalar quantities derived from them.

A majorant f: [0, R) -> R satisfies f(0) = 0, f'(0) = -1 (h1) and has a
strictly increasing derivative (h2). From it we get

    nu      sup{t in [0, R): f'(t) < 0}
    n_f     t - f(t) / f'(t)                  (scalar Newton map)
    rho     sup{d in (0, nu): (1 + lam)|n_f(t)|/t + lam < 1 on (0, d)}
    r       min(rho, kappa)                   (convergence radius)
    t_k     t_{k+1} = (1 + sqrt(2 theta_k))|n_f(t_k)| + sqrt(2 theta_k) t_k

Hoelder and Smale models have closed forms; Custom models fall back to
bisection (scipy.optimize.bisect) and grid checks.
'''
import logging
import math
from dataclasses import dataclass
import numpy as np
from scipy.optimize import bisect
from twisted.python import log  # @UnresolvedImport
from .defaults import DEFAULT_BISECT_RTOL
from .defaults import DEFAULT_GRID_SIZE
from .exceptions import H3Violated
from .exceptions import LambdaTooLarge
from .exceptions import NoSignChange
from .exceptions import OutOfDomain
from .exceptions import T0OutOfRange

# largest bracket tried when searching nu on an unbounded [0, R)
_MAX_BRACKET = 2.0 ** 64

# scipy.optimize.bisect refuses rtol below 4 eps
_MIN_RTOL = 4.0 * np.finfo(float).eps


class MajorantModel(object):
    '''Scalar majorant f with derivative f_prime. Instances are immutable.'''

    __slots__ = ()

    R = math.inf
    exponent = None

    def __setattr__(self, name, value):
        raise AttributeError('{} is immutable'.format(type(self).__name__))

    def f(self, t):
        raise NotImplementedError

    def f_prime(self, t):
        raise NotImplementedError


class Holder(MajorantModel):
    '''f(t) = K t^(p+1) / (p+1) - t'''

    __slots__ = ('K', 'p')

    def __init__(self, K, p):
        if not K > 0:
            raise ValueError('K should be positive')
        if not 0 < p <= 1:
            raise ValueError('p should be in (0, 1]')
        object.__setattr__(self, 'K', float(K))
        object.__setattr__(self, 'p', float(p))

    @property
    def exponent(self):
        return self.p

    def f(self, t):
        return self.K * t ** (self.p + 1) / (self.p + 1) - t

    def f_prime(self, t):
        return self.K * t ** self.p - 1.0

    def __repr__(self):
        return 'Holder(K={!r}, p={!r})'.format(self.K, self.p)


class Smale(MajorantModel):
    '''f(t) = t / (1 - gamma t) - 2t on [0, 1/gamma)'''

    __slots__ = ('gamma',)

    exponent = 1.0

    def __init__(self, gamma):
        if not gamma > 0:
            raise ValueError('gamma should be positive')
        object.__setattr__(self, 'gamma', float(gamma))

    @property
    def R(self):
        return 1.0 / self.gamma

    def f(self, t):
        return t / (1.0 - self.gamma * t) - 2.0 * t

    def f_prime(self, t):
        return 1.0 / (1.0 - self.gamma * t) ** 2 - 2.0

    def __repr__(self):
        return 'Smale(gamma={!r})'.format(self.gamma)


class Custom(MajorantModel):

    __slots__ = ('_f', '_f_prime', 'R', 'exponent')

    def __init__(self, f, f_prime, R=math.inf, exponent=None):
        if not R > 0:
            raise ValueError('R should be positive')
        object.__setattr__(self, '_f', f)
        object.__setattr__(self, '_f_prime', f_prime)
        object.__setattr__(self, 'R', float(R))
        object.__setattr__(self, 'exponent', exponent)

    def f(self, t):
        return float(self._f(t))

    def f_prime(self, t):
        return float(self._f_prime(t))

    def __repr__(self):
        return 'Custom(R={!r})'.format(self.R)


@dataclass(frozen=True)
class RadiusBundle:
    nu: float
    rho: float
    r: float
    lam: float
    kappa: float
    flagged: bool = False


def newton_map(model, t):
    '''n_f(t) = t - f(t) / f'(t), defined on [0, nu).'''
    if t < 0 or t >= nu(model):
        raise OutOfDomain('t = {!r} is outside [0, nu)'.format(t))
    return _newton_map(model, t)


def _newton_map(model, t):
    if t == 0:
        return 0.0
    return t - model.f(t) / model.f_prime(t)


def _rtol_bisect(func, a, b, rtol):
    return bisect(func, a, b, xtol=1e-300, rtol=max(rtol, _MIN_RTOL),
                  maxiter=2000)


def nu(model, rtol=DEFAULT_BISECT_RTOL, strict=False):
    '''sup{t in [0, R): f'(t) < 0}

    For Custom models a bracket [a, b] with f'(a) < 0 <= f'(b) is searched
    and refined by bisection. When f' stays negative on all of [0, R), R is
    returned (or NoSignChange is raised when strict is True).
    '''
    if isinstance(model, Holder):
        return (1.0 / model.K) ** (1.0 / model.p)
    if isinstance(model, Smale):
        return (math.sqrt(2.0) - 1.0) / (math.sqrt(2.0) * model.gamma)

    R = model.R
    if math.isinf(R):
        b = 1.0
        while model.f_prime(b) < 0:
            b *= 2.0
            if b > _MAX_BRACKET:
                return _no_sign_change(R, strict)
    else:
        b = R * (1.0 - rtol)
        if model.f_prime(b) < 0:
            return _no_sign_change(R, strict)

    return _rtol_bisect(
        lambda t: 1.0 if model.f_prime(t) >= 0 else -1.0, 0.0, b, rtol)


def _no_sign_change(R, strict):
    if strict:
        raise NoSignChange("f' is negative on all of [0, R)")
    log.msg("f' has no sign change on [0, {}), using nu = R".format(R),
            logLevel=logging.WARNING)
    return R


def _rho_gap(model, lam):
    def gap(t):
        return (1.0 + lam) * abs(_newton_map(model, t)) / t + lam - 1.0
    return gap


def rho(model, lam, rtol=DEFAULT_BISECT_RTOL, grid=DEFAULT_GRID_SIZE,
        strict=False):
    '''Largest d such that (1 + lam)|n_f(t)|/t + lam < 1 on (0, d).

    Custom models: the gap function is sampled on a grid of (0, nu) and
    the first sign change is refined by bisection. A non-monotone sample
    means h3 fails; the first crossing is still returned (H3Violated is
    raised instead when strict is True).
    '''
    return _rho(model, lam, rtol, grid, strict)[0]


def _rho(model, lam, rtol, grid, strict):
    if not 0 <= lam < 1:
        raise ValueError('lambda should be in [0, 1)')

    if isinstance(model, Holder):
        K, p = model.K, model.p
        value = ((1 - lam) * (p + 1) / (K * (2 * p + 1 - lam))) ** (1 / p)
        return value, False
    if isinstance(model, Smale):
        a = 5.0 - 3.0 * lam
        value = (a - math.sqrt(a * a - 8.0 * (1 - lam) ** 2)) / \
            (4.0 * (1 - lam) * model.gamma)
        return value, False

    upper = nu(model, rtol)
    gap = _rho_gap(model, lam)
    ts = np.linspace(0.0, upper, grid + 2)[1:-1]
    values = np.array([gap(t) for t in ts])

    flagged = bool(np.any(np.diff(values) < 0))
    crossing = np.argwhere(values >= 0).ravel()

    if crossing.size == 0:
        # gap < 0 on the whole grid, the crossing lies in (ts[-1], nu)
        a, b = ts[-1], upper * (1.0 - rtol)
        if gap(b) < 0:
            value = upper
        else:
            value = _rtol_bisect(gap, a, b, rtol)
    elif crossing[0] == 0:
        a = ts[0] * 1e-6
        value = _rtol_bisect(gap, a, ts[0], rtol) if gap(a) < 0 else a
    else:
        i = crossing[0]
        value = _rtol_bisect(gap, ts[i - 1], ts[i], rtol)

    if flagged:
        msg = 'rho bisection found a non-monotone gap function ' \
            '(h3 fails), using the first crossing {!r}'.format(value)
        if strict:
            raise H3Violated(msg, rho=value)
        log.msg(msg, logLevel=logging.WARNING)
    return value, flagged


def radius(model, lam, kappa=math.inf, rtol=DEFAULT_BISECT_RTOL,
           grid=DEFAULT_GRID_SIZE):
    '''Bundle nu, rho and r = min(rho, kappa).'''
    if not kappa > 0:
        raise ValueError('kappa should be positive')
    value, flagged = _rho(model, lam, rtol, grid, strict=False)
    return RadiusBundle(
        nu=nu(model, rtol),
        rho=value,
        r=min(value, kappa),
        lam=lam,
        kappa=kappa,
        flagged=flagged)


def lambda_from_thetas(thetas):
    '''sup_k sqrt(2 theta_k)'''
    if not len(thetas):
        return 0.0
    if min(thetas) < 0:
        raise ValueError('theta values should be nonnegative')
    return math.sqrt(2.0 * max(thetas))


def step_bound(model, t, theta):
    '''(1 + sqrt(2 theta))|n_f(t)| + sqrt(2 theta) t

    Bounds the error after one Newton-CondG iteration started at
    distance t from the root with budget theta.
    '''
    root = math.sqrt(2.0 * theta)
    return (1.0 + root) * abs(newton_map(model, t)) + root * t


def majorant_sequence(model, t0, thetas, rtol=DEFAULT_BISECT_RTOL):
    '''[t_0, t_1, ...] with one step per theta.

    The recursion stops early when a term underflows to 0.
    '''
    lam = lambda_from_thetas(thetas)
    if lam >= 1:
        raise LambdaTooLarge(
            'sqrt(2 theta_k) = {!r} is not below 1'.format(lam))
    upper = rho(model, lam, rtol)
    if not 0 < t0 < upper:
        raise T0OutOfRange(
            't0 = {!r} is outside (0, rho) with rho = {!r}'.format(
                t0, upper))

    seq = [float(t0)]
    for theta in thetas:
        t = step_bound(model, seq[-1], theta)
        if t == 0.0:
            log.msg('Majorant sequence underflowed after {} terms'.format(
                len(seq)), logLevel=logging.DEBUG)
            break
        seq.append(t)
    return seq


def rate_constant(model, t0, p=None):
    '''|n_f(t0)| / t0^(p+1)

    Under h3, ||x_{k+1} - x_*|| <= (1 + lam) c ||x_k - x_*||^(p+1)
    + lam ||x_k - x_*|| with c the value returned here.
    '''
    if p is None:
        p = model.exponent
    return abs(newton_map(model, t0)) / t0 ** (p + 1)


def check_h1_h2(model, grid=DEFAULT_GRID_SIZE, atol=1e-9):
    '''h1 at t = 0 and h2 on a grid of [0, min(R, 2 nu)).

    A grid check only; continuous verification is not possible.
    '''
    if abs(model.f(0.0)) > atol or abs(model.f_prime(0.0) + 1.0) > atol:
        return False
    upper = nu(model)
    if math.isinf(model.R):
        upper = 2.0 * upper
    else:
        upper = min(2.0 * upper, model.R * (1.0 - 1e-9))
    ts = np.linspace(0.0, upper, grid, endpoint=False)
    values = np.array([model.f_prime(t) for t in ts])
    return bool(np.all(np.diff(values) > 0))


def check_h3(model, p=None, grid=DEFAULT_GRID_SIZE):
    '''t -> |n_f(t)| / t^(p+1) strictly increasing on a grid of (0, nu).'''
    if p is None:
        p = model.exponent
    if p is None:
        raise ValueError('an exponent p is needed for this model')
    upper = nu(model)
    ts = np.linspace(0.0, upper, grid + 2)[1:-1]
    values = np.array([abs(_newton_map(model, t)) / t ** (p + 1)
                       for t in ts])
    return bool(np.all(np.diff(values) > 0))
