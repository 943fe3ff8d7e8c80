'''Box-constrained benchmark systems.

Formulas and bounds are transcribed from the cited collections. Where a
collection gives no box, the bounds are chosen to contain the solution
with margin; those choices are marked below.
'''
import math
from dataclasses import dataclass
from dataclasses import field
from functools import partial
import numpy as np
from .exceptions import OutOfBox
from .exceptions import UnknownProblem
from .oracle import Box
from .solver import NonlinearSystem

FLOUDAS = 'Floudas et al., Handbook of Test Problems in Local and ' \
    'Global Optimization, {}'
BELLAVIA = 'Bellavia, Macconi, Morini, STRSCNE test collection, {}'
MORE = 'More, A collection of nonlinear model problems, {}'


@dataclass(frozen=True)
class ProblemSpec:
    id: str
    name: str
    n: int
    system: NonlinearSystem
    box: Box
    source: str
    known_root: np.ndarray = None
    jacobian: object = None
    gamma_overrides: dict = field(default_factory=dict)

    def system_with_jacobian(self):
        '''The same system using the analytic Jacobian, when shipped.'''
        if self.jacobian is None:
            return self.system
        return self.system.with_jacobian(self.jacobian)

    def effective_gamma(self, gamma):
        return self.gamma_overrides.get(gamma, gamma)


def initial_point(problem, gamma):
    '''x0 = l + 0.25 gamma (u - l)'''
    if not 0 < gamma <= 4:
        raise OutOfBox('gamma = {!r} puts x0 outside the box'.format(gamma))
    box = problem.box
    return box.lower + 0.25 * gamma * (box.upper - box.lower)


def himmelblau(x):
    return np.array([
        x[0] ** 2 + x[1] - 11.0,
        x[0] + x[1] ** 2 - 7.0])


def himmelblau_jacobian(x):
    return np.array([
        [2.0 * x[0], 1.0],
        [1.0, 2.0 * x[1]]])


def ferraris_tronconi(x):
    e = math.e
    return np.array([
        0.5 * math.sin(x[0] * x[1]) - 0.25 * x[1] / math.pi - 0.5 * x[0],
        (1.0 - 0.25 / math.pi) * (math.exp(2.0 * x[0]) - e) +
        e * x[1] / math.pi - 2.0 * e * x[0]])


def ferraris_tronconi_jacobian(x):
    e = math.e
    c = math.cos(x[0] * x[1])
    return np.array([
        [0.5 * x[1] * c - 0.5, 0.5 * x[0] * c - 0.25 / math.pi],
        [2.0 * (1.0 - 0.25 / math.pi) * math.exp(2.0 * x[0]) - 2.0 * e,
         e / math.pi]])


def brown_almost_linear(x):
    n = len(x)
    fvec = x + x.sum() - (n + 1)
    fvec[n - 1] = x.prod() - 1.0
    return fvec


def brown_almost_linear_jacobian(x):
    n = len(x)
    jac = np.eye(n) + 1.0
    jac[n - 1] = [np.prod(np.delete(x, j)) for j in range(n)]
    return jac


# series of two CSTRs
CSTR_GAMMA = 1000.0
CSTR_D = 22.0
CSTR_BETA1 = 2.0
CSTR_BETA2 = 2.0


def _cstr_exp(phi):
    return math.exp(10.0 * phi / (1.0 + 10.0 * phi / CSTR_GAMMA))


def _cstr_exp_prime(phi):
    return _cstr_exp(phi) * 10.0 / (1.0 + 10.0 * phi / CSTR_GAMMA) ** 2


def cstr(x, R):
    phi1, phi2 = x
    a = CSTR_D / (10.0 * (1.0 + CSTR_BETA1)) - phi1
    b = CSTR_D / 10.0 - CSTR_BETA1 * phi1 - (1.0 + CSTR_BETA2) * phi2
    return np.array([
        (1.0 - R) * a * _cstr_exp(phi1) - phi1,
        phi1 - (1.0 + CSTR_BETA2) * phi2 + (1.0 - R) * b * _cstr_exp(phi2)])


def cstr_jacobian(x, R):
    phi1, phi2 = x
    a = CSTR_D / (10.0 * (1.0 + CSTR_BETA1)) - phi1
    b = CSTR_D / 10.0 - CSTR_BETA1 * phi1 - (1.0 + CSTR_BETA2) * phi2
    e1, e2 = _cstr_exp(phi1), _cstr_exp(phi2)
    return np.array([
        [(1.0 - R) * (a * _cstr_exp_prime(phi1) - e1) - 1.0, 0.0],
        [1.0 - (1.0 - R) * CSTR_BETA1 * e2,
         -(1.0 + CSTR_BETA2) + (1.0 - R) * (
             b * _cstr_exp_prime(phi2) - (1.0 + CSTR_BETA2) * e2)]])


def _bvp_grid(n):
    h = 1.0 / (n + 1)
    return h, h * np.arange(1, n + 1)


def mildly_nonlinear_bvp(x):
    '''Central differences for u'' = (u + t + 1)^3 / 2, u(0) = u(1) = 0.'''
    h, t = _bvp_grid(len(x))
    padded = np.concatenate(([0.0], x, [0.0]))
    return 2.0 * x - padded[:-2] - padded[2:] + \
        0.5 * h ** 2 * (x + t + 1.0) ** 3


def mildly_nonlinear_bvp_jacobian(x):
    n = len(x)
    h, t = _bvp_grid(n)
    jac = np.diag(2.0 + 1.5 * h ** 2 * (x + t + 1.0) ** 2)
    off = -np.ones(n - 1)
    return jac + np.diag(off, 1) + np.diag(off, -1)


def _h_matrix(n, c):
    mu = (np.arange(1, n + 1) - 0.5) / n
    return c / (2.0 * n) * mu[:, None] / (mu[:, None] + mu[None, :])


def h_equation(x, A):
    return x - 1.0 / (1.0 - A @ x)


def h_equation_jacobian(x, A):
    d = 1.0 - A @ x
    return np.eye(len(x)) - A / (d ** 2)[:, None]


def h_equation_domain(x, A):
    return bool(np.all(np.abs(1.0 - A @ x) > 1e-300))


CSTR_RATIOS = (
    0.935, 0.940, 0.945, 0.950, 0.955, 0.960, 0.965,
    0.970, 0.975, 0.980, 0.985, 0.990, 0.995)

BVP_N = 451
H_N = 100


def _cstr_problems():
    for i, R in enumerate(CSTR_RATIOS):
        yield ProblemSpec(
            id='Pb{}'.format(8 + i),
            name='Series of CSTRs R={:.3f}'.format(R),
            n=2,
            system=NonlinearSystem(2, partial(cstr, R=R)),
            box=Box.uniform(0.0, 1.0, 2),
            source=FLOUDAS.format('14.1.8'),
            jacobian=partial(cstr_jacobian, R=R))


def _h_problem(pid, c):
    A = _h_matrix(H_N, c)
    # no box in the source; [0, 5]^n contains H for both values of c
    return ProblemSpec(
        id=pid,
        name='H-equation c={}'.format(c),
        n=H_N,
        system=NonlinearSystem(
            H_N, partial(h_equation, A=A),
            domain=partial(h_equation_domain, A=A)),
        box=Box.uniform(0.0, 5.0, H_N),
        source=MORE.format('Problem 4'),
        jacobian=partial(h_equation_jacobian, A=A))


def _build():
    yield ProblemSpec(
        id='Pb1',
        name='Himmelblau function',
        n=2,
        system=NonlinearSystem(2, himmelblau),
        box=Box.uniform(-5.0, 5.0, 2),
        source=FLOUDAS.format('14.1.1'),
        known_root=np.array([3.0, 2.0]),
        jacobian=himmelblau_jacobian)

    yield ProblemSpec(
        id='Pb4',
        name='Ferraris-Tronconi system',
        n=2,
        system=NonlinearSystem(2, ferraris_tronconi),
        box=Box([0.25, 1.5], [1.0, 2.0 * math.pi]),
        source=FLOUDAS.format('14.1.4'),
        known_root=np.array([0.5, math.pi]),
        jacobian=ferraris_tronconi_jacobian)

    yield ProblemSpec(
        id='Pb5',
        name="Brown's almost linear system",
        n=5,
        system=NonlinearSystem(5, brown_almost_linear),
        box=Box.uniform(-2.0, 2.0, 5),
        source=FLOUDAS.format('14.1.5'),
        known_root=np.ones(5),
        jacobian=brown_almost_linear_jacobian,
        # gamma = 3 starts at the root
        gamma_overrides={3: 2.5})

    yield from _cstr_problems()

    # no box in the source; [-1, 1]^n contains the solution with margin
    yield ProblemSpec(
        id='Pb22',
        name='A mildly-nonlinear BVP',
        n=BVP_N,
        system=NonlinearSystem(BVP_N, mildly_nonlinear_bvp),
        box=Box.uniform(-1.0, 1.0, BVP_N),
        source=BELLAVIA.format('Problem 7'),
        jacobian=mildly_nonlinear_bvp_jacobian,
        gamma_overrides={2: 2.5})

    yield _h_problem('Pb23', 0.99)
    yield _h_problem('Pb24', 0.9999)


class ProblemRegistry(object):
    '''Ordered, immutable collection of problems keyed by id.'''

    __slots__ = ('_problems',)

    def __init__(self, problems):
        problems = tuple(problems)
        ids = [problem.id for problem in problems]
        assert len(set(ids)) == len(ids), 'problem ids should be unique'
        self._problems = problems

    def __iter__(self):
        return iter(self._problems)

    def __len__(self):
        return len(self._problems)

    def __contains__(self, pid):
        return any(problem.id == pid for problem in self._problems)

    @property
    def ids(self):
        return [problem.id for problem in self._problems]

    def get(self, pid):
        for problem in self._problems:
            if problem.id == pid:
                return problem
        raise UnknownProblem(pid)

    def index(self, pid):
        return self.ids.index(self.get(pid).id)

    def with_problem(self, problem):
        if problem.id in self:
            raise ValueError('problem {} is already registered'.format(
                problem.id))
        return ProblemRegistry(self._problems + (problem,))


_DEFAULT = None


def default_registry():
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = ProblemRegistry(_build())
    return _DEFAULT


def registry():
    '''All built-in problems in catalog order.'''
    return list(default_registry())
