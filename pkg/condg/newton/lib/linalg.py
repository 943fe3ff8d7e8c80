'''Dense kernels for the Newton systems.

LU factorization with partial pivoting (scipy/LAPACK getrf) guarded by an
explicit pivot threshold, and forward-difference Jacobians.
'''
import warnings
import numpy as np
import scipy.linalg
from .exceptions import SingularMatrix
from .exceptions import DomainViolation
from .exceptions import DimensionMismatch

EPS = np.finfo(float).eps
SQRT_EPS = np.sqrt(EPS)


def as_vector(x, n=None):
    '''Return x as a finite 1-d float array of (optional) length n.'''
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise DimensionMismatch(
            'expecting a vector, got shape {}'.format(x.shape))
    if n is not None and x.size != n:
        raise DimensionMismatch(
            'expecting a vector of length {}, got {}'.format(n, x.size))
    if not np.all(np.isfinite(x)):
        raise ValueError('vector contains non-finite entries')
    return x


def norm_inf(x):
    return float(np.max(np.abs(x))) if len(x) else 0.0


def norm2(x):
    return float(np.linalg.norm(x))


def pivot_threshold(A):
    '''Default pivot tolerance n * eps * ||A||_inf.'''
    return A.shape[0] * EPS * np.linalg.norm(A, np.inf)


def lu_solve(A, b, pivot_tol=None):
    '''Solve A x = b with partial pivoting.

    Raises SingularMatrix when a pivot of the factorization has a
    magnitude at or below pivot_tol (default: n * eps * ||A||_inf).
    '''
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(
            'expecting a square matrix, got shape {}'.format(A.shape))
    b = as_vector(b, A.shape[0])

    if pivot_tol is None:
        pivot_tol = pivot_threshold(A)

    with warnings.catch_warnings():
        # singularity is judged below, not by LAPACK
        warnings.simplefilter('ignore', scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=True)

    pivots = np.abs(np.diag(lu))
    if np.any(pivots <= pivot_tol):
        raise SingularMatrix(
            'pivot {:.3e} below threshold {:.3e} (column {})'.format(
                float(pivots.min()),
                float(pivot_tol),
                int(np.argmin(pivots))))

    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def _evaluate(F, x, domain):
    if domain is not None and not domain(x):
        return None
    fx = np.asarray(F(x), dtype=float)
    if not np.all(np.isfinite(fx)):
        return None
    return fx


def fd_jacobian(F, x, fx=None, domain=None):
    '''Forward-difference Jacobian of F at x.

    Column j is (F(x + h_j e_j) - F(x)) / h_j with
    h_j = sqrt(eps) * max(1, |x_j|). When the forward point leaves the
    domain (predicate `domain` is false or F is not finite there) the
    backward difference is used for that column; when both fail
    DomainViolation is raised.
    '''
    x = as_vector(x)
    if fx is None:
        fx = _evaluate(F, x, domain)
        if fx is None:
            raise DomainViolation('F is not defined at the base point')
    fx = np.asarray(fx, dtype=float)

    jac = np.empty((fx.size, x.size))
    for j in range(x.size):
        h = SQRT_EPS * max(1.0, abs(x[j]))
        xh = x.copy()
        xh[j] += h
        # the step actually represented in floating point
        h = xh[j] - x[j]
        fh = _evaluate(F, xh, domain)
        if fh is None:
            xh[j] = x[j] - h
            h = xh[j] - x[j]
            fh = _evaluate(F, xh, domain)
            if fh is None:
                raise DomainViolation(
                    'both difference points of column {} leave the '
                    'domain'.format(j))
        jac[:, j] = (fh - fx) / h
    return jac
