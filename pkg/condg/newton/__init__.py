from .lib.linalg import lu_solve
from .lib.linalg import fd_jacobian
from .lib.oracle import Box
from .lib.oracle import Simplex
from .lib.oracle import Ball
from .lib.oracle import lmo
from .lib.oracle import condg
from .lib.oracle import project
from .lib.solver import NonlinearSystem
from .lib.solver import SolverConfig
from .lib.solver import ConstantTheta
from .lib.solver import GeometricTheta
from .lib.solver import newton_step
from .lib.solver import solve
from .lib.majorant import Holder
from .lib.majorant import Smale
from .lib.majorant import Custom
from .lib.majorant import newton_map
from .lib.majorant import nu
from .lib.majorant import rho
from .lib.majorant import radius
from .lib.majorant import majorant_sequence
from .lib.problems import registry
from .lib.problems import initial_point
from .lib.bench import run_benchmark
from .lib.cli import emit


__version_info__ = (1, 0, 0)
__version__ = '.'.join(map(str, __version_info__))
__maintainer__ = 'condg-newton developers'
__all__ = [
    'lu_solve',
    'fd_jacobian',
    'Box',
    'Simplex',
    'Ball',
    'lmo',
    'condg',
    'project',
    'NonlinearSystem',
    'SolverConfig',
    'ConstantTheta',
    'GeometricTheta',
    'newton_step',
    'solve',
    'Holder',
    'Smale',
    'Custom',
    'newton_map',
    'nu',
    'rho',
    'radius',
    'majorant_sequence',
    'registry',
    'initial_point',
    'run_benchmark',
    'emit',
]
