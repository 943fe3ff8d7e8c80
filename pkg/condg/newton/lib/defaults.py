'''Newton-CondG default values

'''
# stop when the infinity norm of F(x_k) drops below this value
DEFAULT_RESIDUAL_TOL = 1e-6

# a failure is declared after this number of outer Newton iterations
DEFAULT_MAX_OUTER = 300

# the CondG procedure is cut off after this number of inner iterations
DEFAULT_CONDG_MAX_INNER = 300

# constant inexactness budget theta_k used by the benchmark protocol
DEFAULT_THETA = 1e-5

# relative tolerance for set membership tests
DEFAULT_FEAS_TOL = 1e-12

# relative bracket tolerance for the majorant bisections
DEFAULT_BISECT_RTOL = 1e-12

# number of grid points used for h2/h3 spot checks
DEFAULT_GRID_SIZE = 1000

DEFAULT_GAMMAS = (1, 2, 3)

DEFAULT_WORKERS = 1
