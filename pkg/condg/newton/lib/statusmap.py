'''Status mapping for solver reports and the CondG procedure.

'''

# Newton-CondG outer loop statuses
SOLVE_CONVERGED = 0
SOLVE_MAX_ITERATIONS = 1
SOLVE_SINGULAR_JACOBIAN = 2
SOLVE_CONDG_CAP_EXCEEDED = 3
SOLVE_DOMAIN_VIOLATION = 4

TEXT_SOLVE_MAP = {
    SOLVE_CONVERGED: 'Converged',
    SOLVE_MAX_ITERATIONS: 'MaxIterations',
    SOLVE_SINGULAR_JACOBIAN: 'SingularJacobian',
    SOLVE_CONDG_CAP_EXCEEDED: 'CondGCapExceeded',
    SOLVE_DOMAIN_VIOLATION: 'DomainViolation'
}

# CondG procedure statuses
CONDG_GAP_REACHED = 0
CONDG_ITERATION_CAP = 1

TEXT_CONDG_MAP = {
    CONDG_GAP_REACHED: 'GapReached',
    CONDG_ITERATION_CAP: 'IterationCap'
}

# used when reading reports back from text (csv output)
SOLVE_TEXT_MAP = {text: status for status, text in TEXT_SOLVE_MAP.items()}
CONDG_TEXT_MAP = {text: status for status, text in TEXT_CONDG_MAP.items()}
