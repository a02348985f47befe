import os
import datetime

# Local imports
import dde_solver.constants as con


class DDESolverError(Exception):
    '''
    Base class for the errors raised by the solver.
    '''


class InvalidInputError(DDESolverError, ValueError):
    '''
    Raised when an operation is called outside its preconditions.
    '''


class DomainError(DDESolverError, ValueError):
    '''
    Raised when a history (or a composite history) is evaluated outside
    the domain where it is defined.
    '''


class NonlinearSolveError(DDESolverError):
    '''
    Raised when the residual system cannot be evaluated where the
    nonlinear solver needs it.
    '''


class SolverAbort(DDESolverError):
    '''
    Raised when an adaptive run cannot continue. Carries whatever was
    completed before the failure.

    Attributes
    ----------
    partial : object
        RSAReport or PiecewiseSolution built before the failure
    cause : Exception
        The original error
    '''

    def __init__(self, message : str, partial = None, cause : Exception = None):
        super().__init__(message)
        self.partial = partial
        self.cause = cause


def write_error(source : str, msg : str,
                 type : str, timestamp : datetime.datetime, errors_file : str = None):
    """
    Method to write warnings and errors to file.
    """
    if not errors_file:
        if not os.path.exists(con.ERRORS_FOLDER):
            os.makedirs(con.ERRORS_FOLDER)
        errors_file = os.path.join(con.ERRORS_FOLDER, con.ERRORS_FILE)
    datetime = timestamp.strftime("%m/%d/%Y, %H:%M:%S")
    msg = str(msg).replace("\n", " ").replace(",", ";")
    with open(errors_file, 'a') as out:
        out.write(f"{datetime},{source},{type},{msg}\n")
