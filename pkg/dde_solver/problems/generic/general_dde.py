from dde_solver.problems.abstract.dde_problem import DDEProblem
from dde_solver.problems.generic.history import History
from dde_solver.utils.general import as_points


class GeneralDDE(DDEProblem):
    """
    DDE of order m given in implicit form G(x, y) = 0, where y is a solution view.
    The functional reads the solution through

        y.current(x, k)   -> y^(k)(x) for x in [a, b]
        y.lagged(t, k)    -> y^(k)(t), taken from the history when t <= a

    so nonlinear, neutral and state dependent delays are all expressed by the
    functional itself. Example: y'(x) = -y'(y(x) - 2) is

        G(x, y) = y.current(x, 1) + y.lagged(y.current(x) - 2, 1)
    """

    def __init__(self, a : float, b : float, order : int, functional, history : History,
                 explicit_rhs = None, name : str = "general", description : str = ""):
        '''
        Constructor method

        Parameters
        ----------
        a, b : float
            Domain
        order : int
            Order m of the equation
        functional : callable
            G(x, view) returning the residual at every x (vectorized)
        history : History
            Prescribed solution for x <= a with derivatives up to m - 1 (or m
            for neutral terms)
        explicit_rhs : callable
            Optional f(x, y, lag) with y' = f for retarded first order problems,
            where lag(t) returns the delayed value. Used by the oracle
        name : str
            Name of the problem
        description : str
            Free text documenting the form of the equation
        '''

        self.__a = float(a)
        self.__b = float(b)
        self.__order = int(order)
        self.__functional = functional
        self.__history = history
        self.__explicit_rhs = explicit_rhs
        self.__name = name
        self.__description = description

        self.check_interval()

    @property
    def a(self) -> float:
        return self.__a

    @property
    def b(self) -> float:
        return self.__b

    @property
    def order(self) -> int:
        return self.__order

    @property
    def history(self) -> History:
        return self.__history

    @property
    def is_linear(self) -> bool:
        return False

    @property
    def functional(self):
        return self.__functional

    @property
    def explicit_rhs(self):
        return self.__explicit_rhs

    @property
    def name(self) -> str:
        return self.__name

    @property
    def description(self) -> str:
        return self.__description

    def residual(self, x, view):
        return self.__functional(as_points(x), view)

    def restricted(self, a : float, b : float, history : History):
        return GeneralDDE(a, b, self.__order, self.__functional, history,
                          explicit_rhs = self.__explicit_rhs,
                          name = self.__name,
                          description = self.__description)
