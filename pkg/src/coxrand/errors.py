"""Exception hierarchy shared by all coxrand modules."""


class CoxrandError(Exception):
    pass


class ConfigError(CoxrandError, ValueError):
    """Invalid user-supplied configuration (schedules, presets, patterns)."""


class ScheduleOverflow(ConfigError):
    """The finite-label probabilities of a schedule sum to more than one."""


class BudgetExceeded(CoxrandError):
    """A combinatorial search passed its configured cap.

    Results computed from a truncated search would be meaningless, so the
    search stops and raises instead of returning partial output.
    """


class FaceBudgetExceeded(BudgetExceeded):
    pass


class CliqueBudgetExceeded(BudgetExceeded):
    pass


class SearchBudgetExceeded(BudgetExceeded):
    pass


class PatternTooLarge(CoxrandError, ValueError):
    pass


class IndeterminateAsymptotics(CoxrandError, ValueError):
    pass


class PreconditionViolated(CoxrandError, ValueError):
    pass
