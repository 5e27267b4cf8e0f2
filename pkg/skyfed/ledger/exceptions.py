from skyfed.exceptions import SkyfedError


class LedgerError(SkyfedError):
    pass


class LedgerValidationError(LedgerError):
    """Rejected call, the state is left as it was."""


class NodeNotFoundError(LedgerError):
    pass
