EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


class GlasnerException(Exception):
    """Base error carrying the process exit code and a readable detail."""

    def __init__(self, exit_code: int, detail: str):
        super().__init__(detail)
        self.exit_code = exit_code
        self.detail = detail

    def to_dict(self) -> dict:
        return {"status": "error", "exit_code": self.exit_code, "detail": self.detail}


class ValidationException(GlasnerException):
    def __init__(self, detail: str):
        super().__init__(EXIT_VALIDATION, detail)


class BudgetExceededException(GlasnerException):
    def __init__(self, budget_name: str, requested: int, limit: int, hint: str = ""):
        detail = f"{budget_name} budget exceeded: {requested} > {limit}."
        if hint:
            detail = f"{detail} {hint}"
        super().__init__(EXIT_BUDGET, detail)
        self.budget_name = budget_name
        self.requested = requested
        self.limit = limit
