"""Exception types shared across the package."""


class FuzzySentError(Exception):
    """Base class for all package errors."""


class ParseError(FuzzySentError, ValueError):
    """A data file or query could not be parsed.

    ``line`` is 1-based for file formats; ``position`` is a 0-based
    character offset for single-line inputs such as queries.
    """

    def __init__(self, message, path=None, line=None, position=None):
        self.path = path
        self.line = line
        self.position = position
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"position {position}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class DuplicateIdError(FuzzySentError, ValueError):
    pass


class OntologyError(FuzzySentError, ValueError):
    pass


class UnknownParentError(OntologyError):
    pass


class CycleDetectedError(OntologyError):
    pass


class DegreeOutOfRangeError(OntologyError):
    pass


class UnknownConceptError(OntologyError, KeyError):
    pass


class UnknownTermError(FuzzySentError, KeyError):
    pass


class ScoreSumError(FuzzySentError, ValueError):
    pass


class DegenerateMFError(FuzzySentError, ValueError):
    pass


class RuleConflictError(FuzzySentError):
    """Two causal rules derived different values for one functional fact."""

    def __init__(self, rule_a, rule_b, predicate, subject, values):
        self.rules = (rule_a, rule_b)
        self.predicate = predicate
        self.subject = subject
        self.values = values
        super().__init__(
            f"rules {rule_a!r} and {rule_b!r} derive conflicting "
            f"{predicate}({subject}, ...): {values[0]} vs {values[1]}"
        )


class UndefinedMetricError(FuzzySentError, ZeroDivisionError):
    pass


class ConfigError(FuzzySentError):
    pass
