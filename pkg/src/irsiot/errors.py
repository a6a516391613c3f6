"""Exception hierarchy shared by the simulator modules."""


class SimulationError(Exception):
    """Base class for every error raised by irsiot."""


class ConfigInvalid(SimulationError, ValueError):
    """A configuration violates one or more invariants.

    ``issues`` holds ``(key_path, message)`` pairs so that every violated
    field can be reported at once.
    """

    def __init__(self, issues):
        if isinstance(issues, str):
            issues = [("", issues)]
        self.issues = list(issues)
        lines = [f"{path}: {msg}" if path else msg for path, msg in self.issues]
        super().__init__("invalid configuration:\n  " + "\n  ".join(lines))

    def prefixed(self, prefix):
        """Return a copy whose key paths are nested under ``prefix``."""
        out = []
        for path, msg in self.issues:
            out.append((f"{prefix}.{path}" if path else prefix, msg))
        return ConfigInvalid(out)


class UnknownParameter(ConfigInvalid):
    """A sweep parameter path does not resolve in the scenario."""

    def __init__(self, path):
        self.path = path
        super().__init__([(path, "unknown sweep parameter")])


class DomainError(SimulationError, ValueError):
    """A numeric argument lies outside an operation's domain."""


class InvalidCarrier(DomainError):
    pass


class DegenerateGeometry(DomainError):
    pass


class BehindSurface(DomainError):
    pass


class InvalidBandwidth(DomainError):
    pass


class InvalidNoise(DomainError):
    pass


class InvalidPower(DomainError):
    pass


class InvalidProbability(DomainError):
    pass


class ZeroThroughput(DomainError):
    """Throughput is zero, so the transmission delay is unbounded."""


class NonFiniteOutput(DomainError):
    """A table or summary would contain NaN or Inf."""
