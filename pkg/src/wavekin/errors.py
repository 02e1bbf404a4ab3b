"""Exception types raised by the solvers and the configuration layer."""


class WavekinError(Exception):
    """Base class for all package-specific errors."""


class AdmissibilityError(WavekinError):
    """Initial data norm exceeds the vacuum radius required by the global theory."""


class NonConvergenceError(WavekinError):
    """An iteration exhausted its budget without meeting its stopping rule."""


class BeginningConditionError(WavekinError):
    """The monotone scheme's beginning condition failed on the grid."""


class OracleConvergenceError(WavekinError):
    """The mollified-delta oracle did not stabilize under epsilon refinement."""


class ConfigError(WavekinError):
    """Scenario configuration is invalid; carries every violated invariant."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {v}" for v in self.violations))
