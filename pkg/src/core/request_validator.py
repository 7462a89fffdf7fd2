"""
Request Validator - checks command flags before any work starts
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from .constructions import FAMILIES

STRATEGIES = ("hlt", "felsch")
MAX_DEGREE = 8


@dataclass
class ValidationResult:
    """Result of request validation"""
    valid: bool
    error: str = ""
    warnings: List[str] = field(default_factory=list)


class RequestValidator:
    """Validates CLI requests for range and consistency"""

    def __init__(self, max_degree: int = MAX_DEGREE):
        self.max_degree = max_degree

    def _positive(self, name: str, value: Optional[int]) -> Optional[str]:
        if value is not None and value < 1:
            flag = f"-{name}" if len(name) == 1 else f"--{name.replace('_', '-')}"
            return f"{flag} must be at least 1, got {value}"
        return None

    def validate_source(self, source: str) -> ValidationResult:
        """A family name, an existing presentation file, or - for stdin"""
        if source in FAMILIES or source == "-" or Path(source).is_file():
            return ValidationResult(valid=True)
        return ValidationResult(
            valid=False,
            error=f"'{source}' is neither a family ({', '.join(sorted(FAMILIES))}) nor an existing file"
        )

    def validate_family_params(self, family: Optional[str], n: Optional[int], d: Optional[int]) -> ValidationResult:
        for name, value in (("n", n), ("d", d)):
            error = self._positive(name, value)
            if error:
                return ValidationResult(valid=False, error=error)
        if d is not None and d < 3:
            return ValidationResult(valid=False, error=f"-d must be at least 3, got {d}")
        warnings = []
        if family in ("l", "j", "bs12") and n is not None:
            warnings.append(f"-n is ignored for family '{family}'")
        if d is not None and family != "steinberg":
            warnings.append("-d only applies to the steinberg family")
        return ValidationResult(valid=True, warnings=warnings)

    def validate_enumeration(self, max_cosets: int, strategy: str) -> ValidationResult:
        error = self._positive("max_cosets", max_cosets)
        if error:
            return ValidationResult(valid=False, error=error)
        if strategy.lower() not in STRATEGIES:
            return ValidationResult(valid=False, error=f"Unknown strategy '{strategy}' (hlt or felsch)")
        return ValidationResult(valid=True)

    def validate_search(self, degree: int, budget: int, workers: int) -> ValidationResult:
        for name, value in (("degree", degree), ("budget", budget), ("workers", workers)):
            error = self._positive(name, value)
            if error:
                return ValidationResult(valid=False, error=error)
        warnings = []
        if degree > self.max_degree:
            warnings.append(f"Degree {degree} above {self.max_degree} is likely to exhaust the budget")
        return ValidationResult(valid=True, warnings=warnings)

    def validate_sampling(self, samples: int, max_len: int) -> ValidationResult:
        for name, value in (("samples", samples), ("max_len", max_len)):
            error = self._positive(name, value)
            if error:
                return ValidationResult(valid=False, error=error)
        return ValidationResult(valid=True)

    def validate_arithmetic(self, n: int, bound: int) -> ValidationResult:
        for name, value in (("n", n), ("bound", bound)):
            error = self._positive(name, value)
            if error:
                return ValidationResult(valid=False, error=error)
        return ValidationResult(valid=True)
