"""
Verification - outcome statuses shared by every command and their exit codes
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence


class VerificationStatus(Enum):
    """Verification status enumeration"""
    CONFIRMED = "confirmed"
    FAILED = "failed"
    LIMIT_EXCEEDED = "limit_exceeded"
    USAGE_ERROR = "usage_error"


EXIT_CODES = {
    VerificationStatus.CONFIRMED: 0,
    VerificationStatus.USAGE_ERROR: 1,
    VerificationStatus.FAILED: 2,
    VerificationStatus.LIMIT_EXCEEDED: 3,
}


@dataclass
class Record:
    """One report line: a key and its value columns"""
    key: str
    values: List[str] = field(default_factory=list)


@dataclass
class VerificationResult:
    """Result of a command: status, report records and optional timing"""
    command: str
    status: VerificationStatus
    records: List[Record] = field(default_factory=list)
    columns: Sequence[str] = ("item", "value")
    elapsed: Optional[float] = None
    message: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def add(self, key: str, *values) -> "VerificationResult":
        self.records.append(Record(key, [str(v) for v in values]))
        return self


def combine(statuses: Sequence[VerificationStatus]) -> VerificationStatus:
    """Worst status wins: usage error, then failure, then limit"""
    for status in (VerificationStatus.USAGE_ERROR, VerificationStatus.FAILED, VerificationStatus.LIMIT_EXCEEDED):
        if status in statuses:
            return status
    return VerificationStatus.CONFIRMED
