"""Validation results shared by every validator and verifier."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Optional

from schober.core.arith import Matrix, format_rational
from schober.errors import ERRORS_BY_CODE, SchoberError

logger = logging.getLogger(__name__)


def matrix_rows(m: Optional[Matrix]):
    """JSON rows of a matrix with rational strings"""
    if m is None:
        return None
    return [[format_rational(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def _plain(value: Any):
    if isinstance(value, Matrix):
        return matrix_rows(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, 'p') and hasattr(value, 'q'):
        return format_rational(value)
    return value


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {'code': self.code, 'message': self.message, 'detail': _plain(self.detail)}


@dataclass(frozen=True)
class RelationCheck:
    """One exact identity lhs == rhs"""
    name: str
    passed: bool
    lhs: Optional[Matrix] = None
    rhs: Optional[Matrix] = None

    def to_dict(self) -> dict:
        return {'name': self.name, 'pass': self.passed,
                'lhs': matrix_rows(self.lhs), 'rhs': matrix_rows(self.rhs)}


@dataclass
class Report:
    name: str
    issues: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.issues and all(c.passed for c in self.checks)

    def add_issue(self, code: str, message: str, **detail) -> None:
        logger.info('%s: %s %s', self.name, code, message)
        self.issues.append(Issue(code, message, detail))

    def add_error(self, error: SchoberError) -> None:
        self.add_issue(error.code, error.message, **error.detail)

    def check(self, name: str, lhs: Matrix, rhs: Matrix, code: Optional[str] = None) -> bool:
        """Record lhs == rhs; a failure also files an issue when ``code`` is given."""
        passed = lhs.shape == rhs.shape and lhs == rhs
        self.checks.append(RelationCheck(name, passed, lhs, rhs))
        if not passed:
            logger.info('%s: relation %s fails', self.name, name)
            if code:
                self.issues.append(Issue(code, f'{name} does not hold',
                                         {'lhs': lhs, 'rhs': rhs}))
        return passed

    def extend(self, other: 'Report', prefix: str = '') -> None:
        self.issues.extend(other.issues)
        for c in other.checks:
            self.checks.append(RelationCheck(prefix + c.name, c.passed, c.lhs, c.rhs))

    def failing(self) -> list:
        return [c.name for c in self.checks if not c.passed]

    def raise_for_issues(self) -> None:
        if self.issues:
            issue = self.issues[0]
            cls = ERRORS_BY_CODE.get(issue.code, SchoberError)
            raise cls(issue.message, **issue.detail)
        failing = self.failing()
        if failing:
            raise SchoberError(f'Relations failed: {", ".join(failing)}')

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'valid': self.valid,
            'issues': [i.to_dict() for i in self.issues],
            'checks': [c.to_dict() for c in self.checks],
            'data': _plain(self.data),
        }
