"""
Shard results and the campaign report they merge into.

A shard result is plain JSON so it can travel through the Celery result
backend; the report is assembled in shard order, which keeps the output
identical for any number of workers.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from core.conf import lab_setting
from core.exceptions import InvariantViolation

logger = logging.getLogger(__name__)

PASS = 'pass'
FAIL = 'fail'
BUDGET = 'budget'

EXIT_CODES = {PASS: 0, FAIL: 1, BUDGET: 3}


@dataclass
class ShardResult:
    shard: str
    scanned: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    tallies: Counter = field(default_factory=Counter)
    witnesses: List[dict] = field(default_factory=list)
    budget_exceeded: bool = False
    extra: dict = field(default_factory=dict)

    def record(self, ok: bool, witness: Optional[dict] = None):
        self.scanned += 1
        if ok:
            self.passed += 1
            return
        self.failed += 1
        if witness is not None:
            self.witnesses.append(witness)

    def skip(self, reason: str):
        self.scanned += 1
        self.skipped += 1
        self.budget_exceeded = True
        self.tallies['budget_exceeded'] += 1
        logger.info(f"Shard {self.shard}: skipped an instance ({reason})")

    def tally(self, key: str, count: int = 1):
        self.tallies[key] += count

    def to_json(self) -> dict:
        return {
            'shard': self.shard,
            'scanned': self.scanned,
            'passed': self.passed,
            'failed': self.failed,
            'skipped': self.skipped,
            'tallies': dict(self.tallies),
            'witnesses': self.witnesses,
            'budget_exceeded': self.budget_exceeded,
            'extra': self.extra,
        }

    @classmethod
    def from_json(cls, data: dict) -> 'ShardResult':
        return cls(
            shard=data['shard'],
            scanned=data['scanned'],
            passed=data['passed'],
            failed=data['failed'],
            skipped=data['skipped'],
            tallies=Counter(data.get('tallies', {})),
            witnesses=list(data.get('witnesses', [])),
            budget_exceeded=data.get('budget_exceeded', False),
            extra=dict(data.get('extra', {})),
        )


@dataclass
class CampaignReport:
    theorem_id: str
    field_token: str
    parameters: dict
    seed: int
    budget: Optional[int] = None
    scanned: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    tallies: Dict[str, int] = field(default_factory=dict)
    witnesses: List[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    shards: int = 0
    wall_time: float = 0.0
    command: str = 'verify'

    @classmethod
    def merge(cls, theorem_id: str, field_token: str, parameters: dict, seed: int,
              budget: Optional[int], results: List[ShardResult]) -> 'CampaignReport':
        limit = lab_setting('BREADTHLAB_WITNESS_LIMIT')
        report = cls(theorem_id, field_token, dict(parameters), seed, budget, shards=len(results))
        tallies = Counter()
        for result in results:
            report.scanned += result.scanned
            report.passed += result.passed
            report.failed += result.failed
            report.skipped += result.skipped
            tallies.update(result.tallies)
            for witness in result.witnesses:
                if len(report.witnesses) < limit:
                    report.witnesses.append(dict(witness, shard=result.shard))
        report.tallies = dict(sorted(tallies.items()))
        report.check()
        return report

    def check(self):
        if self.scanned != self.passed + self.failed + self.skipped:
            raise InvariantViolation(
                f"Report counts disagree: {self.scanned} scanned, {self.passed} passed, "
                f"{self.failed} failed, {self.skipped} skipped"
            )

    @property
    def status(self) -> str:
        if self.failed:
            return FAIL
        if self.skipped:
            return BUDGET
        return PASS

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self, timing: bool = True) -> dict:
        data = {
            'command': self.command,
            'theorem': self.theorem_id,
            'field': self.field_token,
            'parameters': self.parameters,
            'seed': self.seed,
            'budget': self.budget,
            'status': self.status,
            'counts': {
                'scanned': self.scanned,
                'passed': self.passed,
                'failed': self.failed,
                'skipped': self.skipped,
            },
            'tallies': self.tallies,
            'witnesses': self.witnesses,
            'summary': self.summary,
            'shards': self.shards,
        }
        if timing:
            data['wall_time'] = round(self.wall_time, 3)
        return data
