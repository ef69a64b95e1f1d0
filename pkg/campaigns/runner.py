"""
Campaign driver: plans shards, runs them in-process or as a Celery group,
and merges the results in shard order.
"""
import logging
import time
from dataclasses import replace
from typing import List, Optional, Tuple

from celery import group

from bivectors.bivector import pair_count
from camina.certificates import RankSubspaceCertificate
from camina.search import max_sks_rank_subspace
from camina.serializer import RankSubspaceCertificateSerializer
from core.conf import lab_setting
from core.exceptions import BudgetExceeded
from fields.spec import FieldSpec
from .report import CampaignReport, ShardResult
from .task import run_campaign_shard, run_sks_shard
from .theorems import get_campaign

logger = logging.getLogger(__name__)

# echoed as top-level report fields
_UNREPORTED = ('seed', 'budget')


def _dispatch(task, calls: List[tuple], jobs: int) -> list:
    if jobs > 1 and len(calls) > 1:
        logger.info(f"Dispatching {len(calls)} shards as a Celery group")
        return group(task.s(*args) for args in calls).apply_async().get()
    return [task(*args) for args in calls]


def run_campaign(theorem_id: str, field_token: str, options: Optional[dict] = None,
                 jobs: Optional[int] = None) -> CampaignReport:
    """
    cmd_verify without the command line. The report is returned whatever its
    status; callers decide what a failure or a budget overrun means for them.
    """
    options = dict(options or {})
    options.setdefault('seed', lab_setting('BREADTHLAB_SEED'))
    options.setdefault('budget', None)
    jobs = lab_setting('BREADTHLAB_JOBS') if jobs is None else jobs

    campaign = get_campaign(theorem_id)
    field = campaign.resolve_field(field_token)
    shards = campaign.shards(field, options)
    logger.info(f"Campaign {theorem_id} over {field}: {len(shards)} shards, jobs={jobs}, seed={options['seed']}")

    start = time.monotonic()
    raw = _dispatch(run_campaign_shard, [(theorem_id, field.token, shard, options) for shard in shards], jobs)
    results = [ShardResult.from_json(data) for data in raw]

    parameters = {k: v for k, v in sorted(options.items()) if k not in _UNREPORTED and v is not None}
    report = CampaignReport.merge(theorem_id, field.token, parameters, options['seed'], options['budget'], results)
    report.summary = campaign.summarize(field, results, options)
    report.wall_time = time.monotonic() - start
    logger.info(f"Campaign {theorem_id} over {field}: {report.status} ({report.passed}/{report.scanned} passed, "
                f"{report.failed} failed, {report.skipped} skipped) in {report.wall_time:.1f}s")
    return report


def run_sks_search(n: int, field: FieldSpec, budget: Optional[int] = None,
                   jobs: Optional[int] = None) -> Tuple[int, RankSubspaceCertificate]:
    """
    max_sks_rank_subspace with the pivot shards spread over workers. The
    budget applies per shard here.
    """
    jobs = lab_setting('BREADTHLAB_JOBS') if jobs is None else jobs
    if jobs <= 1 or n % 2 or n < 2:
        return max_sks_rank_subspace(n, field, budget)

    pivots = range(pair_count(n) - 1, -1, -1)
    results = _dispatch(run_sks_shard, [(n, field.token, p, budget) for p in pivots], jobs)
    best = max(results, key=lambda r: r['dim'])
    cert = RankSubspaceCertificateSerializer.load(best['certificate'])
    exceeded = [r['pivot'] for r in results if r['budget_exceeded']]
    if exceeded:
        raise BudgetExceeded(f"k_sks({n}) shards {exceeded} over {field} ran out of budget",
                             partial=replace(cert, lower_bound=True))
    cert.check()
    logger.info(f"k_sks({n}) over {field} = {cert.dim} from {len(results)} shards")
    return cert.dim, cert
