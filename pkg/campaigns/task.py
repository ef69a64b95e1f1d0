from celery import shared_task
import logging

from core.exceptions import BudgetExceeded

logger = logging.getLogger(__name__)


@shared_task(name='campaigns.task.run_campaign_shard')
def run_campaign_shard(theorem_id, field_token, shard, options):
    """
    Run one shard of a verification campaign.
    Returns the shard result as JSON so any result backend can carry it.
    """
    # Import inside function to keep worker start-up light
    from .theorems import get_campaign

    try:
        campaign = get_campaign(theorem_id)
        field = campaign.resolve_field(field_token)
        logger.info(f"Starting {theorem_id} shard {shard} over {field_token}...")
        result = campaign.run_shard(field, shard, options)
        logger.info(f"{theorem_id} shard {shard}: {result.passed}/{result.scanned} passed, "
                    f"{result.failed} failed, {result.skipped} skipped")
        return result.to_json()
    except Exception as e:
        logger.error(f"Campaign shard {theorem_id}/{shard} failed: {str(e)}", exc_info=True)
        raise


@shared_task(name='campaigns.task.run_sks_shard')
def run_sks_shard(n, field_token, pivot, budget=None):
    """
    One pivot shard of the k_sks search. A budget overrun is reported in the
    result rather than raised, with the best certificate found so far.
    """
    from camina.search import sks_search_shard
    from fields.spec import FieldSpec

    try:
        dim, cert, checked = sks_search_shard(n, FieldSpec.parse(field_token), pivot, budget=budget)
        logger.info(f"k_sks({n}) shard {pivot} over {field_token}: dimension {dim} after {checked} rank checks")
        return {'pivot': pivot, 'dim': dim, 'certificate': cert.to_json(), 'checked': checked,
                'budget_exceeded': False}
    except BudgetExceeded as e:
        logger.info(f"k_sks({n}) shard {pivot} over {field_token} ran out of budget: {e}")
        return {'pivot': pivot, 'dim': e.partial.dim, 'certificate': e.partial.to_json(), 'checked': budget,
                'budget_exceeded': True, 'message': str(e)}
    except Exception as e:
        logger.error(f"k_sks shard {pivot} failed: {str(e)}", exc_info=True)
        raise
