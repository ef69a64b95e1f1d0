import os
import logging
from celery import Celery
from celery.signals import worker_ready

logger = logging.getLogger(__name__)

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'breadthlab.settings')

app = Celery('breadthlab')
app.config_from_object('django.conf:settings', namespace='CELERY')
app.autodiscover_tasks(related_name='task')


@worker_ready.connect
def report_broker(sender, **kwargs):
    """
    Log the broker a worker is about to take campaign shards from, together
    with the defaults the shards will run under.
    """
    try:
        from django.conf import settings
        import redis

        redis_client = redis.Redis.from_url(settings.CELERY_BROKER_URL, decode_responses=True)
        redis_client.ping()
        logger.info(
            f"Worker ready on {settings.CELERY_BROKER_URL}: coset budget {settings.BREADTHLAB_COSET_BUDGET}, "
            f"search budget {settings.BREADTHLAB_SEARCH_BUDGET}"
        )
    except Exception as e:
        logger.error(f"Broker check failed on worker startup: {e}")
