from django.db import models


class TimeStampedModel(models.Model):
    """Creation and update times for every stored record; latest() goes by creation."""
    created_at = models.DateTimeField(auto_now_add=True, db_index=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        abstract = True
        get_latest_by = 'created_at'
