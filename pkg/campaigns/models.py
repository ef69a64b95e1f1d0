from django.db import models

from core.models.base import TimeStampedModel


# Campaign outcome choices
STATUS_CHOICES = [
    ('pass', 'Pass'),
    ('fail', 'Fail'),
    ('budget', 'Budget exceeded'),
]


class CampaignRun(TimeStampedModel):
    """A finished `verify` report, stored when the command runs with --record"""

    theorem_id = models.CharField(
        max_length=32,
        help_text="Campaign identifier, e.g. t03-odd"
    )
    field_token = models.CharField(
        max_length=32,
        help_text="Field the campaign ran over, e.g. gf3 or rational"
    )
    seed = models.BigIntegerField(
        default=0,
        help_text="Seed echoed from the command line"
    )
    budget = models.BigIntegerField(
        null=True,
        blank=True,
        help_text="Coset or search budget, if one was given"
    )
    status = models.CharField(
        max_length=10,
        choices=STATUS_CHOICES,
        default='pass',
        help_text="Overall campaign outcome"
    )

    # Counts
    scanned = models.PositiveIntegerField(default=0)
    passed = models.PositiveIntegerField(default=0)
    failed = models.PositiveIntegerField(default=0)
    skipped = models.PositiveIntegerField(default=0)

    wall_time = models.FloatField(
        default=0.0,
        help_text="Wall time in seconds"
    )
    report = models.JSONField(
        default=dict,
        help_text="The full JSON report"
    )

    class Meta(TimeStampedModel.Meta):
        db_table = 'campaign_runs'
        verbose_name = 'Campaign Run'
        verbose_name_plural = 'Campaign Runs'
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['theorem_id'], name='campaign_ru_theorem_5c1e2a_idx'),
            models.Index(fields=['status'], name='campaign_ru_status_9b07d4_idx'),
        ]

    def __str__(self):
        return f"{self.theorem_id} over {self.field_token}: {self.status} ({self.passed}/{self.scanned})"

    @classmethod
    def from_report(cls, report) -> 'CampaignRun':
        return cls.objects.create(
            theorem_id=report.theorem_id,
            field_token=report.field_token,
            seed=report.seed,
            budget=report.budget,
            status=report.status,
            scanned=report.scanned,
            passed=report.passed,
            failed=report.failed,
            skipped=report.skipped,
            wall_time=report.wall_time,
            report=report.to_json(),
        )
