"""
Management command to run a theorem-verification campaign.

Campaigns: t01, t02, t03-odd, t03-even, camina-bound, correspondence,
rational-camina. The report is printed (or written with --json) before the
exit status is decided, so failing and budget-limited runs still leave a
report behind. --record stores it as a CampaignRun and adds the stored row
under "recorded".
"""
from django.core.management.base import CommandError

from campaigns.management.base import USAGE, LabCommand
from campaigns.models import CampaignRun
from campaigns.serializer import CampaignRunSerializer
from campaigns.report import BUDGET, FAIL
from campaigns.runner import run_campaign


def parse_layers(value: str):
    layers = sorted({int(v) for v in value.split(',') if v.strip()})
    if not layers or any(d not in (1, 2, 3) for d in layers):
        raise CommandError(f"--layers takes a comma-separated subset of 1,2,3, got {value!r}", returncode=USAGE)
    return layers


class Command(LabCommand):
    help = 'Run a theorem-verification campaign and print its JSON report'

    def add_lab_arguments(self, parser):
        parser.add_argument('theorem_id', help='Campaign to run, e.g. t03-odd')
        parser.add_argument('--n', type=int, help='Matrix size for camina-bound (default 4)')
        parser.add_argument('--m', type=int, help='Generator parameter for t01 and correspondence')
        parser.add_argument('--samples', type=int, help='Sampled instances per shard')
        parser.add_argument('--layers', help='Ideal dimensions for t03 campaigns, e.g. 1,2')
        parser.add_argument(
            '--skip-quotient-types',
            action='store_true',
            help='t03: skip the exact breadth type of each quotient',
        )
        parser.add_argument(
            '--record',
            action='store_true',
            help='Store the report in the database',
        )

    def run(self, options):
        campaign_options = {
            'seed': self.seed(options),
            'budget': options['budget'],
        }
        for key in ('n', 'm', 'samples'):
            if options[key] is not None:
                campaign_options[key] = options[key]
        if options['layers']:
            campaign_options['layers'] = parse_layers(options['layers'])
        if options['skip_quotient_types']:
            campaign_options['exact'] = False

        self.report = run_campaign(options['theorem_id'], options['field'], campaign_options,
                                   jobs=self.jobs(options))
        payload = self.report.to_json()
        if options['record']:
            run = CampaignRun.from_report(self.report)
            self.stderr.write(self.style.SUCCESS(f"Recorded campaign run {run.id}"))
            recorded = CampaignRunSerializer(run).data
            recorded.pop('report')
            payload['recorded'] = recorded
        return payload

    def failure(self, payload):
        if payload['status'] == FAIL:
            return f"{self.report.failed} of {self.report.scanned} instances failed", 1
        if payload['status'] == BUDGET:
            return f"{self.report.skipped} instances exceeded the budget; the report is partial", 3
        return None
