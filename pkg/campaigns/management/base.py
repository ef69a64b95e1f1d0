"""
Shared base for the breadth-lab management commands.

Every command takes --budget, --seed, --json and --jobs (and --field when
it builds objects over a field), prints sorted JSON, and maps domain errors
onto exit codes: 1 mathematical failure, 2 usage error, 3 budget exceeded.
"""
import json
import logging
from pathlib import Path
from typing import Optional, Tuple

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from core.conf import lab_setting
from core.exceptions import BreadthLabError, BudgetExceeded
from fields.spec import FieldSpec

logger = logging.getLogger('campaigns')

USAGE = 2


def non_negative(value: str) -> int:
    number = int(value)
    if number < 0:
        raise ValueError(f"{value} is negative")
    return number


class LabCommand(BaseCommand):
    takes_field = True
    default_field = 'gf3'

    def add_arguments(self, parser):
        if self.takes_field:
            parser.add_argument(
                '--field',
                default=self.default_field,
                help='Field token: gfP, gfP^N or rational (default: %(default)s)',
            )
        parser.add_argument(
            '--budget',
            type=non_negative,
            help='Coset or search budget; defaults come from settings',
        )
        parser.add_argument(
            '--seed',
            type=non_negative,
            help='Seed for any sampled computation (default: BREADTHLAB_SEED)',
        )
        parser.add_argument(
            '--json',
            metavar='PATH',
            help='Write the JSON output to PATH instead of stdout',
        )
        parser.add_argument(
            '--jobs',
            type=non_negative,
            help='Worker shards for campaigns and searches (default: BREADTHLAB_JOBS)',
        )
        self.add_lab_arguments(parser)

    def add_lab_arguments(self, parser):
        pass

    def run(self, options) -> dict:
        raise NotImplementedError

    def failure(self, payload: dict) -> Optional[Tuple[str, int]]:
        """(message, exit code) when the emitted result should fail the command."""
        return None

    # helpers

    def parse_field(self, options) -> FieldSpec:
        return FieldSpec.parse(options['field'])

    def seed(self, options) -> int:
        return lab_setting('BREADTHLAB_SEED') if options.get('seed') is None else options['seed']

    def jobs(self, options) -> int:
        return lab_setting('BREADTHLAB_JOBS') if options.get('jobs') is None else options['jobs']

    def load_json(self, path: str):
        try:
            return json.loads(Path(path).read_text())
        except (OSError, ValueError) as e:
            raise CommandError(f"Cannot read JSON from {path}: {e}", returncode=USAGE)

    def emit(self, payload: dict, options):
        text = json.dumps(payload, indent=2, sort_keys=True)
        if options.get('json'):
            Path(options['json']).write_text(text + '\n')
            self.stderr.write(self.style.SUCCESS(f"Wrote {options['json']}"))
        else:
            self.stdout.write(text)

    def handle(self, *args, **options):
        try:
            payload = self.run(options)
        except BudgetExceeded as e:
            partial = getattr(e.partial, 'to_json', None)
            if partial is not None:
                self.emit({'error': str(e), 'partial': partial()}, options)
            raise CommandError(str(e), returncode=e.exit_code)
        except BreadthLabError as e:
            logger.info(f"{self.__module__.rsplit('.', 1)[-1]}: {e.__class__.__name__}: {e}")
            raise CommandError(f"{e.__class__.__name__}: {e}", returncode=e.exit_code)
        except ValidationError as e:
            raise CommandError(f"Invalid input: {e.detail}", returncode=USAGE)
        except ValueError as e:
            raise CommandError(str(e), returncode=USAGE)

        self.emit(payload, options)
        failed = self.failure(payload)
        if failed:
            message, code = failed
            raise CommandError(message, returncode=code)
