"""
Management command to build a named algebra family as JSON.

Families: L<m>, H<m>, h<m>, sl2, five-dim, camina-nonnilpotent and
theorem:<i|ii|iii|iv>. --quotient divides L<m> by a central ideal given as
ideal JSON.
"""
import re

from django.core.management.base import CommandError

from bivectors.serializer import CentralIdealSerializer
from campaigns.management.base import USAGE, LabCommand
from lie.constructions import build_family, free_quotient


class Command(LabCommand):
    help = 'Build a named algebra family and write its JSON'

    def add_lab_arguments(self, parser):
        parser.add_argument('--family', required=True, help='Family key, e.g. L3, h2, five-dim, theorem:iv')
        parser.add_argument(
            '--modulus',
            help='Comma-separated monic modulus, low degree first, for the h<m> family',
        )
        parser.add_argument('--quotient', metavar='PATH', help='Ideal JSON to divide L<m> by')
        parser.add_argument('--out', dest='json', metavar='PATH', help='Same as --json')

    def run(self, options):
        field = self.parse_field(options)
        modulus = None
        if options['modulus']:
            modulus = [int(c) for c in options['modulus'].split(',')]
        L = build_family(options['family'], field, modulus)

        if options['quotient']:
            match = re.fullmatch(r'L(\d+)', options['family'])
            I = CentralIdealSerializer.load(self.load_json(options['quotient']), field=field)
            if not match or int(match.group(1)) != I.m:
                raise CommandError(
                    f"--quotient needs --family L{I.m} for an ideal on {I.g} generators",
                    returncode=USAGE,
                )
            L = free_quotient(field, I.m, I.subspace, name=f"{L.name}/{I!r}")
        return L.to_json()
