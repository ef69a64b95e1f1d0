"""
Management command for the group correspondence: conjugate types of
G_m / N against breadth types of L_m / psi_R(N) over GF(p).
"""
from django.core.management.base import CommandError

from bivectors.serializer import CentralIdealSerializer
from campaigns.management.base import USAGE, LabCommand
from groupcorr.correspondence import central_subgroup_of, group_field, iter_central_subgroups, \
    verify_correspondence


class Command(LabCommand):
    help = 'Compare conjugate types of G_m/N with breadth types of L_m/psi_R(N)'
    takes_field = False

    def add_lab_arguments(self, parser):
        parser.add_argument('--p', type=int, default=3, help='Odd prime (default: %(default)s)')
        parser.add_argument('--m', type=int, default=2, help='G_m has m+1 generators (default: %(default)s)')
        target = parser.add_mutually_exclusive_group()
        target.add_argument(
            '--all-central-subgroups',
            action='store_true',
            help='Check every central subgroup N',
        )
        target.add_argument('--ideal', metavar='PATH', help='Ideal JSON for N = psi_R^-1(I)')

    def run(self, options):
        p, m = options['p'], options['m']
        field = group_field(p)
        if options['ideal']:
            I = CentralIdealSerializer.load(self.load_json(options['ideal']), field=field)
            if I.m != m:
                raise CommandError(f"The ideal lives on {I.g} generators, not {m + 1}", returncode=USAGE)
            subgroups = [central_subgroup_of(I)]
        elif options['all_central_subgroups']:
            subgroups = list(iter_central_subgroups(p, m))
        else:
            subgroups = [None]

        results = [verify_correspondence(p, m, N, budget=options['budget']) for N in subgroups]
        return {
            'p': p,
            'm': m,
            'count': len(results),
            'mismatches': sum(not r.ok for r in results),
            'results': [r.to_json() for r in results],
        }

    def failure(self, payload):
        if payload['mismatches']:
            return f"{payload['mismatches']} central subgroups break the correspondence", 1
        return None
