"""
Management command to compute the breadth type of an algebra.

Exact mode enumerates the cosets of the centre; --sample draws seeded random
elements and reports the observed set with its upper bound.
"""
from campaigns.management.base import LabCommand
from lie.invariants import breadth_type_bounds
from lie.serializer import LieAlgebraSerializer


class Command(LabCommand):
    help = 'Breadth type of an algebra given as JSON'
    takes_field = False

    def add_lab_arguments(self, parser):
        parser.add_argument('--alg', required=True, help='Path to the algebra JSON')
        mode = parser.add_mutually_exclusive_group()
        mode.add_argument(
            '--exact',
            action='store_true',
            help='Enumerate every coset of the centre (finite fields)',
        )
        mode.add_argument(
            '--sample',
            type=int,
            metavar='N',
            help='Draw N seeded random elements instead',
        )

    def run(self, options):
        L = LieAlgebraSerializer.load(self.load_json(options['alg']))
        mode = 'exact' if options['exact'] else 'sample' if options['sample'] else 'auto'
        bt = L.breadth_type(mode=mode, budget=options['budget'], samples=options['sample'],
                            seed=self.seed(options))
        data = {
            'algebra': L.name,
            'dim': L.dim,
            'field': L.field.token,
            'label': str(bt),
            **bt.to_json(),
        }
        if L.is_nilpotent():
            data['nilpotency_class'] = L.nilpotency_class()
            if bt.exact and not L.is_abelian():
                data['bounds'] = breadth_type_bounds(L, bt).to_json()
        return data
