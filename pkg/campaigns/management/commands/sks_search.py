from campaigns.management.base import LabCommand
from campaigns.runner import run_sks_search


class Command(LabCommand):
    help = 'k_sks(n): the largest subspace of n x n skew matrices whose nonzero members are all nonsingular'

    def add_lab_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True, help='Matrix size')

    def run(self, options):
        field = self.parse_field(options)
        n = options['n']
        k, cert = run_sks_search(n, field, budget=options['budget'], jobs=self.jobs(options))
        return {
            'n': n,
            'field': field.token,
            'k_sks': k,
            'certificate': cert.to_json(),
        }
