"""
Management command to test the Camina property.

The definition scans one element per line outside L' (finite fields); the
structure-matrix route decides the rank condition on the bracket matrices
and also covers 4-generator algebras over Q.
"""
from camina.camina import DEFINITION, STRUCTURE_MATRICES, camina_via_structure_matrices, generator_bound, \
    is_camina
from campaigns.management.base import LabCommand
from lie.serializer import LieAlgebraSerializer


class Command(LabCommand):
    help = 'Decide whether an algebra given as JSON is Camina'
    takes_field = False

    def add_lab_arguments(self, parser):
        parser.add_argument('--alg', required=True, help='Path to the algebra JSON')
        parser.add_argument(
            '--method',
            choices=[DEFINITION, STRUCTURE_MATRICES],
            help='Default: the definition over finite fields, structure matrices over Q',
        )
        parser.add_argument('--generators', type=int, help='Declared number of generators')

    def run(self, options):
        L = LieAlgebraSerializer.load(self.load_json(options['alg']))
        method = options['method'] or (DEFINITION if L.field.is_finite else STRUCTURE_MATRICES)
        if method == DEFINITION:
            result = is_camina(L, budget=options['budget'])
        else:
            result = camina_via_structure_matrices(L, options['generators'])
        data = {'algebra': L.name, **result.to_json()}
        if result and L.is_nilpotent() and L.nilpotency_class() == 2:
            data['generator_bound'] = generator_bound(L)
        return data
