from campaigns.management.base import LabCommand
from lie.serializer import LieAlgebraSerializer
from normalform.classify import classify_4gen_2step


class Command(LabCommand):
    help = 'Match a 4-generator class-2 algebra against the (0,3) stem families'
    takes_field = False

    def add_lab_arguments(self, parser):
        parser.add_argument('--alg', required=True, help='Path to the algebra JSON')

    def run(self, options):
        L = LieAlgebraSerializer.load(self.load_json(options['alg']))
        result = classify_4gen_2step(L)
        return {'algebra': L.name, 'breadth_type_03': result.breadth_type, **result.to_json()}
