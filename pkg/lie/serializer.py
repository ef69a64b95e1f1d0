from rest_framework import serializers

from core.exceptions import AlgebraAxiomError, BreadthLabError
from fields.serializer import FieldSpecSerializer
from .algebra import LieAlgebra


class LieAlgebraSerializer(serializers.Serializer):
    """
    Algebra JSON: {"field": ..., "dim": n, "brackets": [[i, j, [[k, c], ...]], ...]}.
    Indices are 1-based and only i < j is listed; [e_j, e_i] is filled in.
    """
    field = FieldSpecSerializer()
    dim = serializers.IntegerField(min_value=0)
    brackets = serializers.ListField(child=serializers.ListField(min_length=3, max_length=3), default=list)
    labels = serializers.ListField(child=serializers.CharField(), required=False)
    name = serializers.CharField(required=False, allow_blank=True, default='')

    def validate(self, attrs):
        field = attrs['field']['field']
        n = attrs['dim']
        if 'labels' in attrs and len(attrs['labels']) != n:
            raise serializers.ValidationError({'labels': f'Expected {n} labels.'})

        table = {}
        for entry in attrs['brackets']:
            i, j, terms = entry
            if not isinstance(i, int) or not isinstance(j, int) or not 1 <= i < j <= n:
                raise serializers.ValidationError({
                    'brackets': f'Bracket [{i}, {j}] must satisfy 1 <= i < j <= {n}.'
                })
            if (i - 1, j - 1) in table:
                raise serializers.ValidationError({'brackets': f'Bracket [{i}, {j}] is listed twice.'})
            coefficients = {}
            for term in terms:
                if not isinstance(term, list) or len(term) != 2:
                    raise serializers.ValidationError({'brackets': f'Term {term!r} is not a [k, c] pair.'})
                k, c = term
                if not isinstance(k, int) or not 1 <= k <= n:
                    raise serializers.ValidationError({'brackets': f'Basis index {k} is out of range.'})
                try:
                    coefficients[k - 1] = field.wrap(field.from_json_value(c))
                except (ValueError, BreadthLabError) as e:
                    raise serializers.ValidationError({'brackets': str(e)})
            table[(i - 1, j - 1)] = coefficients

        try:
            attrs['algebra'] = LieAlgebra.from_brackets(field, n, table, labels=attrs.get('labels'),
                                                        name=attrs.get('name', ''))
        except AlgebraAxiomError as e:
            raise serializers.ValidationError({'brackets': f'Not a Lie algebra: {e.report}'})
        return attrs

    @classmethod
    def load(cls, data) -> LieAlgebra:
        serializer = cls(data=data)
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data['algebra']
