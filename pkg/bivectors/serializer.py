from rest_framework import serializers

from fields.serializer import FieldSpecSerializer
from .bivector import pair_count
from .ideals import CentralIdeal


class CentralIdealSerializer(serializers.Serializer):
    """
    Ideal JSON: {"m_plus_1": 4, "basis": [[c_e12, ..., c_e34], ...]}.
    The field comes from an optional "field" entry or from context['field'].
    """
    m_plus_1 = serializers.IntegerField(min_value=2)
    basis = serializers.ListField(child=serializers.ListField(), default=list)
    field = FieldSpecSerializer(required=False)

    def validate(self, attrs):
        if 'field' in attrs:
            field = attrs['field']['field']
        elif self.context.get('field') is not None:
            field = self.context['field']
        else:
            raise serializers.ValidationError({'field': 'No field given in the ideal or on the command line.'})

        g = attrs['m_plus_1']
        width = pair_count(g)
        rows = []
        for row in attrs['basis']:
            if len(row) != width:
                raise serializers.ValidationError({
                    'basis': f'Each basis row needs {width} bivector coordinates for m_plus_1 = {g}.'
                })
            try:
                rows.append([field.from_json_value(c) for c in row])
            except ValueError as e:
                raise serializers.ValidationError({'basis': str(e)})

        attrs['ideal'] = CentralIdeal.span(field, g, field.copy(rows) if rows else [])
        return attrs

    @classmethod
    def load(cls, data, field=None) -> CentralIdeal:
        serializer = cls(data=data, context={'field': field})
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data['ideal']
