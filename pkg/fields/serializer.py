from rest_framework import serializers

from core.exceptions import UnsupportedField
from .spec import FINITE, RATIONAL, FieldSpec


class FieldSpecSerializer(serializers.Serializer):
    """Validates the FieldSpec JSON object and builds the FieldSpec"""
    kind = serializers.ChoiceField(choices=[FINITE, RATIONAL])
    p = serializers.IntegerField(required=False, min_value=2)
    n = serializers.IntegerField(required=False, min_value=1, default=1)
    modulus = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False)

    def validate(self, attrs):
        if attrs['kind'] == RATIONAL:
            if attrs.get('p') or attrs.get('modulus'):
                raise serializers.ValidationError({
                    'kind': 'The rational field takes no p or modulus.'
                })
            attrs['field'] = FieldSpec.rational()
            return attrs

        if 'p' not in attrs:
            raise serializers.ValidationError({'p': 'A finite field needs its characteristic p.'})
        try:
            attrs['field'] = FieldSpec.finite(attrs['p'], attrs.get('n', 1), attrs.get('modulus'))
        except UnsupportedField as e:
            raise serializers.ValidationError({'modulus': str(e)})
        return attrs

    @classmethod
    def load(cls, data) -> FieldSpec:
        serializer = cls(data=data)
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data['field']
