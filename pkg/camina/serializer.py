from rest_framework import serializers

from core.exceptions import BreadthLabError
from fields.serializer import FieldSpecSerializer
from linalg.matrix import Matrix
from .certificates import RankSubspaceCertificate


class RankSubspaceCertificateSerializer(serializers.Serializer):
    """
    Certificate JSON: {"n": 2, "field": {...}, "skew": false, "basis": [[[1, 0], [0, 1]], ...]}.
    Matrices are lists of rows; entries follow the field's JSON value rules.
    """
    n = serializers.IntegerField(min_value=0)
    field = FieldSpecSerializer()
    basis = serializers.ListField(child=serializers.ListField(child=serializers.ListField()), default=list)
    skew = serializers.BooleanField(default=True)
    lower_bound = serializers.BooleanField(default=False)

    def validate(self, attrs):
        field = attrs['field']['field']
        n = attrs['n']
        matrices = []
        for index, rows in enumerate(attrs['basis']):
            if len(rows) != n or any(len(row) != n for row in rows):
                raise serializers.ValidationError({'basis': f'Matrix {index + 1} is not {n}x{n}.'})
            data = field.zeros((n, n))
            try:
                for i, row in enumerate(rows):
                    for j, c in enumerate(row):
                        data[i, j] = field.from_json_value(c)
            except ValueError as e:
                raise serializers.ValidationError({'basis': str(e)})
            matrices.append(Matrix(field, data))

        try:
            attrs['certificate'] = RankSubspaceCertificate(n, field, tuple(matrices), skew=attrs['skew'],
                                                           lower_bound=attrs['lower_bound'])
        except BreadthLabError as e:
            raise serializers.ValidationError({'basis': str(e)})
        return attrs

    @classmethod
    def load(cls, data) -> RankSubspaceCertificate:
        serializer = cls(data=data)
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data['certificate']
