from rest_framework import serializers

from crmaps.jets import DegeneracyProfile
from crmaps.maps import CRMap
from exact.serializers import GaussianRationalField
from polys.polynomials import MultiPoly
from polys.serializers import PolynomialField


class PointField(serializers.ListField):
    child = GaussianRationalField()

    def to_internal_value(self, data):
        return tuple(super().to_internal_value(data))


class CRMapSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1)
    N = serializers.IntegerField(min_value=1)
    components = serializers.ListField(child=PolynomialField(), allow_empty=False)

    def validate(self, attrs):
        nvars = attrs['n'] + 1
        # An empty term list carries no variable count of its own.
        attrs['components'] = [
            component if component else MultiPoly.zero(nvars) for component in attrs['components']
        ]
        CRMap(attrs['n'], attrs['N'], attrs['components'])
        return attrs

    def create(self, validated_data):
        return CRMap(validated_data['n'], validated_data['N'], validated_data['components'])


class DegeneracyProfileSerializer(serializers.Serializer):
    point = PointField()
    dims = serializers.ListField(child=serializers.IntegerField(min_value=0), allow_empty=False)
    l0 = serializers.IntegerField(min_value=1)
    transversal = serializers.BooleanField()
    strictly_increasing = serializers.BooleanField(read_only=True)
    warnings = serializers.ListField(child=serializers.CharField(), required=False)

    def validate(self, attrs):
        if attrs['dims'][0] != 0 or any(a > b for a, b in zip(attrs['dims'], attrs['dims'][1:])):
            raise serializers.ValidationError('dims must start at 0 and be nondecreasing.', code='malformed_profile')
        if attrs['l0'] != len(attrs['dims']):
            raise serializers.ValidationError('l0 must equal the number of dims.', code='malformed_profile')
        return attrs

    def create(self, validated_data):
        return DegeneracyProfile(**validated_data)
