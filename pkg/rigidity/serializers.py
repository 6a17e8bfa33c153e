from rest_framework import serializers

from crmaps.jets import DegeneracyProfile
from crmaps.serializers import DegeneracyProfileSerializer
from rigidity.defect import RigidityVerdict, defect


def rebuild_defect(data):
    """Recompute the report from n, N and dims and check any stated k_per_level, k and plane_bound against it."""
    report = defect(data['n'], data['dims'], data.get('N'))
    for key in ('k_per_level', 'k', 'plane_bound'):
        if key not in data:
            continue
        stated = tuple(data[key]) if key == 'k_per_level' else data[key]
        if stated != getattr(report, key):
            raise serializers.ValidationError(
                {key: f'Inconsistent with the profile: expected {getattr(report, key)}, got {data[key]}.'}
            )
    return report


class DefectReportSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1)
    N = serializers.IntegerField(min_value=1, allow_null=True, required=False)
    dims = serializers.ListField(child=serializers.IntegerField(min_value=0), allow_empty=False)
    increments = serializers.ListField(child=serializers.IntegerField(), read_only=True)
    k_per_level = serializers.ListField(child=serializers.IntegerField(allow_null=True), required=False)
    k = serializers.IntegerField(allow_null=True, required=False)
    d = serializers.IntegerField(read_only=True)
    plane_bound = serializers.IntegerField(allow_null=True, required=False)
    hypothesis_ok = serializers.BooleanField(read_only=True)
    codim_criterion_ok = serializers.BooleanField(read_only=True, allow_null=True)
    reasons = serializers.ListField(child=serializers.CharField(), read_only=True)

    def validate(self, attrs):
        attrs['report'] = rebuild_defect(attrs)
        return attrs

    def create(self, validated_data):
        return validated_data['report']


class RigidityVerdictSerializer(serializers.Serializer):
    n = serializers.IntegerField(source='defect.n', min_value=1)
    N = serializers.IntegerField(source='defect.N', min_value=1)
    dims = serializers.ListField(source='defect.dims', child=serializers.IntegerField(min_value=0), allow_empty=False)
    k_per_level = serializers.ListField(
        source='defect.k_per_level', child=serializers.IntegerField(allow_null=True), required=False,
    )
    k = serializers.IntegerField(source='defect.k', allow_null=True, required=False)
    d = serializers.IntegerField(source='defect.d', read_only=True)
    plane_bound = serializers.IntegerField(source='defect.plane_bound', allow_null=True, required=False)
    image_span = serializers.IntegerField(min_value=0)
    hypothesis_ok = serializers.BooleanField(source='defect.hypothesis_ok', read_only=True)
    codim_criterion_ok = serializers.BooleanField(source='defect.codim_criterion_ok', read_only=True)
    lower_bound_ok = serializers.BooleanField(read_only=True)
    upper_bound_ok = serializers.BooleanField(read_only=True, allow_null=True)
    sharp = serializers.BooleanField(read_only=True)
    reasons = serializers.ListField(source='defect.reasons', child=serializers.CharField(), read_only=True)
    profile = DegeneracyProfileSerializer(required=False, allow_null=True)
    warnings = serializers.ListField(child=serializers.CharField(), read_only=True)

    def validate(self, attrs):
        attrs['defect'] = rebuild_defect(attrs['defect'])
        if attrs.get('profile') is not None:
            profile = DegeneracyProfile(**attrs['profile'])
            if profile.dims != attrs['defect'].dims:
                raise serializers.ValidationError(
                    {'profile': f'Profile dims {list(profile.dims)} differ from dims {list(attrs["defect"].dims)}.'}
                )
            attrs['profile'] = profile
        return attrs

    def create(self, validated_data):
        return RigidityVerdict(**validated_data)
