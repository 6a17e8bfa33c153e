from rest_framework import serializers

from exact.serializers import ExactMatrixField
from identity.decomposition import decompose
from identity.lemma import BoundReport, IdentityProblem, SolutionPair, SolutionSpace, lemma_bound
from identity.sharpness import sharp_example
from polys.polynomials import MultiPoly
from polys.serializers import PolynomialField


class IdentityProblemSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1)
    degree = serializers.IntegerField(min_value=1)
    m = serializers.IntegerField(read_only=True)
    p = serializers.ListField(child=PolynomialField(), allow_empty=False)

    def validate(self, attrs):
        attrs['p'] = [poly if poly else MultiPoly.zero(attrs['n']) for poly in attrs['p']]
        attrs['problem'] = IdentityProblem(attrs['n'], attrs['degree'], attrs['p'])
        return attrs

    def create(self, validated_data):
        return validated_data['problem']


class SolutionPairSerializer(serializers.Serializer):
    Q = ExactMatrixField()
    r = PolynomialField()
    q = serializers.SerializerMethodField()

    def get_q(self, pair):
        field = PolynomialField()
        return [field.to_representation(poly) for poly in pair.conjugate_form()]

    def validate(self, attrs):
        r = attrs['r'] if attrs['r'] else MultiPoly.zero(attrs['Q'].cols)
        attrs['pair'] = SolutionPair(attrs['Q'], r)
        return attrs

    def create(self, validated_data):
        return validated_data['pair']


class SolutionSpaceSerializer(serializers.Serializer):
    form = serializers.ChoiceField(choices=['matrix', 'conjugate'])
    dim = serializers.IntegerField(read_only=True)
    basis = SolutionPairSerializer(many=True)

    def create(self, validated_data):
        return SolutionSpace(validated_data['form'], [item['pair'] for item in validated_data['basis']])


class BoundReportSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=2)
    m = serializers.IntegerField(min_value=1)
    degree = serializers.IntegerField(min_value=1)
    bound = serializers.IntegerField(allow_null=True)
    dim = serializers.IntegerField(min_value=0)
    violated = serializers.BooleanField(read_only=True)
    tight = serializers.BooleanField(read_only=True)

    def validate(self, attrs):
        expected = lemma_bound(attrs['n'], attrs['m'])
        if attrs['bound'] != expected:
            raise serializers.ValidationError({'bound': f'Expected {expected} for n={attrs["n"]}, m={attrs["m"]}.'})
        return attrs

    def create(self, validated_data):
        return BoundReport(**validated_data)


class SharpExampleSerializer(serializers.Serializer):
    """Only n, k and literal are read back; everything else is rebuilt from them."""
    n = serializers.IntegerField(min_value=2)
    k = serializers.IntegerField(min_value=1)
    literal = serializers.BooleanField(default=False)
    reading = serializers.CharField(read_only=True)
    m = serializers.IntegerField(read_only=True)
    problem = IdentityProblemSerializer(read_only=True)
    solutions = SolutionPairSerializer(many=True, read_only=True)
    dim = serializers.IntegerField(read_only=True)
    bound = serializers.IntegerField(read_only=True, allow_null=True)
    tight = serializers.BooleanField(read_only=True)

    def validate(self, attrs):
        attrs['example'] = sharp_example(attrs['n'], attrs['k'], attrs['literal'])
        return attrs

    def create(self, validated_data):
        return validated_data['example']


class DecompositionSerializer(serializers.Serializer):
    problem = IdentityProblemSerializer()
    solutions = SolutionPairSerializer(many=True, allow_empty=False)
    kappa = serializers.IntegerField(read_only=True)
    v = ExactMatrixField(read_only=True)
    h = serializers.ListField(child=PolynomialField(), read_only=True)
    r = serializers.ListField(child=PolynomialField(), read_only=True)
    s = serializers.ListField(child=serializers.ListField(child=PolynomialField()), read_only=True)

    def validate(self, attrs):
        attrs['decomposition'] = decompose(attrs['problem']['problem'], [item['pair'] for item in attrs['solutions']])
        return attrs

    def create(self, validated_data):
        return validated_data['decomposition']
