from rest_framework import serializers

from exact.serializers import GaussianRationalField
from polys.polynomials import Monomial, MultiPoly


class TermSerializer(serializers.Serializer):
    coeff = GaussianRationalField()
    z = serializers.ListField(child=serializers.IntegerField(min_value=0), allow_empty=False)
    zeta = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False)

    def validate(self, attrs):
        zeta = attrs.get('zeta') or [0] * len(attrs['z'])
        if len(zeta) != len(attrs['z']):
            raise serializers.ValidationError('"z" and "zeta" must have the same length.')
        attrs['zeta'] = zeta
        return attrs


class PolynomialField(serializers.Field):
    """A polynomial serialized as a list of {"coeff": ..., "z": [...], "zeta": [...]} terms.

    "zeta" is omitted on output when the term is holomorphic. The empty list is the zero polynomial;
    its variable count is `nvars` when given, 0 otherwise (owning serializers fix it up).
    """
    default_error_messages = {
        'not_a_list': 'Expected a list of terms.',
        'mixed_lengths': 'All terms must use the same number of variables.',
        'wrong_length': 'Expected polynomials in {nvars} variables.',
    }

    def __init__(self, nvars=None, **kwargs):
        self.nvars = nvars
        self.coeff_field = GaussianRationalField()
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        if not isinstance(data, list):
            self.fail('not_a_list')
        terms = []
        for item in data:
            term = TermSerializer(data=item)
            term.is_valid(raise_exception=True)
            terms.append(term.validated_data)
        lengths = {len(term['z']) for term in terms}
        if len(lengths) > 1:
            self.fail('mixed_lengths')
        nvars = lengths.pop() if lengths else (self.nvars or 0)
        if self.nvars is not None and nvars != self.nvars:
            self.fail('wrong_length', nvars=self.nvars)
        return MultiPoly(nvars, [(Monomial(term['z'], term['zeta']), term['coeff']) for term in terms])

    def to_representation(self, value):
        result = []
        for monomial, coeff in value.terms:
            term = {'coeff': self.coeff_field.to_representation(coeff), 'z': list(monomial.z)}
            if not monomial.is_holomorphic:
                term['zeta'] = list(monomial.zeta)
            result.append(term)
        return result
