import factory
from factory import fuzzy

from .params import ChaoticParams


class ChaoticParamsFactory(factory.Factory):
    class Meta:
        model = ChaoticParams

    r = fuzzy.FuzzyFloat(3.57, 3.99)
    x0 = fuzzy.FuzzyFloat(0.01, 0.99)
    epsilon = fuzzy.FuzzyFloat(0.001, 0.05)
    length = fuzzy.FuzzyInteger(1, 1000)
