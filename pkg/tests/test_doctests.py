import doctest

from stochlab.colorlab import descent, words


def test_module_doctests():
    for module in (words, descent):
        result = doctest.testmod(module)
        assert result.attempted > 0
        assert result.failed == 0
