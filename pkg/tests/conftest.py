import pytest

from supernil import realize


@pytest.fixture(scope="session")
def built():
    """Session cache of constructed algebras keyed by (family, params)."""
    cache = {}

    def get(family, params):
        key = (family, tuple(params))
        if key not in cache:
            cache[key] = realize.build_family(family, tuple(params))
        return cache[key]

    return get
