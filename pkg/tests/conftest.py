import pytest

from sinckit import make_builtin


BUILTIN_PARAMS = [
    ("constant", {}),
    ("cos", {"tau": 1.0}),
    ("sinc", {"tau": 1.0}),
    ("sinc2", {"tau": 2.0}),
    ("paper-example", {"tau": 1.0, "sigma": 1.0}),
]


def builtins():
    return [make_builtin(name, **kw) for name, kw in BUILTIN_PARAMS]


@pytest.fixture(params=BUILTIN_PARAMS, ids=[p[0] for p in BUILTIN_PARAMS])
def builtin(request):
    name, kw = request.param
    return make_builtin(name, **kw)
