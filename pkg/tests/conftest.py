import numpy as np
import pytest

from covcomb import backend


@pytest.fixture(params=backend.available_backends())
def any_backend(request):
    """Run the test once per importable execution path."""
    return request.param


def packed_equal(a, b) -> bool:
    return np.array_equal(a, b)
