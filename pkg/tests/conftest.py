import numpy as np
import pytest

from secrecy_region import ChannelPair

import golden


@pytest.fixture(scope="session")
def example_channel() -> ChannelPair:
    """The bundled two-antenna example, text variant, real mode."""
    return ChannelPair(
        np.array(golden.EXAMPLE_H, dtype=complex),
        np.array(golden.EXAMPLE_G_TEXT, dtype=complex),
        golden.EXAMPLE_POWER,
        "real",
    )


@pytest.fixture(scope="session")
def matrix_variant_channel() -> ChannelPair:
    return ChannelPair(
        np.array(golden.EXAMPLE_H, dtype=complex),
        np.array(golden.EXAMPLE_G_MATRIX, dtype=complex),
        golden.EXAMPLE_POWER,
        "real",
    )
