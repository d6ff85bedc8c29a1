from __future__ import annotations

import pytest

from kumar.correspondence import forward, reverse
from kumar.examples import build_hm_pair, cotangent_triple, kumar_char2, null_correlation


@pytest.fixture(scope="session")
def hm():
    return build_hm_pair()


@pytest.fixture(scope="session")
def hm_reverse(hm):
    return reverse(hm.pair)


@pytest.fixture(scope="session")
def builtin_triples(hm_reverse):
    return {
        "null-correlation": null_correlation(),
        "kumar-char2": kumar_char2(),
        "cotangent-2": cotangent_triple(2),
        "cotangent-4": cotangent_triple(4),
        "horrocks-mumford": hm_reverse[0],
    }


@pytest.fixture(scope="session")
def builtin_pairs(hm):
    return {
        "null-correlation": forward(null_correlation()),
        "kumar-char2": forward(kumar_char2()),
        "horrocks-mumford": hm.pair,
    }
