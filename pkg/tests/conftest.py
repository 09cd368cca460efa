import pytest

from omlkit.corpus import lattice_corpus, oml_corpus


@pytest.fixture(scope="session")
def corpus():
    return lattice_corpus()


@pytest.fixture(scope="session")
def omls():
    return oml_corpus()


@pytest.fixture(scope="session")
def kalmbach_corpus(corpus):
    """K(L) for every corpus base, built once per session."""
    from omlkit.kalmbach import kalmbach

    return {nm: kalmbach(L) for nm, L in corpus.items()}


@pytest.fixture(scope="session")
def rn3():
    """K(rn_lattice(3)) with its base, built once per session."""
    from omlkit.kalmbach import kalmbach
    from omlkit.rn import rn_lattice

    base = rn_lattice(3)
    return base, kalmbach(base)


@pytest.fixture(scope="session")
def rn4():
    """K(rn_lattice(4)), its base, and the build time in seconds (slow)."""
    import time

    from omlkit.kalmbach import kalmbach
    from omlkit.rn import rn_lattice

    start = time.monotonic()
    base = rn_lattice(4)
    K = kalmbach(base)
    return base, K, time.monotonic() - start
