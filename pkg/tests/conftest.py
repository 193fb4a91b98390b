
import pytest
from hypothesis import settings

from gyrolab import corpus
from gyrolab.finite import cyclic_group

settings.register_profile("gyrolab", deadline=None, max_examples=100)
settings.load_profile("gyrolab")



@pytest.fixture(scope="session")
def tables():
    return corpus.tables()


@pytest.fixture
def z4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def proper8(tables):
    """The bundled order-8 gyrogroups that are not groups."""
    return {k: v for k, v in tables.items() if k.startswith("gyro8")}


def corpus_pairs(full_order=5, max_order=8):
    """(G, tau) pairs: every topology for orders up to ``full_order``, and
    above that the translate topologies, which contain every paratopological
    one."""
    from gyrolab.enumeration import enumerate_gyrogroups
    from gyrolab.search import translate_topologies
    from gyrolab.topology import enumerate_topologies

    for G in enumerate_gyrogroups(max_order):
        topos = enumerate_topologies(G.order) if G.order <= full_order else translate_topologies(G)
        for tau in topos:
            yield G, tau


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
