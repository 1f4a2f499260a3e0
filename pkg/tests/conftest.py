import pytest

from siegel2 import GeneratorRegistry


@pytest.fixture(scope="session")
def registry(tmp_path_factory):
    """One shared registry per test session so generators build once."""
    return GeneratorRegistry(tmp_path_factory.mktemp("qexp-cache"))


@pytest.fixture(scope="session")
def gens6(registry):
    names = ("X4", "X6", "X10", "X12", "Y12", "X16", "X35")
    return {name: registry.generator(name, 6) for name in names}
