import os

import pytest

from app.algebra_workbench.algebra.generators import matring2, powerset, zmod
from app.algebra_workbench.ingest.structure_format import load_structure
from app.config.settings import STRUCTURES_DIR


def _structure(name: str):
    return load_structure(os.path.join(STRUCTURES_DIR, f"{name}.struct"))


@pytest.fixture(scope='session')
def boolean16():
    """16 元布尔代数（以偏序集形式读入）"""
    return _structure('boolean16')


@pytest.fixture(scope='session')
def complemented10():
    """可补但不分配的 10 元偏序集"""
    return _structure('complemented10')


@pytest.fixture(scope='session')
def boolean_poset10():
    """10 元布尔偏序集，不是格"""
    return _structure('boolean_poset10')


@pytest.fixture(scope='session')
def z5():
    return zmod(5)


@pytest.fixture(scope='session')
def z6():
    return zmod(6)


@pytest.fixture(scope='session')
def m2():
    return matring2()


@pytest.fixture(scope='session')
def b2():
    return powerset(2)


@pytest.fixture(scope='session')
def b3():
    return powerset(3)


@pytest.fixture
def structure_path():
    def path(name: str) -> str:
        return os.path.join(STRUCTURES_DIR, f"{name}.struct")
    return path
