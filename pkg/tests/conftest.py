"""
Varel - Pytest Yapılandırması
=============================

Test fixture'ları ve ortak yapılandırma.
"""

import sys
from pathlib import Path

import pytest

# Proje kök dizinini Python path'e ekle
project_root = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(project_root))


@pytest.fixture(scope="session")
def app_settings():
    """Test için kütüphane ayarlarını döndürür."""
    from app.config import get_settings
    return get_settings()


@pytest.fixture(scope="session")
def constant_structure():
    """α ≡ 1, β ≡ 0: klasik karmaşık yapı."""
    from app.structure.structure_field import CoefficientEvaluator, StructureField
    return StructureField(CoefficientEvaluator.constant())


@pytest.fixture(scope="session")
def epsilon_family():
    """ε = 0.1 ailesi (rijit)."""
    from app.structure.epsilon import EpsilonStructure
    return EpsilonStructure.make(0.1)


@pytest.fixture(scope="session")
def epsilon_structure(epsilon_family):
    return epsilon_family.structure()


@pytest.fixture(scope="session")
def nonrigid_structure():
    """α = 1, β = y/2: rijit olmayan eliptik yapı (|y| < 4)."""
    from app.structure.structure_field import CoefficientEvaluator, StructureField
    return StructureField(CoefficientEvaluator.from_expressions("1", "y/2", name="nonrigid"))


@pytest.fixture
def half_disk():
    """Merkezde 0.5 yarıçaplı disk."""
    from app.integral.regions import Disk
    return Disk(center=(0.0, 0.0), radius=0.5)
