"""
Shared fixtures. Puts src/ and the repository root on sys.path so tests
import modules by bare name, the way src/main.py does.
"""

import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, 'src'))
sys.path.insert(0, ROOT)

import numpy as np
import pytest

import config


@pytest.fixture
def rng():
    return np.random.default_rng(20031)


@pytest.fixture(autouse=True)
def quiet(monkeypatch):
    """No progress bars or verbose prints in test output."""
    monkeypatch.setattr(config, 'ENABLE_PROGRESS_BAR', False)
    monkeypatch.setattr(config, 'VERBOSE', False)
