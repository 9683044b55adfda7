from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from generators import nine_stem_payloads, nine_stem_piece


@pytest.fixture
def demo_piece():
    return nine_stem_piece()


@pytest.fixture
def demo_payloads(demo_piece):
    return nine_stem_payloads(demo_piece)
