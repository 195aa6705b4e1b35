from __future__ import annotations

import pytest

from pricetree.wording import Vocabulary


@pytest.fixture
def vocab() -> Vocabulary:
    return Vocabulary.default()
