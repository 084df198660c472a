import pytest
from faker import Faker
from hypothesis import settings

settings.register_profile("pops", deadline=None, max_examples=50)
settings.load_profile("pops")


@pytest.fixture
def fake() -> Faker:
    return Faker()
