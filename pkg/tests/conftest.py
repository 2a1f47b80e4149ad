import pytest

from triway.datasets import load_journals, load_messages


@pytest.fixture(scope="session")
def journals():
    return load_journals()


@pytest.fixture(scope="session")
def messages():
    return load_messages()


@pytest.fixture(scope="session")
def messages_conditional():
    return load_messages(conditionality="conditional")
