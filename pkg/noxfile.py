import nox
from nox_poetry import session

nox.options.sessions = ["tests"]

TEST_ENV_VARS = {
    "POP_LOG_LEVEL": "info",
    "POP_WORKERS": "1",
    "POP_MAX_HORIZON": "9",
    "POP_MAX_BOARD_SIZE": "6",
}


@session(python="3.12", reuse_venv=True)
def tests(local_session):
    """Run the fast test suite"""
    local_session.run_always("poetry", "install", external=True)

    local_session.run(
        "pytest",
        "--disable-warnings",
        "tests",
        *local_session.posargs,
        env=TEST_ENV_VARS,
    )


@session(python="3.12", reuse_venv=True)
def test_integration(local_session):
    """Run the slow table reproductions"""
    local_session.run_always("poetry", "install", external=True)

    local_session.run(
        "pytest",
        "--disable-warnings",
        "-m",
        "slow",
        "tests/integration",
        *local_session.posargs,
        env={**TEST_ENV_VARS, "POP_WORKERS": "4"},
    )
