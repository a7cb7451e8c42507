import os
import shutil

import pytest


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("ALPHATAG_CLI") or shutil.which("alphatag")
    if not path:
        pytest.skip("alphatag CLI not found; set ALPHATAG_CLI")
    return path
