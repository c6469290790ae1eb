import socket
from pathlib import Path

import pytest

from d3.nl.config import ProviderConfig

REPO_ROOT = Path(__file__).resolve().parent.parent
DEMO_FIXTURES = REPO_ROOT / "demo" / "fixtures.json"
DEMO_SCRIPT = REPO_ROOT / "demo" / "table_flows.json"

RECT_PROGRAM = """\
scene "s" {
  component "stem" {
    profile: rect 0.1 1.0
    extrude: 0.1
    color: #00FF00
    count: 1
  }
}
"""

FLOWER_PROGRAM = """\
scene "model" {
  component "receptacle" {
    profile: ellipse 0.15 0.15 24
    extrude: 0.08
    color: #8B4513
    count: 1
  }
  component "stem" {
    profile: rect 0.04 0.5
    extrude: 0.04
    color: #228B22
    count: 1
    attach: "receptacle" angle 0.0 fixed offset 0.0 -0.3 0.0
  }
  component "petal" {
    profile: ellipse 0.12 0.3 24
    extrude: 0.02
    color: #FFC0CB
    count: 5
    attach: "receptacle" angle 60.0 radial offset 0.0 0.05 0.0
  }
}
"""


@pytest.fixture
def mock_cfg() -> ProviderConfig:
    return ProviderConfig(mode="mock", fixtures_path=str(DEMO_FIXTURES))


@pytest.fixture
def no_network(monkeypatch):
    """Make any attempt to open a network connection blow up the test."""

    def _blocked(*args, **kwargs):
        raise AssertionError("network access attempted during an offline test")

    monkeypatch.setattr(socket.socket, "connect", _blocked)
    monkeypatch.setattr(socket, "create_connection", _blocked)
