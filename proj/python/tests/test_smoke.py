import os
from fractions import Fraction

import pytest

import gdga

PROJECTS = os.environ.get("GDGA_EXAMPLES", os.path.join(os.path.dirname(__file__), "..", "..", "projects"))


def project(name):
    return os.path.join(PROJECTS, name + ".json")


def test_validate_torus():
    r = gdga.validate(project("torus"))
    assert r.exit == 0
    assert r.status == "ok"


def test_pipeline_and_replay():
    r = gdga.pipeline(project("groupring_acyclic"))
    assert r.status == "contradiction-certified"
    assert r.certificate["steps"][0]["level"] == "-1/2"
    again = gdga.replay_certificate(project("groupring_acyclic"), r.certificate)
    assert again.exit == 0


def test_surviving_class():
    r = gdga.pipeline(project("groupring_sphere"))
    assert r.exit == 2
    assert r.report["data"]["surviving_class"] == [0, 1]


def test_spectral_step():
    assert gdga.spectral(project("torus"), lambda0=Fraction(1, 2)).exit == 0
    assert gdga.spectral(project("torus"), lambda0=2).exit == 1


def test_parse_errors():
    assert gdga.parse_rational("-6/4") == "-3/2"
    with pytest.raises(gdga.ParseError):
        gdga.parse_rational("1/0")
    with pytest.raises(ValueError):
        gdga.run("no-such-verb", project("torus"))
