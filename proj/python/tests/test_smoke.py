import pytest

import syang


def test_cartan():
    assert syang.cartan_matrix(syang.RootDatum("EED")) == [[2, -1], [-1, 0]]


def test_orbit_size():
    assert len(syang.orbit(3, 2)) == 10


def test_reflection_word():
    assert syang.reflect(syang.RootDatum("EED"), [2, 1]).word == "DEE"


def test_elements():
    rd = syang.RootDatum("EED")
    a = syang.Element("x+(2,0)", rd)
    assert syang.bracket(a, a) == syang.Element("2*x+(2,0)^2", rd)
    with pytest.raises(ValueError):
        syang.Element("[x+(1,0),", rd)


def test_kac_moody_report():
    rep = syang.verify_kac_moody(syang.RootDatum("EED"))
    assert rep.all_ok() and len(rep.entries) == 26


def test_membership():
    rd = syang.RootDatum("EED", affine=True)
    e = syang.Element("h(2,0)*x+(1,1) - x+(1,1)*h(2,0) + x+(1,1)", rd)
    verdict, witness = syang.is_member(e, rd, 3)
    assert verdict == "member" and witness


def test_quantum_reflection():
    rd = syang.RootDatum("EEEDD", affine=True)
    rep = syang.verify_quantum_reflection(rd, 3, ["shift+", "shift-"], 4)
    assert rep.exit_code() == 0
