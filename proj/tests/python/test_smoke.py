"""Smoke tests for the python bindings: the main operations end to end."""

import json

import pytest

import hnpoly as hp


def poly(pairs):
    return hp.ConcavePolygon.from_slopes([(hp.Rat(*s if isinstance(s, tuple) else (s,)), hp.Rat(w)) for s, w in pairs])


def test_rat_arithmetic():
    assert hp.Rat(2, 4) == hp.Rat(1, 2)
    assert hp.Rat("3/6") == hp.Rat(1, 2)
    assert hp.Rat(1, 2) + hp.Rat(1, 3) == hp.Rat(5, 6)
    assert float(hp.Rat(1, 4)) == 0.25
    assert str(hp.Rat(-2, 4)) == "-1/2"
    with pytest.raises(hp.DomainError):
        hp.Rat(1, 0)


def test_polygon_roundtrip():
    p = poly([((1, 1), 1), ((0, 1), 1)])
    assert p.width() == hp.Rat(2)
    assert p.end_height() == hp.Rat(1)
    assert p.evaluate(hp.Rat(1, 2)) == hp.Rat(1, 2)
    assert p.break_points() == [hp.Point(hp.Rat(1), hp.Rat(1))]
    assert hp.polygon_from_json(p.to_json()) == p
    assert hp.is_symmetric(p)
    assert hp.dual(p) == p


def test_leq_and_envelope():
    chord = poly([((1, 2), 2)])
    step = poly([((1, 1), 1), ((0, 1), 1)])
    assert hp.leq(chord, step)
    assert not hp.leq(step, chord)
    env = hp.concave_envelope(
        [hp.Point(hp.Rat(0), hp.Rat(0)), hp.Point(hp.Rat(1), hp.Rat(1)),
         hp.Point(hp.Rat(2), hp.Rat(1))],
        hp.Point(hp.Rat(2), hp.Rat(1)))
    assert env == step


def test_gsp4_enumeration():
    B = hp.enumerate_B("PEL_C", 1, 4, [(2, 2)])
    assert len(B) == 3
    basics = [nu for nu in B if hp.is_basic(nu, B)]
    assert len(basics) == 1
    assert basics[0].poly == poly([((1, 2), 4)])
    assert hp.rz_dimension("PEL_C", 1, 4, [(2, 2)]) == hp.Rat(3)


def test_strata_report():
    report = hp.strata_report("PEL_U", 2, 3, [(1, 2), (2, 1)])
    assert len(report) == 2
    assert not report[0].basic and report[0].hn_condition
    assert report[1].basic and not report[1].hn_condition
    assert report[0].dim == hp.Rat(2)


def test_decompose_and_verify():
    iso = hp.FIsocrystal(
        hp.SlopeMultiset([(hp.Rat(1), 2), (hp.Rat(1, 2), 2), (hp.Rat(0), 2)]), d=2)
    inv = hp.FilteredInvariant("PEL_U", 2, 3, iso, [(1, 2), (2, 1)],
                               hn=hp.normalized_newton(iso))
    assert hp.admissible_check(inv)
    assert hp.t_H(inv) == hp.Rat(3)
    pairs = hp.detect_hn(inv)
    assert len(pairs) == 1
    x, xhat = pairs[0]
    assert (x.x, x.y) == (hp.Rat(1), hp.Rat(1))
    assert (xhat.x, xhat.y) == (hp.Rat(2), hp.Rat(3, 2))
    dec = hp.decompose(inv, x, xhat)
    assert len(dec.pieces) == 3
    assert dec.verdicts.all_ok()
    assert hp.verify(dec, inv).all_ok()
    parsed = json.loads(dec.to_json())
    assert parsed["checks"]["newton_split"]["ok"] is True


def test_cloud_operations():
    cloud = hp.SubobjectCloud(2, hp.Rat(1), [
        hp.Point(hp.Rat(0), hp.Rat(0)), hp.Point(hp.Rat(1), hp.Rat(1)),
        hp.Point(hp.Rat(2), hp.Rat(1))])
    assert hp.hn_polygon(cloud) == poly([((1, 1), 1), ((0, 1), 1)])
    assert not hp.is_semistable(cloud)
    assert hp.dual_cloud(cloud) == cloud
    assert hp.hn_polygon(hp.dual_cloud(cloud)) == hp.dual(hp.hn_polygon(cloud))


def test_fitting_and_chain():
    hodge = hp.fitting_hodge(hp.OmegaDivisors(1, 3, [[hp.Rat(2), hp.Rat(1)]]))
    assert hodge == poly([((2, 1), 1), ((1, 1), 1), ((0, 1), 1)])
    verdict = hp.chain_check(poly([((1, 2), 2)]), poly([((1, 1), 1), ((0, 1), 1)]),
                             poly([((1, 1), 1), ((0, 1), 1)]))
    assert verdict.hn_le_newt and verdict.newt_le_hdg


def test_tower_limit():
    def cloud_on(segments, scale):
        p = hp.ConcavePolygon.from_slopes(
            [(hp.Rat(*s), hp.Rat(w * scale)) for s, w in segments])
        return hp.SubobjectCloud(int(float(p.width())), p.end_height(), p.vertices())

    tower = hp.TorsionTower(1, [cloud_on([((1, 2), 2)], m) for m in (1, 2, 3)])
    lim = hp.tower_limit(tower)
    assert lim.limit == poly([((1, 2), 2)])
    assert lim.violations == []
    assert lim.levels == 3


def test_svg_and_cli():
    svg = hp.render_svg([(poly([((1, 1), 1), ((0, 1), 1)]), "newton")],
                        [(hp.Point(hp.Rat(1), hp.Rat(1)), "x")])
    assert svg.startswith("<svg") and "<circle" in svg

    code, out, err = hp.run_cli(["bgmu", "--case", "PEL_C", "--d", "1", "--n", "4",
                                 "--mu", "2,2"])
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["schema"] == "hnpoly/1"
    assert len(doc["result"]) == 3
