import math

import numpy as np
import pytest

from polystab.regions import (EmptyRegionError, Membership, Region,
                              open_right_half_plane, open_upper_half_plane,
                              parse_region, unit_disc)


def test_disc_membership_and_closure():
    open_d = Region.disc(0j, 1.0, closed=False)
    closed_d = Region.disc(0j, 1.0, closed=True)
    assert open_d.contains(0.5) is Membership.INSIDE
    assert open_d.contains(2.0) is Membership.OUTSIDE
    assert open_d.contains(1.0 + 0j) is Membership.BOUNDARY
    assert not open_d.includes(1.0 + 0j)
    assert closed_d.includes(1.0 + 0j)


def test_halfplane_conventions():
    rhp = open_right_half_plane()
    uhp = open_upper_half_plane()
    assert rhp.contains(1.0) is Membership.INSIDE
    assert rhp.contains(-1.0) is Membership.OUTSIDE
    assert rhp.contains(1j) is Membership.BOUNDARY
    assert uhp.contains(1j) is Membership.INSIDE
    assert uhp.contains(-1j) is Membership.OUTSIDE
    assert uhp.contains(1.0) is Membership.BOUNDARY


def test_sector_membership():
    s = Region.sector(0.0, math.pi / 3)
    assert s.contains(np.exp(1j * math.pi / 6)) is Membership.INSIDE
    assert s.contains(np.exp(1j * math.pi / 2)) is Membership.OUTSIDE
    assert s.contains(1.0) is Membership.BOUNDARY
    assert s.contains(0j) is Membership.BOUNDARY
    with pytest.raises(ValueError):
        Region.sector(1.0, 1.0)
    with pytest.raises(ValueError):
        Region.sector(0.0, 7.0)


def test_exterior_disc_and_complement():
    ext = Region.exterior_disc(2.0)
    assert ext.contains(3.0) is Membership.INSIDE
    assert ext.contains(1.0) is Membership.OUTSIDE
    comp = Region.complement(unit_disc(closed=True))
    assert comp.contains(2.0) is Membership.INSIDE
    assert comp.contains(0.5) is Membership.OUTSIDE
    assert comp.contains(1.0 + 0j) is Membership.BOUNDARY
    assert not comp.closed  # complement of a closed region is open


def test_intersection_and_scale():
    inter = Region.intersection([unit_disc(), open_right_half_plane()])
    assert inter.contains(0.5) is Membership.INSIDE
    assert inter.contains(-0.5) is Membership.OUTSIDE
    assert inter.scale() >= 1.0


def test_excludes_origin():
    assert Region.disc(5.0, 1.0).excludes_origin()
    assert not unit_disc().excludes_origin()
    assert open_right_half_plane().excludes_origin()


def test_sample_is_interior_and_deterministic():
    for region in (unit_disc(closed=False), open_right_half_plane(),
                   Region.sector(0.0, math.pi / 4)):
        pts = region.sample(50, 1)
        again = region.sample(50, 1)
        assert pts == again
        assert all(region.contains(z, tol=0.0) is Membership.INSIDE
                   for z in pts)


def test_sample_raises_on_effectively_empty_region():
    tiny = Region.disc(1e9 + 0j, 1e-12)
    # truncation box around the origin never reaches the far-away disc
    far = Region.intersection([tiny, Region.exterior_disc(2e9)])
    with pytest.raises(EmptyRegionError):
        far.sample(1, 0)


def test_serialization_round_trip():
    regions = [
        unit_disc(),
        Region.disc(1 + 2j, 3.0, closed=False),
        Region.half_plane(0.3, closed=True),
        Region.sector(-0.5, 0.5),
        Region.exterior_disc(2.0, 1j),
        Region.complement(unit_disc()),
        Region.power(open_right_half_plane(), 3),
        Region.intersection([unit_disc(), Region.sector(0.0, 1.0)]),
    ]
    for r in regions:
        back = Region.from_dict(r.to_dict())
        assert back == r


def test_parse_region_syntax():
    d = parse_region("disc:c=1+2i,r=3,open")
    assert d.kind == "disc" and d.center == 1 + 2j and d.radius == 3.0
    assert not d.closed
    h = parse_region("halfplane:phi=1.5707963267948966,open")
    assert h.kind == "halfplane" and not h.closed
    s = parse_region("sector:lo=0,hi=0.5,closed")
    assert s.kind == "sector" and s.closed
    c = parse_region("complement:(disc:r=1,closed)")
    assert c.kind == "complement"
    p = parse_region("power:(halfplane:phi=0,open)^2")
    assert p.kind == "power" and p.kappa == 2
    with pytest.raises(ValueError):
        parse_region("blob:r=1")
    with pytest.raises(ValueError):
        parse_region("disc:r=1,ajar")
