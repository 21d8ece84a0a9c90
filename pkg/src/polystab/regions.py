"""Regions of the complex plane and membership / sampling predicates.

Half-plane convention: H_phi = {z : Re(z * exp(i(pi/2 - phi))) > 0}, so
H_{pi/2} is the open right half-plane and H_0 the open upper half-plane.
Arg is taken in (-pi, pi] with Arg 0 := 0.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_BOUNDARY_TOL = 1e-9
_TRUNCATION_BASE = 10.0
_MAX_REJECTION_DRAWS = 10**6


class Membership(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary-within-tol"
    OUTSIDE = "outside"


class EmptyRegionError(RuntimeError):
    pass


@dataclass(frozen=True)
class Region:
    kind: str
    closed: bool = True
    center: complex = 0j
    radius: float = 0.0
    phi: float = 0.0
    lo: float = 0.0
    hi: float = 0.0
    inner: "Region" = None
    poly: object = None  # object exposing eval(z); used by preimage regions
    kappa: int = 1
    parts: tuple = field(default=())

    # -- constructors ------------------------------------------------------
    @staticmethod
    def disc(center=0j, radius=1.0, closed=True):
        if radius <= 0:
            raise ValueError("disc radius must be positive")
        return Region("disc", closed=closed, center=complex(center), radius=float(radius))

    @staticmethod
    def half_plane(phi, closed=False):
        return Region("halfplane", closed=closed, phi=float(phi))

    @staticmethod
    def sector(lo, hi, closed=False):
        if not lo < hi or hi - lo >= 2 * math.pi:
            raise ValueError("sector needs lo < hi with hi - lo < 2*pi")
        return Region("sector", closed=closed, lo=float(lo), hi=float(hi))

    @staticmethod
    def exterior_disc(radius, center=0j, closed=True):
        if radius <= 0:
            raise ValueError("disc radius must be positive")
        return Region("ext-disc", closed=closed, center=complex(center), radius=float(radius))

    @staticmethod
    def complement(region):
        return Region("complement", closed=not region.closed, inner=region)

    @staticmethod
    def preimage(poly, region):
        if getattr(poly, "is_zero", lambda: False)():
            raise ValueError("preimage region needs a nonzero polynomial")
        return Region("preimage", closed=region.closed, inner=region, poly=poly)

    @staticmethod
    def power(region, kappa):
        if kappa < 1:
            raise ValueError("product power needs kappa >= 1")
        return Region("power", closed=region.closed, inner=region, kappa=int(kappa))

    @staticmethod
    def intersection(regions):
        regions = tuple(regions)
        if not regions:
            raise ValueError("intersection of no regions")
        return Region("intersection", closed=all(r.closed for r in regions), parts=regions)

    # -- geometry ----------------------------------------------------------
    def _classify(self, z):
        """(strictly_interior, distance_to_boundary) for a point z."""
        z = complex(z)
        k = self.kind
        if k == "disc":
            d = abs(z - self.center)
            return d < self.radius, abs(d - self.radius)
        if k == "ext-disc":
            d = abs(z - self.center)
            return d > self.radius, abs(d - self.radius)
        if k == "halfplane":
            s = (z * np.exp(-1j * (math.pi / 2 - self.phi))).real
            return s > 0, abs(s)
        if k == "sector":
            width = self.hi - self.lo
            if z == 0:
                return False, 0.0
            a = (math.atan2(z.imag, z.real) - self.lo) % (2 * math.pi)
            interior = 0 < a < width
            d1 = _ray_distance(z, self.lo)
            d2 = _ray_distance(z, self.hi)
            return interior, min(d1, d2)
        if k == "complement":
            interior, dist = self.inner._classify(z)
            # interior of the complement = exterior of the inner closure
            inner_boundary = dist == 0.0
            return (not interior) and not inner_boundary, dist
        if k == "preimage":
            # membership of z equals membership of poly(z) in the base region;
            # the reported distance lives in the image plane
            return self.inner._classify(self.poly.eval(z))
        if k == "power":
            return self.inner._classify(z)
        if k == "intersection":
            ok = True
            dist = math.inf
            for r in self.parts:
                interior, d = r._classify(z)
                ok = ok and interior
                dist = min(dist, d)
            return ok, dist
        raise ValueError(f"unknown region kind {k!r}")

    def contains(self, z, tol=DEFAULT_BOUNDARY_TOL):
        interior, dist = self._classify(z)
        if dist <= tol:
            return Membership.BOUNDARY
        return Membership.INSIDE if interior else Membership.OUTSIDE

    def includes(self, z, tol=DEFAULT_BOUNDARY_TOL):
        """Closure-aware yes/no: boundary points count iff the region is closed."""
        m = self.contains(z, tol)
        if m is Membership.BOUNDARY:
            return self.closed
        return m is Membership.INSIDE

    def excludes_origin(self, tol=DEFAULT_BOUNDARY_TOL):
        return not self.includes(0j, tol)

    def boundary_distance(self, z):
        return self._classify(z)[1]

    def scale(self):
        k = self.kind
        if k in ("disc", "ext-disc"):
            return abs(self.center) + self.radius
        if k in ("complement", "preimage", "power"):
            return self.inner.scale()
        if k == "intersection":
            return max(r.scale() for r in self.parts)
        return 1.0

    def sample(self, count, seed):
        """Deterministic rejection sample of strictly interior points."""
        if count < 1:
            raise ValueError("count must be >= 1")
        rng = np.random.default_rng(seed)
        if self.kind == "disc":
            c, half = self.center, self.radius
        else:
            c, half = 0j, _TRUNCATION_BASE + self.scale()
        out = []
        draws = 0
        while len(out) < count:
            if draws >= _MAX_REJECTION_DRAWS:
                raise EmptyRegionError(
                    f"no interior point found after {_MAX_REJECTION_DRAWS} draws"
                )
            draws += 1
            z = c + complex(rng.uniform(-half, half), rng.uniform(-half, half))
            if self.contains(z, tol=0.0) is Membership.INSIDE:
                out.append(z)
        return out

    # -- serialization -----------------------------------------------------
    def to_dict(self):
        d = {"kind": self.kind, "closed": self.closed}
        if self.kind in ("disc", "ext-disc"):
            d["center"] = [self.center.real, self.center.imag]
            d["radius"] = self.radius
        elif self.kind == "halfplane":
            d["phi"] = self.phi
        elif self.kind == "sector":
            d["lo"] = self.lo
            d["hi"] = self.hi
        elif self.kind in ("complement", "power"):
            d["inner"] = self.inner.to_dict()
            if self.kind == "power":
                d["kappa"] = self.kappa
        elif self.kind == "intersection":
            d["parts"] = [r.to_dict() for r in self.parts]
        elif self.kind == "preimage":
            d["inner"] = self.inner.to_dict()
            d["poly"] = [[c.real, c.imag] for c in self.poly.coeffs]
        return d

    @staticmethod
    def from_dict(d):
        k = d["kind"]
        closed = bool(d.get("closed", True))
        if k == "disc":
            return Region.disc(complex(*d["center"]), d["radius"], closed)
        if k == "ext-disc":
            return Region.exterior_disc(d["radius"], complex(*d.get("center", (0, 0))), closed)
        if k == "halfplane":
            return Region.half_plane(d["phi"], closed)
        if k == "sector":
            return Region.sector(d["lo"], d["hi"], closed)
        if k == "complement":
            return Region.complement(Region.from_dict(d["inner"]))
        if k == "power":
            return Region.power(Region.from_dict(d["inner"]), d["kappa"])
        if k == "intersection":
            return Region.intersection(Region.from_dict(p) for p in d["parts"])
        if k == "preimage":
            from .scalarpoly import ScalarPolynomial

            poly = ScalarPolynomial([complex(re, im) for re, im in d["poly"]])
            return Region.preimage(poly, Region.from_dict(d["inner"]))
        raise ValueError(f"unknown region kind {k!r}")


def _ray_distance(z, angle):
    """Distance from z to the closed ray {t*exp(i*angle) : t >= 0}."""
    w = z * np.exp(-1j * angle)
    if w.real >= 0:
        return abs(w.imag)
    return abs(z)


# -- textual region specs (CLI) --------------------------------------------

def _parse_complex(text):
    text = text.strip().replace(" ", "")
    if text.endswith("i"):
        text = text[:-1] + "j"
    try:
        return complex(text)
    except ValueError as exc:
        raise ValueError(f"bad complex literal {text!r}") from exc


def _parse_openness(token):
    token = token.strip().lower()
    if token not in ("open", "closed"):
        raise ValueError(f"expected open|closed, got {token!r}")
    return token == "closed"


def parse_region(spec):
    """Parse the CLI textual region syntax, e.g. ``disc:c=0+0i,r=1,closed``."""
    spec = spec.strip()
    if spec.startswith("complement:(") and spec.endswith(")"):
        return Region.complement(parse_region(spec[len("complement:("):-1]))
    if spec.startswith("power:("):
        body, _, kappa = spec[len("power:("):].rpartition(")^")
        if not kappa:
            raise ValueError("power spec needs the form power:(<spec>)^<kappa>")
        return Region.power(parse_region(body), int(kappa))
    head, _, rest = spec.partition(":")
    fields = rest.split(",") if rest else []
    kv = {}
    flags = []
    for f in fields:
        if "=" in f:
            key, _, val = f.partition("=")
            kv[key.strip()] = val.strip()
        else:
            flags.append(f)
    closed = _parse_openness(flags[-1]) if flags else True
    if head == "disc":
        return Region.disc(_parse_complex(kv.get("c", "0")), float(kv["r"]), closed)
    if head == "ext-disc":
        return Region.exterior_disc(float(kv["r"]), _parse_complex(kv.get("c", "0")), closed)
    if head == "halfplane":
        return Region.half_plane(float(kv["phi"]), closed)
    if head == "sector":
        return Region.sector(float(kv["lo"]), float(kv["hi"]), closed)
    raise ValueError(f"unknown region spec {spec!r}")


# convenience instances used throughout
def open_right_half_plane():
    return Region.half_plane(math.pi / 2, closed=False)


def open_upper_half_plane():
    return Region.half_plane(0.0, closed=False)


def unit_disc(closed=True):
    return Region.disc(0j, 1.0, closed=closed)
