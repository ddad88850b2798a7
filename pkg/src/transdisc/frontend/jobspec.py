"""Line-oriented job files.

A job is a sequence of sections, each introduced by a header line in
capitals::

    RING
    x y z
    Z
    x, y
    X
    x^2*z^q - y^2 - x^3
    PARAMS
    q = 2
    COMMAND
    db-report
    OPTIONS
    point = z:0

Blank lines and ``#`` comments are ignored.  ``Z`` and ``X`` hold
comma- or line-separated polynomials; ``COMPONENTS`` holds one ideal per
line; ``PHI`` holds ``var = polynomial`` lines; ``PARAMS`` binds integer
parameters used inside exponents and coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ParseError
from ..polycore import RingSpec, parse_polynomial, parse_polynomials, to_rational

SECTIONS = ("RING", "WEIGHTS", "Z", "X", "COMPONENTS", "PARAMS", "PHI", "COMMAND", "OPTIONS")


@dataclass
class JobSpec:
    variables: tuple = ()
    weights: tuple | None = None
    z_text: list = field(default_factory=list)
    x_text: list = field(default_factory=list)
    components_text: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    phi_text: dict = field(default_factory=dict)
    command: str | None = None
    options: dict = field(default_factory=dict)

    # builders ---------------------------------------------------------
    @property
    def ring(self) -> RingSpec:
        if not self.variables:
            raise ParseError("job has no RING section", None, "")
        try:
            return RingSpec(self.variables, self.weights or ())
        except ValueError as exc:
            raise ParseError(f"bad RING section: {exc}", None, " ".join(self.variables)) from None

    def polys(self, lines, ring=None):
        ring = ring or self.ring
        out = []
        for line in lines:
            out.extend(parse_polynomials(line, ring, self.params))
        return out

    def z_gens(self):
        return self.polys(self.z_text)

    def x_gens(self):
        return self.polys(self.x_text)

    def pair_setup(self):
        from ..filtration import PairSetup
        from ..groebner import Ideal

        ring = self.ring
        comps = tuple(Ideal(self.polys([c]), ring) for c in self.components_text) or None
        return PairSetup(ring, Ideal(self.z_gens(), ring), Ideal(self.x_gens(), ring), comps)

    def family_setup(self):
        from ..classical import FamilySetup

        fiber = self.option_list("fiber")
        if not fiber:
            raise ParseError("option 'fiber' (fiber variables) is required", None, "")
        ring = self.ring
        for v in fiber:
            if v not in ring:
                raise ParseError(f"fiber variable {v!r} is not declared", None, v)
        params = tuple(v for v in ring.variables if v not in fiber)
        return FamilySetup(ring, tuple(fiber), params, tuple(self.x_gens()))

    def phi(self, ring=None):
        ring = ring or self.ring
        return {v: parse_polynomial(t, ring, self.params) for v, t in self.phi_text.items()}

    # options ----------------------------------------------------------
    def option(self, key, default=None):
        return self.options.get(key, default)

    def option_int(self, key, default=None):
        v = self.options.get(key)
        if v is None:
            return default
        try:
            return int(v)
        except ValueError:
            raise ParseError(f"option {key!r} must be an integer", None, v) from None

    def option_list(self, key):
        v = self.options.get(key)
        if v is None:
            return []
        return [t for t in v.replace(",", " ").split() if t]

    def option_ints(self, key):
        try:
            return [int(t) for t in self.option_list(key)]
        except ValueError:
            raise ParseError(f"option {key!r} must list integers", None, self.options[key]) from None

    def point(self, names=None):
        """``point = z:0, w:1/2`` or positional ``point = 0 1/2``."""
        v = self.options.get("point")
        if v is None:
            return None
        items = [t for t in v.replace(",", " ").split() if t]
        if all(":" in t for t in items):
            out = {}
            for t in items:
                name, val = t.split(":", 1)
                out[name.strip()] = to_rational(val.strip())
            return out
        if names is None:
            raise ParseError("positional point needs known base variables", None, v)
        if len(items) != len(names):
            raise ParseError(f"point has {len(items)} coordinates, expected {len(names)}", None, v)
        return {n: to_rational(t) for n, t in zip(names, items)}


def _split_kv(line: str, where: str):
    if "=" not in line:
        raise ParseError(f"expected key = value in {where}", None, line)
    k, v = line.split("=", 1)
    return k.strip(), v.strip()


def parse_job(text: str) -> JobSpec:
    job = JobSpec()
    section = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in SECTIONS:
            if line in seen:
                raise ParseError(f"section {line} repeated (line {lineno})", None, raw)
            seen.add(line)
            section = line
            continue
        if line.isalpha() and line.isupper() and len(line) > 1:
            raise ParseError(f"unknown section {line} (line {lineno})", None, raw)
        if section is None:
            raise ParseError(f"content before the first section header (line {lineno})", None, raw)
        if section == "RING":
            job.variables += tuple(t for t in line.replace(",", " ").split() if t)
        elif section == "WEIGHTS":
            try:
                job.weights = (job.weights or ()) + tuple(int(t) for t in line.replace(",", " ").split())
            except ValueError:
                raise ParseError(f"weights must be integers (line {lineno})", None, raw) from None
        elif section == "Z":
            job.z_text.append(line)
        elif section == "X":
            job.x_text.append(line)
        elif section == "COMPONENTS":
            job.components_text.append(line)
        elif section == "PARAMS":
            k, v = _split_kv(line, "PARAMS")
            try:
                job.params[k] = int(v)
            except ValueError:
                raise ParseError(f"parameter {k} must be an integer (line {lineno})", None, raw) from None
        elif section == "PHI":
            k, v = _split_kv(line, "PHI")
            job.phi_text[k] = v
        elif section == "COMMAND":
            if job.command is not None:
                raise ParseError("only one command per job", None, raw)
            job.command = line
        elif section == "OPTIONS":
            k, v = _split_kv(line, "OPTIONS")
            job.options[k] = v
    if job.weights is not None and len(job.weights) != len(job.variables):
        raise ParseError("WEIGHTS must give one weight per variable", None, " ".join(map(str, job.weights)))
    return job
