"""Sectioned key-value device configs.

Grammar (documented in docs/device-config.md):

    [region.<name>]            one section per chain segment, in order
    kind = normal-sc | kitaev-tsc | tsc-phase-hopping
    sites = <int>
    t = <float>                hopping, > 0 (default 1.0)
    mu = <float>               (default 0.0)
    delta0 = <float>           (default 0.0)
    phase = <float>            radians, or phase_deg = <float>
    lattice_const = <float>    (default 1.0)

    [coupling.<name>]
    between = <regionA> <regionB>     joins end of A to start of B
    strength = <float>

Comments start with '#' or ';'. Unknown sections or keys are hard errors
(no silent defaults); syntax errors report line and column, semantic
errors name the section.
"""

from __future__ import annotations

import math

from .device import Coupling, RegionKind, RegionModel, Site, make_spec, validate
from .errors import ConfigError

_KINDS = {
    "normal-sc": RegionKind.NORMAL_SC,
    "kitaev-tsc": RegionKind.KITAEV_TSC,
    "tsc-phase-hopping": RegionKind.TSC_PHASE_HOPPING,
}

_REGION_KEYS = {"kind", "sites", "t", "mu", "delta0", "phase", "phase_deg",
                "lattice_const"}
_COUPLING_KEYS = {"between", "strength"}


def _tokenize(text):
    """Yield (kind, payload, line, column) items: section headers and
    key-value pairs."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].split(";", 1)[0]
        if not stripped.strip():
            continue
        line = stripped.rstrip()
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        if body.startswith("["):
            if not body.endswith("]"):
                raise ConfigError("unterminated section header",
                                  line=lineno, column=len(line))
            yield ("section", body[1:-1].strip(), lineno, indent + 1)
        else:
            if "=" not in body:
                raise ConfigError("expected 'key = value'",
                                  line=lineno, column=indent + 1)
            key, _, value = body.partition("=")
            if not key.strip():
                raise ConfigError("missing key before '='",
                                  line=lineno, column=indent + 1)
            col = indent + body.index("=") + 2
            if not value.strip():
                raise ConfigError(f"missing value for key {key.strip()!r}",
                                  line=lineno, column=col)
            yield ("pair", (key.strip(), value.strip()), lineno, indent + 1)


def _parse_float(value, key, lineno):
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"key {key!r} expects a number, got {value!r}",
                          line=lineno) from None


def _parse_int(value, key, lineno):
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"key {key!r} expects an integer, got {value!r}",
                          line=lineno) from None


def parse_device_config(text: str):
    """Parse a config into a validated DeviceSpec."""
    regions = {}            # name -> dict of raw keys
    region_order = []
    couplings = {}
    coupling_order = []
    current = None          # (kind, name, dict)

    for kind, payload, lineno, column in _tokenize(text):
        if kind == "section":
            name = payload
            if name.startswith("region."):
                rname = name[len("region."):]
                if not rname:
                    raise ConfigError("empty region name", line=lineno,
                                      section=name)
                if rname in regions:
                    raise ConfigError(f"duplicate region {rname!r}",
                                      line=lineno, section=name)
                regions[rname] = {}
                region_order.append(rname)
                current = ("region", rname, regions[rname])
            elif name.startswith("coupling."):
                cname = name[len("coupling."):]
                if not cname:
                    raise ConfigError("empty coupling name", line=lineno,
                                      section=name)
                if cname in couplings:
                    raise ConfigError(f"duplicate coupling {cname!r}",
                                      line=lineno, section=name)
                couplings[cname] = {}
                coupling_order.append(cname)
                current = ("coupling", cname, couplings[cname])
            else:
                raise ConfigError(
                    f"unknown section type {name!r} (expected region.* or "
                    "coupling.*)", line=lineno, section=name)
        else:
            key, value = payload
            if current is None:
                raise ConfigError(f"key {key!r} outside any section",
                                  line=lineno, column=column)
            allowed = _REGION_KEYS if current[0] == "region" else _COUPLING_KEYS
            if key not in allowed:
                raise ConfigError(
                    f"unknown key {key!r} in section {current[0]}.{current[1]}",
                    line=lineno, section=f"{current[0]}.{current[1]}")
            if key in current[2]:
                raise ConfigError(
                    f"duplicate key {key!r}", line=lineno,
                    section=f"{current[0]}.{current[1]}")
            current[2][key] = (value, lineno)

    if not regions:
        raise ConfigError("config defines no regions")

    models = []
    spans = {}              # region name -> (first_site, last_site)
    sites = []
    bonds = []
    offset = 0
    for i, rname in enumerate(region_order):
        raw = regions[rname]
        section = f"region.{rname}"
        if "kind" not in raw:
            raise ConfigError("missing required key 'kind'", section=section)
        if "sites" not in raw:
            raise ConfigError("missing required key 'sites'", section=section)
        kind_text, kl = raw["kind"]
        if kind_text not in _KINDS:
            raise ConfigError(
                f"unknown kind {kind_text!r} (expected one of {sorted(_KINDS)})",
                line=kl, section=section)
        n = _parse_int(raw["sites"][0], "sites", raw["sites"][1])
        if n < 1:
            raise ConfigError("'sites' must be >= 1", line=raw["sites"][1],
                              section=section)
        if "phase" in raw and "phase_deg" in raw:
            raise ConfigError("give either 'phase' or 'phase_deg', not both",
                              section=section)
        phase = 0.0
        if "phase" in raw:
            phase = _parse_float(raw["phase"][0], "phase", raw["phase"][1])
        elif "phase_deg" in raw:
            phase = math.radians(
                _parse_float(raw["phase_deg"][0], "phase_deg", raw["phase_deg"][1]))

        def fget(key, default):
            if key in raw:
                return _parse_float(raw[key][0], key, raw[key][1])
            return default

        try:
            model = RegionModel(
                kind=_KINDS[kind_text],
                mu=fget("mu", 0.0),
                t=fget("t", 1.0),
                delta0=fget("delta0", 0.0),
                phase=phase,
                lattice_const=fget("lattice_const", 1.0),
                name=rname,
            )
        except ValueError as exc:
            raise ConfigError(str(exc), section=section) from None
        models.append(model)
        sites.extend(Site(i, offset + j, 0) for j in range(n))
        bonds.extend((offset + j, offset + j + 1) for j in range(n - 1))
        spans[rname] = (offset, offset + n - 1)
        offset += n

    coupling_objs = []
    for cname in coupling_order:
        raw = couplings[cname]
        section = f"coupling.{cname}"
        if "between" not in raw:
            raise ConfigError("missing required key 'between'", section=section)
        if "strength" not in raw:
            raise ConfigError("missing required key 'strength'", section=section)
        parts = raw["between"][0].split()
        if len(parts) != 2:
            raise ConfigError("'between' expects two region names",
                              line=raw["between"][1], section=section)
        for p in parts:
            if p not in spans:
                raise ConfigError(f"unknown region {p!r} in 'between'",
                                  line=raw["between"][1], section=section)
        a, b = parts
        strength = _parse_float(raw["strength"][0], "strength",
                                raw["strength"][1])
        if strength < 0:
            raise ConfigError("'strength' must be >= 0",
                              line=raw["strength"][1], section=section)
        coupling_objs.append(Coupling(spans[a][1], spans[b][0], strength))

    labels = {}
    for rname, (first, last) in spans.items():
        labels[f"{rname}:first"] = first
        labels[f"{rname}:last"] = last

    spec = make_spec(models, sites, bonds, coupling_objs, labels)
    problems = validate(spec)
    if problems:
        raise ConfigError("config produced an invalid device: "
                          + "; ".join(v.message for v in problems))
    return spec
