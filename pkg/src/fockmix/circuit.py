"""Circuit descriptions: a device list plus the two input states.

Circuits are stored as TOML::

    cutoff = 40                  # optional

    [input0]                     # port 0
    kind = "fock"                # fock | coherent | general
    n = 1

    [input1]                     # port 1
    kind = "coherent"
    alpha = [1.0, 1.0]           # [re, im]

    [[elements]]                 # devices in the order light meets them
    kind = "bs_dielectric"
    t_mag = 0.7071067811865476

    [[elements]]
    kind = "phase"
    theta = 0.0
    sweep = true                 # optional; `stats` overwrites theta

    [[elements]]
    kind = "bs_general"
    t_prime = [0.7071067811865476, 0.0]
    r = [0.7071067811865476, 0.0]
    r_prime = [-0.7071067811865476, 0.0]
    t = [0.7071067811865476, 0.0]

A ``general`` input carries ``coeffs = [[re, im], ...]``.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass, replace

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .scattering import ScatteringMatrix, bs_dielectric, bs_general, compose, phase_matrix
from .simulator import Coherent, Fock, General, InputSpec


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class DielectricBS:
    t_mag: float

    def matrix(self) -> ScatteringMatrix:
        return bs_dielectric(self.t_mag)


@dataclass(frozen=True)
class GeneralBS:
    t_prime: complex
    r: complex
    r_prime: complex
    t: complex

    def matrix(self) -> ScatteringMatrix:
        return bs_general(self.t_prime, self.r, self.r_prime, self.t)


@dataclass(frozen=True)
class Phase:
    theta: float
    sweep: bool = False

    def matrix(self) -> ScatteringMatrix:
        return phase_matrix(self.theta)


@dataclass(frozen=True)
class CircuitSpec:
    elements: tuple
    input0: InputSpec = Fock(1)
    input1: InputSpec = Coherent(0)
    cutoff: int | None = None

    def matrix(self) -> ScatteringMatrix:
        """Composed scattering matrix; raises ReciprocityError for invalid devices."""
        return compose([e.matrix() for e in self.elements])

    def with_theta(self, theta: float) -> "CircuitSpec":
        """Copy with every swept phase element set to ``theta``."""
        elems = tuple(replace(e, theta=theta) if isinstance(e, Phase) and e.sweep else e
                      for e in self.elements)
        return replace(self, elements=elems)

    @property
    def has_sweep(self) -> bool:
        return any(isinstance(e, Phase) and e.sweep for e in self.elements)

    def with_alpha_mag(self, mag: float) -> "CircuitSpec":
        if not isinstance(self.input1, Coherent):
            raise ConfigError("port-1 input must be coherent to set |alpha|")
        a = self.input1.alpha
        phase = a / abs(a) if a != 0 else 1.0
        return replace(self, input1=Coherent(mag * phase))


def _cplx(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _input_to_dict(spec: InputSpec) -> dict:
    if isinstance(spec, Fock):
        return {"kind": "fock", "n": spec.n}
    if isinstance(spec, Coherent):
        return {"kind": "coherent", "alpha": _cplx(spec.alpha)}
    if isinstance(spec, General):
        return {"kind": "general", "coeffs": [_cplx(c) for c in spec.coeffs]}
    raise TypeError(spec)


def _element_to_dict(e) -> dict:
    if isinstance(e, DielectricBS):
        return {"kind": "bs_dielectric", "t_mag": float(e.t_mag)}
    if isinstance(e, GeneralBS):
        return {"kind": "bs_general", "t_prime": _cplx(e.t_prime), "r": _cplx(e.r),
                "r_prime": _cplx(e.r_prime), "t": _cplx(e.t)}
    if isinstance(e, Phase):
        d = {"kind": "phase", "theta": float(e.theta)}
        if e.sweep:
            d["sweep"] = True
        return d
    raise TypeError(e)


def to_dict(c: CircuitSpec) -> dict:
    d = {}
    if c.cutoff is not None:
        d["cutoff"] = c.cutoff
    d["input0"] = _input_to_dict(c.input0)
    d["input1"] = _input_to_dict(c.input1)
    d["elements"] = [_element_to_dict(e) for e in c.elements]
    return d


def _read_cplx(v, where: str) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    raise ConfigError(f"{where}: expected a number or [re, im], got {v!r}")


def _read_input(d, where: str) -> InputSpec:
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError(f"{where}: missing input table with a 'kind' key")
    kind = d["kind"]
    try:
        if kind == "fock":
            return Fock(d["n"])
        if kind == "coherent":
            return Coherent(_read_cplx(d["alpha"], f"{where}.alpha"))
        if kind == "general":
            return General(tuple(_read_cplx(c, f"{where}.coeffs") for c in d["coeffs"]))
    except KeyError as exc:
        raise ConfigError(f"{where}: missing key {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None
    raise ConfigError(f"{where}: unknown input kind {kind!r}")


def _read_element(d, where: str):
    kind = d.get("kind") if isinstance(d, dict) else None
    try:
        if kind == "bs_dielectric":
            return DielectricBS(float(d["t_mag"]))
        if kind == "bs_general":
            return GeneralBS(*(_read_cplx(d[k], f"{where}.{k}") for k in ("t_prime", "r", "r_prime", "t")))
        if kind == "phase":
            return Phase(float(d["theta"]), bool(d.get("sweep", False)))
    except KeyError as exc:
        raise ConfigError(f"{where}: missing key {exc}") from None
    raise ConfigError(f"{where}: unknown element kind {kind!r}")


def from_dict(d: dict) -> CircuitSpec:
    elems = d.get("elements")
    if not isinstance(elems, list) or not elems:
        raise ConfigError("circuit needs a non-empty [[elements]] list")
    cutoff = d.get("cutoff")
    if cutoff is not None and (not isinstance(cutoff, int) or cutoff < 1):
        raise ConfigError(f"cutoff must be a positive integer, got {cutoff!r}")
    elements = tuple(_read_element(e, f"elements[{i}]") for i, e in enumerate(elems))
    for i, e in enumerate(elements):
        try:
            e.matrix()
        except ValueError as exc:
            raise ConfigError(f"elements[{i}] ({_element_to_dict(e)['kind']}): {exc}") from None
    return CircuitSpec(
        elements=elements,
        input0=_read_input(d.get("input0"), "input0"),
        input1=_read_input(d.get("input1"), "input1"),
        cutoff=cutoff,
    )


def dumps(c: CircuitSpec) -> str:
    return tomli_w.dumps(to_dict(c))


def loads(text: str) -> CircuitSpec:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from None
    return from_dict(data)


def load(path) -> CircuitSpec:
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: invalid TOML: {exc}") from None
    return from_dict(data)


_BALANCED = DielectricBS(1 / math.sqrt(2))

PRESETS = {
    "fig2a": CircuitSpec((_BALANCED,), Fock(1), Coherent(math.sqrt(2) * cmath.exp(1j * math.pi / 4))),
    "fig2b": CircuitSpec((DielectricBS(0.1),), Fock(1), Coherent(10 * cmath.exp(1j * math.pi / 4))),
    "fig4": CircuitSpec((_BALANCED, Phase(0.0, sweep=True), _BALANCED), Fock(1), Coherent(1.0)),
    "hom": CircuitSpec((_BALANCED, Phase(0.0, sweep=True), _BALANCED), Fock(1), Fock(1)),
    "vacuum": CircuitSpec((_BALANCED,), Fock(0), Fock(0)),
}
PRESETS["balanced-mzi"] = PRESETS["fig4"]
