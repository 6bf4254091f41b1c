"""Parameter sweeps: the data behind the ten reference figures.

A SweepSpec fixes everything except one axis; run_sweep walks the axis and
evaluates moduli + entropy per point.  Per-point domain errors (degenerate
fermion modes, catastrophic cancellation) become a message in the row's
error column instead of aborting the sweep, so a curve that crosses a bad
point still comes out usable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .bogoliubov import moduli
from .entanglement import entropy
from .fields import FieldProfile, ModeParams, Statistics

AXES = ("E0", "m", "k_perp", "k_z", "tau")
_PARAM_KEYS = ("m", "q", "k_perp", "k_z", "E0", "tau")


@dataclass(frozen=True)
class SweepSpec:
    """One curve: an axis, its grid, and the frozen remaining parameters."""

    axis: str
    start: float
    stop: float
    steps: int
    stat: Statistics
    field_kind: str           # "constant" | "sauter"
    fixed: Mapping[str, float]
    scale: str = "linear"     # "linear" | "log"
    convention: str = "consistent"
    label: str = ""
    comment: str = ""

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)
                and self.start < self.stop):
            raise ValueError(f"need start < stop, got [{self.start}, {self.stop}]")
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"scale must be linear|log, got {self.scale!r}")
        if self.scale == "log" and not self.start > 0:
            raise ValueError("log scale requires start > 0")
        if self.field_kind not in ("constant", "sauter"):
            raise ValueError(f"field_kind must be constant|sauter, "
                             f"got {self.field_kind!r}")
        if self.axis == "tau" and self.field_kind != "sauter":
            raise ValueError("axis=tau requires field_kind=sauter")
        if self.convention not in ("consistent", "paper"):
            raise ValueError(f"unknown convention {self.convention!r}")
        needed = {"m", "q", "k_perp", "k_z", "E0"}
        if self.field_kind == "sauter":
            needed.add("tau")
        needed.discard(self.axis)
        given = set(self.fixed)
        missing = needed - given
        if missing:
            raise ValueError(f"fixed lacks {sorted(missing)}")
        extra = given - needed
        if extra:
            raise ValueError(f"fixed has unused keys {sorted(extra)}")
        object.__setattr__(self, "fixed", dict(self.fixed))

    def axis_values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.steps)
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    beta2: float
    alpha2: float
    entropy_bits: float
    c0_sq: float
    mean_pairs: float
    error: str = ""


def _eval_point(spec: SweepSpec, value: float) -> SweepRow:
    vals = dict(spec.fixed)
    vals[spec.axis] = value
    try:
        params = ModeParams(m=vals["m"], q=vals["q"],
                            k_perp=vals["k_perp"], k_z=vals["k_z"])
        if spec.field_kind == "sauter":
            field = FieldProfile.sauter(vals["E0"], vals["tau"])
        else:
            field = FieldProfile.constant(vals["E0"])
        mod = moduli(params, field, spec.stat, convention=spec.convention)
        rep = entropy(mod)
    except (ValueError, ArithmeticError) as exc:
        nan = math.nan
        return SweepRow(axis_value=value, beta2=nan, alpha2=nan,
                        entropy_bits=nan, c0_sq=nan, mean_pairs=nan,
                        error=f"{type(exc).__name__}: {exc}")
    return SweepRow(axis_value=value, beta2=rep.beta2, alpha2=rep.alpha2,
                    entropy_bits=rep.S_bits, c0_sq=rep.c0_sq,
                    mean_pairs=rep.mean_pairs)


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate the curve, rows in axis order."""
    return [_eval_point(spec, float(v)) for v in spec.axis_values()]


# ---------------------------------------------------------------------------
# Figure presets
# ---------------------------------------------------------------------------
# Each preset is the parameter set of one published curve family; labels name
# the per-curve value.  Fermion constant-field figures are emitted under both
# exponent conventions (exp(-pi mu) "consistent" and exp(-pi mu/2) "paper")
# so the convention difference stays inspectable side by side.

_LIN_PTS = 241
_LOG_PTS = 241


def _fig1() -> list[SweepSpec]:
    return [SweepSpec(axis="E0", start=0.1, stop=20.0, steps=_LIN_PTS,
                      stat=Statistics.BOSON, field_kind="constant",
                      fixed={"m": m, "q": 1.0, "k_perp": 1.0, "k_z": 0.0},
                      label=f"m{m:g}")
            for m in (0.0, 1.0, 2.0)]


def _fig2() -> list[SweepSpec]:
    return [SweepSpec(axis="m", start=0.0, stop=6.0, steps=_LIN_PTS,
                      stat=Statistics.BOSON, field_kind="constant",
                      fixed={"E0": e0, "q": 1.0, "k_perp": 1.0, "k_z": 0.0},
                      label=f"E{e0:g}")
            for e0 in (10.0, 5.0, 3.0)]


def _fig3() -> list[SweepSpec]:
    return [SweepSpec(axis="E0", start=0.1, stop=50.0, steps=_LIN_PTS,
                      stat=Statistics.FERMION, field_kind="constant",
                      fixed={"m": m, "q": 1.0, "k_perp": 1.0, "k_z": 0.0},
                      convention=conv, label=f"m{m:g}_{conv}")
            for m in (0.0, 1.0, 2.0)
            for conv in ("consistent", "paper")]


def _fig4() -> list[SweepSpec]:
    return [SweepSpec(axis="m", start=0.0, stop=4.0, steps=_LIN_PTS,
                      stat=Statistics.FERMION, field_kind="constant",
                      fixed={"E0": e0, "q": 1.0, "k_perp": 1.0, "k_z": 0.0},
                      convention=conv, label=f"E{e0:g}_{conv}")
            for e0 in (7.0, 12.0, 20.0)
            for conv in ("consistent", "paper")]


def _fig5() -> list[SweepSpec]:
    return [SweepSpec(axis="E0", start=0.1, stop=1e4, steps=_LOG_PTS,
                      scale="log", stat=Statistics.BOSON, field_kind="sauter",
                      fixed={"m": 1.0, "q": 1.0, "k_perp": 1.0, "k_z": 1.0,
                             "tau": tau},
                      label=f"tau{tau:g}")
            for tau in (0.3, 0.2, 0.02, 0.01)]


def _fig6() -> list[SweepSpec]:
    return [SweepSpec(axis="k_z", start=-12.0, stop=12.0, steps=_LIN_PTS,
                      stat=Statistics.BOSON, field_kind="sauter",
                      fixed={"m": 1.0, "q": 1.0, "k_perp": 1.0, "E0": 10.0,
                             "tau": tau},
                      label=f"tau{tau:g}",
                      comment="E0=10 fixed for every curve")
            for tau in (0.5, 0.2, 0.1)]


_TT_CURVES = ((2.0, 0.0), (2.0, 1.0), (1.0, 0.0), (1.0, 1.0))


def _fig7() -> list[SweepSpec]:
    return [SweepSpec(axis="tau", start=0.02, stop=10.0, steps=_LOG_PTS,
                      scale="log", stat=Statistics.BOSON, field_kind="sauter",
                      fixed={"m": 1.0, "q": 1.0, "k_perp": kp, "k_z": 1.0,
                             "E0": e0},
                      label=f"E{e0:g}_kperp{kp:g}")
            for (e0, kp) in _TT_CURVES]


def _fig8() -> list[SweepSpec]:
    return [SweepSpec(axis="E0", start=0.1, stop=1e4, steps=_LOG_PTS,
                      scale="log", stat=Statistics.FERMION, field_kind="sauter",
                      fixed={"m": 1.0, "q": 1.0, "k_perp": 1.0, "k_z": 1.0,
                             "tau": tau},
                      label=f"tau{tau:g}")
            for tau in (2.0, 0.02, 0.01)]


def _fig9() -> list[SweepSpec]:
    return [SweepSpec(axis="k_z", start=-30.0, stop=30.0, steps=_LIN_PTS,
                      stat=Statistics.FERMION, field_kind="sauter",
                      fixed={"m": 1.0, "q": 1.0, "k_perp": 1.0, "E0": e0,
                             "tau": tau},
                      label=f"E{e0:g}_tau{tau:g}",
                      comment="per-curve E0 values used; a variant of this "
                              "family fixes E0=10 for all curves")
            for (e0, tau) in ((20.0, 1.0), (4.0, 2.0), (2.0, 3.0))]


def _fig10() -> list[SweepSpec]:
    return [SweepSpec(axis="tau", start=0.02, stop=10.0, steps=_LOG_PTS,
                      scale="log", stat=Statistics.FERMION,
                      field_kind="sauter",
                      fixed={"m": 1.0, "q": 1.0, "k_perp": kp, "k_z": 1.0,
                             "E0": e0},
                      label=f"E{e0:g}_kperp{kp:g}")
            for (e0, kp) in _TT_CURVES]


_PRESETS = {
    "fig1": _fig1, "fig2": _fig2, "fig3": _fig3, "fig4": _fig4,
    "fig5": _fig5, "fig6": _fig6, "fig7": _fig7, "fig8": _fig8,
    "fig9": _fig9, "fig10": _fig10,
}

PRESET_NAMES = tuple(sorted(_PRESETS, key=lambda s: int(s[3:])))


def figure_preset(name: str) -> list[SweepSpec]:
    """Sweep specs for one reference figure, one per plotted curve."""
    try:
        build = _PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; "
                         f"known: {', '.join(PRESET_NAMES)}") from None
    return build()
