"""Toolkit-wide configuration with JSON round-trip.

One flat JSON object with a section per module; any subset of keys may be
given and the rest keep their defaults. Unknown sections or keys raise, so
config typos fail loudly instead of being silently ignored.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

from .baseline import ReconstructConfig
from .blink import BlinkConfig
from .evaluate import EvalConfig
from .saccades import DetectConfig
from .simulate import (
    FS_DEFAULT_HZ,
    NOISE_STD_DEFAULT_V,
)
from .wavelet import FgdConfig
from . import io as toolkit_io


@dataclass(frozen=True)
class WaveletSettings:
    level: int = 7
    family: str = "db4"
    boundary_mode: str = "symmetric"


@dataclass(frozen=True)
class MethodSettings:
    poly_order: int = 5
    highpass_cutoff_hz: float = 0.3
    highpass_order: int = 2


@dataclass(frozen=True)
class SimSettings:
    fs_hz: float = FS_DEFAULT_HZ
    noise_std_v: float = NOISE_STD_DEFAULT_V
    blink_rate_hz: float = 0.0


@dataclass(frozen=True)
class ToolkitConfig:
    blink: BlinkConfig = field(default_factory=BlinkConfig)
    detect: DetectConfig = field(default_factory=DetectConfig)
    reconstruct: ReconstructConfig = field(default_factory=ReconstructConfig)
    wavelet: WaveletSettings = field(default_factory=WaveletSettings)
    methods: MethodSettings = field(default_factory=MethodSettings)
    eval: EvalConfig = field(default_factory=EvalConfig)
    sim: SimSettings = field(default_factory=SimSettings)

    def fgd(self) -> FgdConfig:
        """Assemble the pipeline view of this config."""
        return FgdConfig(
            detect=self.detect,
            reconstruct=self.reconstruct,
            wavelet_level=self.wavelet.level,
            wavelet_family=self.wavelet.family,
            boundary_mode=self.wavelet.boundary_mode,
        )

    def to_dict(self) -> dict:
        return {
            name: dataclasses.asdict(getattr(self, name))
            for name in _SECTIONS
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ToolkitConfig":
        unknown = set(d) - set(_SECTIONS)
        if unknown:
            raise ValueError(f"unknown config sections: {sorted(unknown)}")
        kwargs = {}
        for name, section_cls in _SECTIONS.items():
            if name not in d:
                continue
            entries = d[name]
            if not isinstance(entries, dict):
                raise ValueError(f"config section {name!r} must be an object")
            valid = {f.name for f in dataclasses.fields(section_cls)}
            bad = set(entries) - valid
            if bad:
                raise ValueError(
                    f"unknown keys in config section {name!r}: {sorted(bad)}"
                )
            kwargs[name] = section_cls(**entries)
        return cls(**kwargs)


_SECTIONS = {
    "blink": BlinkConfig,
    "detect": DetectConfig,
    "reconstruct": ReconstructConfig,
    "wavelet": WaveletSettings,
    "methods": MethodSettings,
    "eval": EvalConfig,
    "sim": SimSettings,
}


def load_config(path: str | Path) -> ToolkitConfig:
    return ToolkitConfig.from_dict(toolkit_io.read_json(path))


def save_config(path: str | Path, cfg: ToolkitConfig) -> None:
    toolkit_io.write_json(path, cfg.to_dict())
