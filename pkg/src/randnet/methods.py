"""Uniform interface over the seven hidden-layer generation methods.

Each method is identified by a short tag and a config dataclass:

* ``ram``     uniform weights on [-u, u], anchored biases
* ``ralpham`` uniform slope angles, anchored biases
* ``raem1`` .. ``raem5``  autoencoder-pretrained weights, five bias/encoder
  variants (1 tunes the encoder interval u_ae)

``ram``, ``ralpham`` and ``raem1`` expose one tunable interval parameter;
``raem2`` .. ``raem5`` are parameter-free apart from the node count.
"""

from __future__ import annotations

from typing import Union

from .errors import ConfigError
from .linalg import SolverConfig
from .model import HiddenLayer
from .paramgen import (
    AnchorPolicy,
    Hypercube,
    RaMConfig,
    RAlphaMConfig,
    generate_ralpham,
    generate_ram,
)
from .rae import (
    Raem1Config,
    Raem2Config,
    Raem3Config,
    Raem4Config,
    Raem5Config,
    raem_hidden_layer,
)
from .rng import RngStream

GeneratorConfig = Union[
    RaMConfig,
    RAlphaMConfig,
    Raem1Config,
    Raem2Config,
    Raem3Config,
    Raem4Config,
    Raem5Config,
]

_TAGS = {
    RaMConfig: "ram",
    RAlphaMConfig: "ralpham",
    Raem1Config: "raem1",
    Raem2Config: "raem2",
    Raem3Config: "raem3",
    Raem4Config: "raem4",
    Raem5Config: "raem5",
}

METHOD_NAMES = tuple(_TAGS.values())

# Methods whose single tunable interval is searched during model selection.
TUNABLE = ("ram", "ralpham", "raem1")


def method_name(cfg: GeneratorConfig) -> str:
    try:
        return _TAGS[type(cfg)]
    except KeyError:
        raise ConfigError(f"unknown generator config type {type(cfg).__name__}") from None


def generate_hidden_layer(
    cfg: GeneratorConfig,
    x_train,
    cube: Hypercube,
    m: int,
    rng: RngStream,
    solver: SolverConfig = SolverConfig(),
) -> HiddenLayer:
    """Draw one hidden layer of m nodes using the configured method."""
    if isinstance(cfg, RaMConfig):
        return generate_ram(cfg, x_train, cube, m, rng)
    if isinstance(cfg, RAlphaMConfig):
        return generate_ralpham(cfg, x_train, cube, m, rng)
    if isinstance(cfg, (Raem1Config, Raem2Config, Raem3Config, Raem4Config, Raem5Config)):
        return raem_hidden_layer(cfg, x_train, cube, m, rng, solver)
    raise ConfigError(f"unknown generator config type {type(cfg).__name__}")


def _anchor_to_dict(anchor: AnchorPolicy) -> dict:
    return {
        "kind": anchor.kind,
        "kmeans_max_iter": anchor.kmeans_max_iter,
        "kmeans_rel_tol": anchor.kmeans_rel_tol,
    }


def _anchor_from_dict(d: dict) -> AnchorPolicy:
    return AnchorPolicy(
        kind=d.get("kind", "train-point"),
        kmeans_max_iter=int(d.get("kmeans_max_iter", 100)),
        kmeans_rel_tol=float(d.get("kmeans_rel_tol", 1e-6)),
    )


def method_to_dict(cfg: GeneratorConfig) -> dict:
    """JSON-ready description of a method config."""
    d: dict = {"method": method_name(cfg)}
    if isinstance(cfg, RaMConfig):
        d["u"] = cfg.u
    elif isinstance(cfg, RAlphaMConfig):
        d["alpha_min_deg"] = cfg.alpha_min_deg
        d["alpha_max_deg"] = cfg.alpha_max_deg
    elif isinstance(cfg, Raem1Config):
        d["u_ae"] = cfg.u_ae
    if hasattr(cfg, "anchor"):
        d["anchor"] = _anchor_to_dict(cfg.anchor)
    return d


def method_from_dict(d: dict) -> GeneratorConfig:
    """Inverse of method_to_dict; unknown tags or missing keys raise ConfigError."""
    tag = d.get("method")
    anchor = _anchor_from_dict(d["anchor"]) if "anchor" in d else AnchorPolicy()
    try:
        if tag == "ram":
            return RaMConfig(u=float(d["u"]), anchor=anchor)
        if tag == "ralpham":
            return RAlphaMConfig(
                alpha_max_deg=float(d["alpha_max_deg"]),
                alpha_min_deg=float(d.get("alpha_min_deg", 0.0)),
                anchor=anchor,
            )
        if tag == "raem1":
            return Raem1Config(u_ae=float(d["u_ae"]), anchor=anchor)
    except KeyError as exc:
        raise ConfigError(f"method {tag!r} needs key {exc.args[0]!r}") from None
    if tag == "raem2":
        return Raem2Config(anchor=anchor)
    if tag == "raem3":
        return Raem3Config(anchor=anchor)
    if tag == "raem4":
        return Raem4Config()
    if tag == "raem5":
        return Raem5Config()
    raise ConfigError(f"unknown method tag {tag!r}")


def family_config(
    name: str, interval: float | None = None, anchor: AnchorPolicy | None = None
) -> GeneratorConfig:
    """Build a config from a method tag plus its interval parameter, if any.

    For ``ram`` the interval is u, for ``ralpham`` the top angle in degrees,
    for ``raem1`` the encoder half-width u_ae. The parameter-free methods
    reject a non-None interval.
    """
    anchor = anchor if anchor is not None else AnchorPolicy()
    if name in TUNABLE:
        if interval is None:
            raise ConfigError(f"method {name!r} needs an interval parameter")
        if name == "ram":
            return RaMConfig(u=float(interval), anchor=anchor)
        if name == "ralpham":
            return RAlphaMConfig(alpha_max_deg=float(interval), anchor=anchor)
        return Raem1Config(u_ae=float(interval), anchor=anchor)
    if interval is not None:
        raise ConfigError(f"method {name!r} takes no interval parameter")
    if name == "raem2":
        return Raem2Config(anchor=anchor)
    if name == "raem3":
        return Raem3Config(anchor=anchor)
    if name == "raem4":
        return Raem4Config()
    if name == "raem5":
        return Raem5Config()
    raise ConfigError(f"unknown method tag {name!r}")
