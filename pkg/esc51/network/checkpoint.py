"""Network checkpoints as NumPy archives.

Layout (format_version 1): `format_version` (scalar int), `layer_dims` (int
vector), `action_count` (scalar int), `v_min` and `v_max` (scalar floats, the
support the network was trained on), then `W0, b0, W1, b1, ...` where each W
is a (fan_in, fan_out) float64 matrix stored row-major.
"""
from __future__ import annotations

import os

import numpy as np

from esc51.categorical import Support, make_support
from esc51.network import errors
from esc51.network.mlp import ValueDistributionNetwork

FORMAT_VERSION = 1


def save_checkpoint(net: ValueDistributionNetwork, support: Support, path: str | os.PathLike[str]) -> None:
    if support.n_atoms != net.n_atoms:
        raise errors.StructureMismatchError(f"Support has {support.n_atoms} atoms, network has {net.n_atoms}")
    arrays: dict[str, np.ndarray] = {
        "format_version": np.array(FORMAT_VERSION),
        "layer_dims": np.array(net.layer_dims, dtype=np.int64),
        "action_count": np.array(net.action_count),
        "v_min": np.array(support.v_min, dtype=np.float64),
        "v_max": np.array(support.v_max, dtype=np.float64),
    }
    for i, (w, b) in enumerate(zip(net.weights, net.biases)):
        arrays[f"W{i}"] = np.ascontiguousarray(w)
        arrays[f"b{i}"] = np.ascontiguousarray(b)
    with open(path, "wb") as f:
        np.savez(f, **arrays)


def load_checkpoint(path: str | os.PathLike[str]) -> tuple[ValueDistributionNetwork, Support]:
    """Read a network and the support its distributions are defined on."""
    with np.load(path) as archive:
        if "format_version" not in archive or int(archive["format_version"]) != FORMAT_VERSION:
            raise errors.CheckpointFormatError(f"{path} is not a format_version {FORMAT_VERSION} checkpoint")
        if "v_min" not in archive or "v_max" not in archive:
            raise errors.CheckpointFormatError(f"{path} does not record its support bounds")
        layer_dims = [int(d) for d in archive["layer_dims"]]
        n_layers = len(layer_dims) - 1
        net = ValueDistributionNetwork.from_parameters(
            layer_dims,
            int(archive["action_count"]),
            weights=[archive[f"W{i}"] for i in range(n_layers)],
            biases=[archive[f"b{i}"] for i in range(n_layers)],
        )
        return net, make_support(net.n_atoms, float(archive["v_min"]), float(archive["v_max"]))
