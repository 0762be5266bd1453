# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""
Exact local data of elliptic curves over Q_p and of their quadratic twists.
"""

import os

import toml

_EXTENSION_TOML = os.path.join(os.path.dirname(os.path.dirname(os.path.realpath(__file__))), "config", "extension.toml")

try:
    __version__ = toml.load(_EXTENSION_TOML)["package"]["version"]
except (FileNotFoundError, KeyError):
    __version__ = "0.0.0"

from .kodaira import KodairaType, LocalData, ReductionKind
from .strongly_minimal import StronglyMinimalModel, base_local_data, classify, to_strongly_minimal
from .tate import tate_local_data
from .twist import TwistLocalData, TwistPath, twist_local_data, twist_strongly_minimal
from .weierstrass import Isomorphism, TwistClass, WeierstrassModel, canonicalize_twist, twist_model
