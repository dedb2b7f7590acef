"""EPR-pair QSDC simulator: Bell algebra, protocol sessions and leakage bounds."""

import json

from ._qsdc import (  # noqa: F401
    BellIndex,
    CapacityMismatch,
    Config,
    ConfigError,
    LeakageReport,
    PauliOp,
    Side,
    bell_code,
    bell_vector,
    both_click_probability,
    code,
    decode_pauli,
    decode_swap,
    eigvalsh,
    holevo_numeric,
    i0_closed_form,
    parse_config,
    pauli_compose,
    pauli_matrix,
    pauli_on_bell,
    swap_expand,
    sweep_csv,
    trojan_frequency,
    von_neumann_entropy,
)
from . import _qsdc


def _config(message_hex, **kwargs):
    cfg = Config()
    cfg.message_hex = message_hex
    for key, value in kwargs.items():
        if not hasattr(cfg, key):
            raise TypeError(f"unknown config field {key!r}")
        setattr(cfg, key, value)
    return cfg


def run_bidirectional(message_hex, **kwargs):
    """Run one bidirectional session and return its transcript as a dict."""
    return json.loads(_qsdc.run_bidirectional_json(_config(message_hex, **kwargs)))


def run_swapping(message_hex, **kwargs):
    """Run one entanglement-swapping session and return its transcript as a dict."""
    return json.loads(_qsdc.run_swapping_json(_config(message_hex, **kwargs)))
