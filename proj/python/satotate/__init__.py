"""Exact Ramanujan tau, elliptic-curve traces, synthetic Sato-Tate sequences and verifiers."""

import json as _json

from ._core import (  # noqa: F401
    DataCorruptionError,
    FormatError,
    Sequence,
    ec_sequence,
    h_gamma,
    kappa_partial,
    sample_st_angle,
    set_thread_count,
    st_cdf,
    st_constants,
    st_density,
    st_log_moments,
    synthetic_sequence,
    tau,
    tau_naive,
    tau_sequence,
    trace_at_prime,
    traces,
)
from . import _core


def _report(text):
    return _json.loads(text)


def tau_integrity(limit):
    return _report(_core.tau_integrity(limit))


def verify_thm1(sequence, epsilon=0.25, checkpoints=()):
    return _report(_core.verify_thm1(sequence, epsilon, list(checkpoints)))


def verify_thm2(sequence, checkpoints=()):
    return _report(_core.verify_thm2(sequence, list(checkpoints)))


def verify_thm3(sequence, x=0, support="nonzero", A=2.0, standardization="self"):
    return _report(_core.verify_thm3(sequence, x, support, A, standardization))


def verify_lemma_sums(sequence, gammas=(0.5, 1.0, 1.5), checkpoints=()):
    return _report(_core.verify_lemma_sums(sequence, list(gammas), list(checkpoints)))


def verify_hall_tenenbaum(f, x):
    return _report(_core.verify_hall_tenenbaum(list(f), x))
