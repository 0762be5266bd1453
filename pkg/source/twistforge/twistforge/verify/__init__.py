# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Differential testing of the table-driven paths against Tate's algorithm."""

from .corpus import CorpusFilters, CorpusSpec
from .harness import DiffReport, Outcome, TransitionWitness, evaluate_curve, find_transition_witnesses, run_differential
from .minimize import minimize_witness
from .report import load_report, render_summary, save_report, write_report
