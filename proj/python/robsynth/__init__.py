"""Robust strategy synthesis and verification for metric automata.

Reports come back as dictionaries; documents, strategies and certificates
are passed as JSON text in the command-line tool's formats.
"""

import json

from . import _robsynth
from ._robsynth import (
    Automaton,
    DocumentError,
    ModelError,
    NotWinningError,
    PreconditionError,
    gray_code,
    leader_election,
    running_example,
)

__all__ = [
    "Automaton",
    "DocumentError",
    "ModelError",
    "NotWinningError",
    "PreconditionError",
    "check_certificate",
    "construct_certificate",
    "export_dot",
    "fault_bound",
    "gray_code",
    "induce_strategy",
    "leader_election",
    "load",
    "running_example",
    "synthesize",
    "validate",
    "verify",
]


def _text(value):
    return value if value is None or isinstance(value, str) else json.dumps(value)


def load(path, validate=True):
    with open(path, encoding="utf-8") as f:
        return Automaton.from_json(f.read(), validate)


def validate(automaton):
    return json.loads(automaton.validate())


def synthesize(automaton):
    return json.loads(_robsynth.synthesize(automaton))


def verify(automaton, strategy):
    return json.loads(_robsynth.verify(automaton, _text(strategy)))


def check_certificate(automaton, certificate):
    return json.loads(_robsynth.check_certificate(automaton, _text(certificate)))


def construct_certificate(automaton, strategy, eta="1"):
    return json.loads(_robsynth.construct_certificate(automaton, _text(strategy), str(eta)))


def induce_strategy(automaton, certificate):
    return json.loads(_robsynth.induce_strategy(automaton, _text(certificate)))


def fault_bound(automaton, strategy, certificate=None, search=False):
    return json.loads(_robsynth.fault_bound(automaton, _text(strategy), _text(certificate), search))


def export_dot(automaton, strategy=None):
    return _robsynth.export_dot(automaton, _text(strategy))
