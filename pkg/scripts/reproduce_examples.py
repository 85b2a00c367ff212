#!/usr/bin/env python3
"""
Reproduce Worked Examples
Runs every golden CLI invocation for the Wallach threefold and P² and checks the exact outputs.
"""
import io
import json
import logging
import os
import sys
from contextlib import redirect_stdout
from typing import Dict, List, Tuple

# Add project root to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from config.settings import settings
from src.cli.commands import run

logging.basicConfig(level=settings.LOG_LEVEL, format=settings.LOG_FORMAT)
logger = logging.getLogger(__name__)

WALLACH = ['--type', 'A2', '--parabolic', '']

# (label, argv, dotted path into the JSON envelope, expected value)
GOLDEN_INVOCATIONS: List[Tuple[str, List[str], str, object]] = [
    ('volume ω=(2,2)', ['volume', *WALLACH, '--omega', '2,2'], 'exact.volume', '8'),
    ('δ_P', ['flag-info', *WALLACH], 'exact.delta_p', ['2', '2']),
    ('hypercritical ψ=(4,4)', ['phase', *WALLACH, '--omega', '2,2', '--psi', '4,4'], 'verdicts.window', 'hypercritical'),
    ('subcritical ψ=(-1,-1)', ['phase', *WALLACH, '--omega', '2,2', '--psi=-1,-1'], 'verdicts.window', 'subcritical'),
    ('CJY counterexample', ['cjy', *WALLACH, '--omega', '2,2', '--psi=-1,-1', '--target', 'curve:1,0'],
     'verdicts.im_sign', -1),
    ('slope 𝒪(1,1)', ['slope', *WALLACH, '--omega', '2,2', '--bundle', '1,1'], 'exact.slope', '24'),
    ('μ̂ 𝒪(1,1)', ['muhat', *WALLACH, '--omega', '2,2', '--bundle', '1,1'], 'exact.mu_hat', '3/2'),
    ('HR matrix ω=(2,1)', ['hr-matrix', *WALLACH, '--omega', '2,1'], 'exact.entries', [['1', '3'], ['3', '2']]),
    ('τ ω=(2,2)', ['tau', *WALLACH, '--omega', '2,2'], 'exact.tau', '12'),
    ('τ ω=(2,1)', ['tau', *WALLACH, '--omega', '2,1'], 'exact.tau', '1'),
    ('Pic⁰ ω=(2,2)', ['pic0', *WALLACH, '--omega', '2,2', '--gamma', '1'], 'exact.generators', [['-1', '1']]),
    ('Pic⁰ ω=(2,1)', ['pic0', *WALLACH, '--omega', '2,1', '--gamma', '1'], 'exact.generators', [['-8', '5']]),
    ('density n=120', ['density', *WALLACH, '--omega', '2,2', '--n', '120'], 'exact.count', '10'),
    ('HYM constant μ=24', ['hym', *WALLACH, '--omega', '2,2', '--bundle', '1,1;2,0'], 'exact.constant_pi', '3'),
    ('P² τ', ['tau', '--type', 'A2', '--parabolic', '2', '--omega', '2'], 'exact.tau', '2'),
]


class ExampleReproduction:
    """Runs the golden invocations and reports mismatches"""

    def __init__(self, invocations=None):
        """Initialize reproduction with the golden invocation table"""
        self.invocations = invocations or GOLDEN_INVOCATIONS

    @staticmethod
    def _lookup(payload: Dict, path: str):
        for key in path.split('.'):
            payload = payload[key]
        return payload

    def run_one(self, argv: List[str]) -> Tuple[int, Dict]:
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            code = run([*argv, '--json'])
        return code, json.loads(buffer.getvalue()) if code == 0 else {}

    def run(self) -> bool:
        """Runs every invocation; True when all match"""
        failures = 0
        for label, argv, path, expected in self.invocations:
            code, payload = self.run_one(argv)
            actual = self._lookup(payload, path) if code == 0 else f"exit {code}"
            status = "OK " if actual == expected else "FAIL"
            if actual != expected:
                failures += 1
                logger.error(f"{label}: expected {expected!r}, got {actual!r}")
            print(f"[{status}] {label}: {actual}")

        print(f"\n{len(self.invocations) - failures}/{len(self.invocations)} golden invocations reproduced")
        return failures == 0


if __name__ == "__main__":
    reproduction = ExampleReproduction()
    sys.exit(0 if reproduction.run() else 1)
