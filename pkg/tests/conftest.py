import random

import numpy as np
from hypothesis import settings

from ortho_lab import properties as props

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


def ctx_for(seed: int) -> props.Ctx:
    return props.Ctx(np.random.default_rng(seed), random.Random(seed))


def run_check(name: str, seed: int):
    p = next(p for p in props.REGISTRY if p.name == name)
    return p.check(ctx_for(seed))


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
