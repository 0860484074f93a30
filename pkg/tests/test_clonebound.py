#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-10
# @Filename: test_clonebound.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import pathlib

import pytest


async def test_version():
    from clonebound import __version__

    assert isinstance(__version__, str)


def test_set_config(tmp_path: pathlib.Path):
    import clonebound
    from clonebound import config, set_config
    from clonebound.utils import get_limits

    test_config = clonebound.CONFIG_FILE

    custom = tmp_path / "config.yaml"
    custom.write_text("limits:\n  max_register_qubits: 4\n")

    try:
        set_config(custom)

        assert clonebound.CONFIG_FILE == custom
        assert config["limits"]["max_register_qubits"] == 4
        assert get_limits().max_register_qubits == 4
    finally:
        set_config(test_config)

    assert get_limits().max_register_qubits == 16


def test_set_config_missing(tmp_path: pathlib.Path):
    from clonebound import set_config

    with pytest.raises(FileNotFoundError):
        set_config(tmp_path / "missing.yaml")
