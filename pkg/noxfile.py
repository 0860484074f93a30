#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-10
# @Filename: noxfile.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

import os
import tempfile

import nox


ROOT = os.path.dirname(os.path.abspath(__file__))


@nox.session(reuse_venv=True)
def tests(session):
    session.install("-e", ".", "--group", "dev")
    session.run("pytest", *session.posargs)


@nox.session(name="docs-live", reuse_venv=True)
def docs_live(session):
    docs_dir = session.posargs[0] if session.posargs else "."

    session.chdir(os.path.join(ROOT, "docs", "sphinx"))

    with tempfile.TemporaryDirectory() as destination:
        session.run(
            "sphinx-autobuild",
            "--port=0",
            "--open-browser",
            "-b=dirhtml",
            "-a",
            "--watch=../../src/clonebound",
            docs_dir,
            destination,
            external=True,
        )
