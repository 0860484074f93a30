from clonebound import __version__


extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.autosummary",
    "sphinx.ext.viewcode",
    "sphinx.ext.mathjax",
    "sphinx.ext.intersphinx",
    "sphinx_click.ext",
    "myst_parser",
    "sphinx_copybutton",
]

templates_path = ["_templates"]

source_suffix = ".rst"
master_doc = "index"

project = "clonebound"
copyright = "{0}, {1}".format("2025-", "José Sánchez-Gallego")
author = "José Sánchez-Gallego"

release = __version__
language = "en"

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

# Most of the docstrings carry LaTeX, rendered by mathjax.
default_role = "any"
add_module_names = True
pygments_style = "sphinx"
pygments_dark_style = "one-dark"

intersphinx_mapping = {
    "python": ("https://docs.python.org/3.12", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "polars": ("https://docs.pola.rs/api/python/stable/", None),
}

autodoc_member_order = "groupwise"
autodoc_default_options = {"members": None, "show-inheritance": None}

napoleon_use_rtype = False
napoleon_use_ivar = True

copybutton_prompt_text = r">>> |\$ "
copybutton_prompt_is_regexp = True

rst_epilog = f"""
.. |clonebound_version| replace:: {__version__}
.. default-role:: py:obj
"""


html_theme = "furo"
html_title = "clonebound's documentation"
