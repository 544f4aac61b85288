# Configuration file for the Sphinx documentation builder.
#
# For a full list of options see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))


# -- Project information -----------------------------------------------------

project = 'poseval'
author = 'poseval developers'

# The full version, including alpha/beta/rc tags
release = '0.1.0'


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinxcontrib.apidoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx'
]

# Wire the sphinx-apidoc invocation into the build.
# See: https://github.com/sphinx-contrib/apidoc
apidoc_module_dir = '../../poseval'
apidoc_output_dir = 'reference'
apidoc_excluded_paths = ['*/tests']
apidoc_separate_modules = True

templates_path = ['_templates']
exclude_patterns = []

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
}


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'

autodoc_member_order = 'groupwise'
# matplotlib is only needed to draw plots
autodoc_mock_imports = ['matplotlib']

html_theme_options = {
    "sticky_navigation": False
}
