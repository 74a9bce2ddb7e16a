# Sphinx configuration for the jackvar API documentation
import os
import sys

sys.path.insert(0, os.path.abspath('../'))

from jackvar import __version__

project = 'jackvar'
author = 'jackvar contributors'
release = __version__

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.napoleon', 'sphinx.ext.mathjax', 'recommonmark']
templates_path = ['_templates']
language = 'en'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

html_theme = 'alabaster'
html_static_path = ['_static']
