# docs/conf.py

import os
import sys

sys.path.insert(0, os.path.abspath('..'))

project = 'qaffine'
author = 'qaffine developers'
release = '0.1.0'

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.napoleon']
root_doc = master_doc = 'api'
exclude_patterns = ['_build', '*.md']
html_theme = 'sphinx_rtd_theme'
