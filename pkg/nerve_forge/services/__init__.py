"""
Business logic services module
"""

from .exactgeom import exact_geometry
from .nervecalc import nerve_service
from .subsetfind import subset_finder
from .treebuild import tree_builder
from .cyclebuild import cycle_builder
from .configs import config_service
from .file_processor import file_processor
from .svg_renderer import svg_renderer
from .report_storage import report_storage
from .acceptance import acceptance_runner
