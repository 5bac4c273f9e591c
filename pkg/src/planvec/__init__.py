"""planvec: floor-plan vectorization toolkit.

Stages: super-resolution preprocessing, junction-heatmap post-processing
into room/icon polygons, SVG ground-truth handling, and micro-average
segmentation scoring, wired together by a batch pipeline and CLI.
"""

__version__ = "0.1.0"
