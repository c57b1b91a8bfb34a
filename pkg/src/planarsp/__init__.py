"""Shortest paths in embedded planar graphs via distance-matrix heaps.

The engine builds nested edge-partitions of an embedded planar graph,
summarizes each part by the matrix of distances between its boundary
vertices, and runs Dijkstra-style searches that relax whole matrix rows
through range-minimum structures instead of individual arcs.  On top of it
sit two applications: all-pairs distances among the vertices of one face,
and maximum flow between arbitrary terminals.
"""

__version__ = "0.1.0"
