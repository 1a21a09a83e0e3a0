"""itcluster - in-tree clustering by descent in a proximity graph."""

__version__ = "0.1.0"
__description__ = (
    "In-tree clustering by descending to the nearest neighbor in the Delaunay graph"
)

# Version info for easy access
VERSION = __version__
