"""cadscript: text-driven solid modeling with solar analysis.

A small CAD kernel (boxes, spheres, hyperbolic-paraboloid shells, CSG
booleans on triangle meshes) driven by a line-oriented command language,
plus a natural-language front end, sun-path and insolation studies, an
interactive shell, and an HTTP service.
"""

__version__ = "0.1.0"
