"""Numerical differential geometry for asymptotically hyperbolic manifolds.

Modules:
    jets            second-order forward-mode derivatives
    tensor_engine   pointwise curvature of chart metrics
    holographic     collar expansions, curvature defects, WPE classification
    submanifold     extrinsic geometry, Gauss / Fialkow-Gauss checks
    catenoid        minimal rotation hypersurfaces in hyperbolic space
    cheeger_spectral  Cheeger-constant bounds and the Lee eigenfunction
    catalog         named example geometries
    cli             command-line interface
"""

__version__ = "0.1.0"
