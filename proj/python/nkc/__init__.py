from ._nkc import (
    ComplexError,
    GeometryError,
    Quiver,
    QuiverError,
    SurfaceError,
    WalkError,
    c_vector,
    corpus,
    crossing_count,
    d_vector,
    facets,
    fan,
    flip,
    flip_graph,
    g_vector,
    kissing_number,
    polytope,
    random_quiver,
    roundtrip,
    surface,
    surface_map,
    walks,
)

__all__ = [name for name in dir() if not name.startswith("_")]
