"""Panel renderer for lgbounds spin-demo CSV output."""

from .panels import (
    DEFAULT_T3_SLICE,
    IoError,
    PanelSpec,
    RenderResult,
    SchemaError,
    SPHERE_SCHEMA,
    SURFACE_SCHEMA,
    render,
)

__version__ = "0.1.0"
