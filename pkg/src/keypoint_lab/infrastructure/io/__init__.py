"""Artifact codecs, report export and rendering."""

from .cloud_codec import append_clouds, decode_clouds, encode_clouds, read_clouds, write_clouds
from .model_codec import decode_model, encode_model, read_model, write_model
from .report_writer import ReportWriter
from .svg_renderer import SvgRenderer, compute_view_bounds

__all__ = [
    "ReportWriter",
    "SvgRenderer",
    "append_clouds",
    "compute_view_bounds",
    "decode_clouds",
    "decode_model",
    "encode_clouds",
    "encode_model",
    "read_clouds",
    "read_model",
    "write_clouds",
    "write_model",
]
