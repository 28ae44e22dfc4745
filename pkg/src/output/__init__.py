"""
Output package - meshes, grid tables, curves and reports
"""
from .formatter import fields_frame, singular_frame, to_csv, to_jsonl, to_obj, to_report_json, write_text

__all__ = ["fields_frame", "singular_frame", "to_csv", "to_jsonl", "to_obj", "to_report_json", "write_text"]
