"""Figure rendering for hyperhs CSV scan output."""

from figgen.io import ScanFile, ScanFileError
from figgen.render import render_f_scan, render_scaling

__all__ = ["ScanFile", "ScanFileError", "render_f_scan", "render_scaling"]
