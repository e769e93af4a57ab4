from .report_writer import emit_report, write_shots_csv, write_summary_json, write_curve_csv, SHOTS_HEADER
from .result_analysis import load_shots, summarize_shots, analyze_shots

__all__ = [
    'emit_report', 'write_shots_csv', 'write_summary_json', 'write_curve_csv', 'SHOTS_HEADER',
    'load_shots', 'summarize_shots', 'analyze_shots',
]
