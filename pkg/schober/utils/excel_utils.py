import logging
import os

import pandas as pd
from openpyxl.styles import Alignment, Font, PatternFill

from schober.utils.dot import matrix_label

logger = logging.getLogger(__name__)

SHEET_NAME = 'Relation Checks'


def get_excel_headers():
    """Return the list of column headers for the report sheet"""
    return ['Report', 'Kind', 'Name', 'Status', 'Code', 'Message', 'LHS', 'RHS']


def reports_to_dataframe(reports):
    """One row per relation check and per issue, in report order"""
    rows = []
    for report in reports:
        for check in report.checks:
            rows.append({
                'Report': report.name,
                'Kind': 'check',
                'Name': check.name,
                'Status': 'PASS' if check.passed else 'FAIL',
                'Code': '',
                'Message': '',
                'LHS': matrix_label(check.lhs) if check.lhs is not None else '',
                'RHS': matrix_label(check.rhs) if check.rhs is not None else '',
            })
        for issue in report.issues:
            rows.append({
                'Report': report.name,
                'Kind': 'issue',
                'Name': '',
                'Status': 'FAIL',
                'Code': issue.code,
                'Message': issue.message,
                'LHS': '',
                'RHS': '',
            })
        if not report.checks and not report.issues:
            rows.append({'Report': report.name, 'Kind': 'summary', 'Name': '',
                         'Status': 'PASS', 'Code': '', 'Message': '', 'LHS': '', 'RHS': ''})
    return pd.DataFrame(rows, columns=get_excel_headers())


def _style_sheet(ws):
    # Style: headers bold, colored, centered; freeze top row; set row height
    header_font = Font(bold=True, color='FFFFFF')
    header_fill = PatternFill(start_color='4F81BD', end_color='4F81BD', fill_type='solid')
    header_alignment = Alignment(horizontal='center', vertical='center', wrap_text=True)
    ws.freeze_panes = 'A2'
    ws.row_dimensions[1].height = 22
    for cell in ws[1]:
        cell.font = header_font
        cell.fill = header_fill
        cell.alignment = header_alignment

    # Auto-size columns based on content (bounded)
    max_width = 32
    min_width = 12
    center_headers = {'Kind', 'Status', 'Code'}
    center_align = Alignment(horizontal='center', vertical='center', wrap_text=True)
    left_align = Alignment(horizontal='left', vertical='center', wrap_text=True)
    for col in ws.columns:
        column_letter = col[0].column_letter
        lengths = []
        for cell in col:
            lengths.append(len('' if cell.value is None else str(cell.value)))
            if cell.row == 1:
                continue
            header_text = ws.cell(row=1, column=cell.column).value
            cell.alignment = center_align if header_text in center_headers else left_align
        best = max(lengths or [min_width])
        ws.column_dimensions[column_letter].width = max(min_width, min(int(best * 1.1) + 2, max_width))


def export_reports_to_excel(reports, output_file, report_dir=None):
    """Write reports to a styled .xlsx file; bare file names go under ``report_dir``"""
    if report_dir and not os.path.dirname(output_file):
        output_file = os.path.join(report_dir, output_file)
    directory = os.path.dirname(output_file)
    if directory:
        os.makedirs(directory, exist_ok=True)

    df = reports_to_dataframe(reports)
    with pd.ExcelWriter(output_file, engine='openpyxl') as writer:
        df.to_excel(writer, sheet_name=SHEET_NAME, index=False)
        _style_sheet(writer.sheets[SHEET_NAME])
    logger.info('Exported %d report rows to %s', len(df), output_file)
    return output_file
