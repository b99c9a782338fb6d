"""CSV and Excel export of scan rows."""
import csv
import io
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence

from models import VerificationCertificate, to_json_value

logger = logging.getLogger(__name__)

SCAN_HEADERS = ["theorem", "n", "k", "t", "status", "checks", "elapsed_ms", "witness"]


def scan_row(cert: VerificationCertificate) -> List[str]:
    """One CSV row; every number as a decimal string"""
    params = cert.params
    witness = ""
    if cert.witness is not None:
        witness = repr_witness(cert.witness)
    return [
        cert.theorem_id,
        str(to_json_value(params.get("n", ""))),
        str(to_json_value(params.get("k", ""))),
        str(to_json_value(params.get("t", ""))),
        cert.status.value,
        str(cert.checks),
        str(cert.elapsed_ms),
        witness,
    ]


def repr_witness(witness: Dict[str, Any]) -> str:
    """Compact single-line form of a witness for spreadsheets"""
    parts = []
    for key in sorted(witness):
        value = witness[key]
        if isinstance(value, dict) and "sets" in value:
            value = value["sets"]
        parts.append(f"{key}={value}")
    return "; ".join(parts)


def scan_csv_text(certificates: Sequence[VerificationCertificate]) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(SCAN_HEADERS)
    for cert in certificates:
        writer.writerow(scan_row(cert))
    return output.getvalue()


def write_scan_csv(path: str, certificates: Sequence[VerificationCertificate]) -> Path:
    target = Path(path)
    with open(target, 'w', encoding='utf-8', newline='') as f:
        f.write(scan_csv_text(certificates))
    logger.info(f"wrote {len(certificates)} scan rows to {target}")
    return target


def write_scan_workbook(path: str, certificates: Sequence[VerificationCertificate]) -> Path:
    """生成Excel格式导出：每个定理一个工作表"""
    from openpyxl import Workbook
    from openpyxl.styles import Font, PatternFill

    wb = Workbook()
    # 删除默认工作表
    wb.remove(wb.active)

    sheets: Dict[str, Any] = {}
    for cert in certificates:
        ws = sheets.get(cert.theorem_id)
        if ws is None:
            # sheet titles are limited to 31 characters
            ws = wb.create_sheet(cert.theorem_id[:31])
            for col, header in enumerate(SCAN_HEADERS, 1):
                cell = ws.cell(row=1, column=col, value=header)
                cell.font = Font(bold=True)
                cell.fill = PatternFill(start_color="CCCCCC", end_color="CCCCCC", fill_type="solid")
            sheets[cert.theorem_id] = ws
        ws.append(scan_row(cert))

    if not sheets:
        ws = wb.create_sheet("scan")
        for col, header in enumerate(SCAN_HEADERS, 1):
            cell = ws.cell(row=1, column=col, value=header)
            cell.font = Font(bold=True)
            cell.fill = PatternFill(start_color="CCCCCC", end_color="CCCCCC", fill_type="solid")

    target = Path(path)
    wb.save(target)
    logger.info(f"wrote workbook with {len(sheets)} sheets to {target}")
    return target
