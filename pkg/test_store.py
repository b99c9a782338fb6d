"""
测试证书账本与扫描导出
"""
import json
import threading

from export import SCAN_HEADERS, repr_witness, scan_csv_text, scan_row, write_scan_workbook
from models import CertificateStatus, VerificationCertificate
from store import CertificateStore, certificate_json, write_certificate


def make_cert(n, status=CertificateStatus.VERIFIED, theorem="eqfull2", witness=None):
    return VerificationCertificate(theorem_id=theorem, params={"n": n, "k": 4}, status=status,
                                   checks=0 if status is CertificateStatus.SKIPPED else 2,
                                   witness=witness, elapsed_ms=0)


def test_store_orders_by_parameters():
    store = CertificateStore()
    for n in (11, 9, 10):
        store.add(make_cert(n))
    assert [c.params["n"] for c in store.get_all()] == [9, 10, 11]
    assert len(store) == 3


def test_store_orders_by_n_before_k():
    store = CertificateStore()
    for n, k in ((10, 5), (9, 6), (10, 4)):
        store.add(VerificationCertificate(theorem_id="ekr", params={"k": k, "n": n},
                                          status=CertificateStatus.VERIFIED, checks=1, elapsed_ms=0))
    assert [(c.params["n"], c.params["k"]) for c in store.get_all()] == [(9, 6), (10, 4), (10, 5)]


def test_store_by_status_and_counterexample():
    store = CertificateStore()
    store.add(make_cert(9))
    store.add(make_cert(10, CertificateStatus.SKIPPED, witness={"reason": "range"}))
    assert not store.has_counterexample()
    store.add(make_cert(11, CertificateStatus.COUNTEREXAMPLE, witness={"l": "2"}))
    grouped = store.by_status()
    assert {status: len(items) for status, items in grouped.items()} == {
        "verified": 1, "counterexample": 1, "skipped": 1}
    assert store.has_counterexample()


def test_store_concurrent_adds():
    store = CertificateStore()
    threads = [threading.Thread(target=store.add, args=(make_cert(n),)) for n in range(9, 29)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(store) == 20


def test_store_save_and_load(tmp_path):
    path = tmp_path / "certificates.json"
    store = CertificateStore(str(path))
    store.add(make_cert(10))
    store.add(make_cert(9, CertificateStatus.COUNTEREXAMPLE, witness={"sum": "77"}))
    store.save()
    data = json.loads(path.read_text(encoding="utf-8"))
    assert [c["params"]["n"] for c in data["certificates"]] == [9, 10]
    again = CertificateStore.load(str(path))
    assert again.get_all() == store.get_all()


def test_store_ignores_corrupt_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert len(CertificateStore(str(path))) == 0


def test_write_certificate(tmp_path):
    cert = make_cert(10)
    target = write_certificate(str(tmp_path / "c.json"), cert)
    assert target.read_text(encoding="utf-8") == certificate_json(cert) + "\n"
    assert json.loads(target.read_text(encoding="utf-8"))["theorem"] == "eqfull2"


def test_scan_rows():
    cert = make_cert(10, CertificateStatus.COUNTEREXAMPLE,
                     witness={"family": {"n": 10, "k": 4, "size": "1", "sets": [[1, 2, 3, 4]]}, "l": "2"})
    row = scan_row(cert)
    assert row[:7] == ["eqfull2", "10", "4", "", "counterexample", "2", "0"]
    assert row[7] == "family=[[1, 2, 3, 4]]; l=2"
    assert repr_witness({"reason": "guard"}) == "reason=guard"


def test_scan_csv_text():
    text = scan_csv_text([make_cert(9), make_cert(10)])
    lines = text.splitlines()
    assert lines[0] == ",".join(SCAN_HEADERS)
    assert lines[1] == "eqfull2,9,4,,verified,2,0,"
    assert len(lines) == 3


def test_workbook_sheets(tmp_path):
    from openpyxl import load_workbook

    path = tmp_path / "scan.xlsx"
    write_scan_workbook(str(path), [make_cert(9), make_cert(10, theorem="thmfull1")])
    wb = load_workbook(path)
    assert wb.sheetnames == ["eqfull2", "thmfull1"]
    assert [c.value for c in wb["eqfull2"][1]] == SCAN_HEADERS

    empty = tmp_path / "empty.xlsx"
    write_scan_workbook(str(empty), [])
    assert load_workbook(empty).sheetnames == ["scan"]
