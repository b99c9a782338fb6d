from typing import Any, Dict, List, Optional, Tuple
import threading
import json
import logging
from pathlib import Path

from models import CertificateStatus, VerificationCertificate

logger = logging.getLogger(__name__)


def _order_value(value: Any) -> Tuple[int, Any]:
    if isinstance(value, bool):
        return (1, str(value))
    if isinstance(value, int):
        return (0, value)
    return (1, str(value))


PARAM_ORDER = ("n", "k", "a", "b", "t", "s", "j")


def _param_rank(name: str) -> Tuple[int, str]:
    return (PARAM_ORDER.index(name), "") if name in PARAM_ORDER else (len(PARAM_ORDER), name)


def certificate_key(cert: VerificationCertificate) -> Tuple:
    """Theorem id, then n, k, a, b, t, s, j and the remaining parameters by name; numbers compare numerically"""
    names = sorted(cert.params, key=_param_rank)
    params = tuple((_param_rank(name), _order_value(cert.params[name])) for name in names)
    return (cert.theorem_id, params)


class CertificateStore:
    """证书账本：线程安全，可选JSON持久化"""

    def __init__(self, data_file: Optional[str] = None):
        self._certificates: List[VerificationCertificate] = []
        self._lock = threading.Lock()
        self._data_file = Path(data_file) if data_file else None
        if self._data_file is not None:
            self._load_data()

    def add(self, cert: VerificationCertificate) -> VerificationCertificate:
        with self._lock:
            self._certificates.append(cert)
            logger.debug(f"stored {cert.theorem_id} {cert.status.value} params={cert.params}")
            return cert

    def get_all(self) -> List[VerificationCertificate]:
        """All certificates in deterministic parameter order"""
        with self._lock:
            return sorted(self._certificates, key=certificate_key)

    def by_status(self) -> Dict[str, List[VerificationCertificate]]:
        """Certificates grouped by status"""
        grouped: Dict[str, List[VerificationCertificate]] = {status.value: [] for status in CertificateStatus}
        for cert in self.get_all():
            grouped[cert.status.value].append(cert)
        return grouped

    def has_counterexample(self) -> bool:
        with self._lock:
            return any(c.status is CertificateStatus.COUNTEREXAMPLE for c in self._certificates)

    def __len__(self) -> int:
        with self._lock:
            return len(self._certificates)

    def save(self, path: Optional[str] = None) -> Path:
        """保存证书到JSON文件"""
        target = Path(path) if path else self._data_file
        if target is None:
            raise ValueError("no data file configured")
        data = {"certificates": [c.to_json_dict() for c in self.get_all()]}
        with open(target, 'w', encoding='utf-8') as f:
            json.dump(data, f, ensure_ascii=False, indent=2)
        logger.info(f"saved {len(data['certificates'])} certificates to {target}")
        return target

    def _load_data(self) -> None:
        """从JSON文件加载证书"""
        if not self._data_file.exists():
            return
        try:
            with open(self._data_file, 'r', encoding='utf-8') as f:
                data = json.load(f)
            self._certificates = [VerificationCertificate.model_validate(item)
                                  for item in data.get("certificates", [])]
        except (OSError, ValueError) as e:
            logger.error(f"加载证书失败: {e}")
            self._certificates = []

    @classmethod
    def load(cls, path: str) -> "CertificateStore":
        return cls(data_file=path)


def certificate_json(cert: VerificationCertificate) -> str:
    """Canonical JSON text of one certificate"""
    return json.dumps(cert.to_json_dict(), ensure_ascii=False, indent=2)


def write_certificate(path: str, cert: VerificationCertificate) -> Path:
    target = Path(path)
    target.write_text(certificate_json(cert) + "\n", encoding='utf-8')
    logger.info(f"wrote certificate {cert.theorem_id} to {target}")
    return target
