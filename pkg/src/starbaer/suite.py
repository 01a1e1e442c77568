"""Ring specs shipped with the package."""

import hashlib
from pathlib import Path

from .errors import SpecError

RING_DIR = Path(__file__).parent / "rings"


def _sums():
    out = {}
    for line in (RING_DIR / "SHA256SUMS").read_text().splitlines():
        digest, name = line.split()
        out[name] = digest
    return out


def verify_checksums():
    """Raise SpecError if any shipped file differs from SHA256SUMS."""
    for name, digest in sorted(_sums().items()):
        got = hashlib.sha256((RING_DIR / name).read_bytes()).hexdigest()
        if got != digest:
            raise SpecError(f"checksum mismatch for {name}")


def bundled_suite():
    """Paths of the bundled ring specs, sorted by name; checksums verified."""
    verify_checksums()
    return [RING_DIR / n for n in sorted(_sums()) if not n.endswith("-action.json")]


def bundled(name):
    path = RING_DIR / f"{name}.json"
    if not path.exists():
        raise SpecError(f"no bundled ring named {name!r}")
    return path


def bundled_action(name):
    return RING_DIR / f"{name}-action.json"
