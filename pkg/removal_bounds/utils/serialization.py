# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

import hashlib
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

import canonicaljson
from pydantic import BaseModel


def calculate_file_hash(file_path: Union[str, Path]) -> str:
    """Calculate SHA256 hash of file"""
    sha256_hash = hashlib.sha256()
    with open(file_path, 'rb') as f:
        for byte_block in iter(lambda: f.read(4096), b''):
            sha256_hash.update(byte_block)
    return f"sha256:{sha256_hash.hexdigest()}"


def verify_file_hash(file_path: Union[str, Path], expected_hash: str) -> bool:
    """Verify if file hash matches expected hash"""
    return calculate_file_hash(file_path) == expected_hash


def fraction_str(value: Fraction) -> str:
    """Render a rational as "p/q" (denominator always present)"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def canonical_bytes(payload: Union[BaseModel, Any]) -> bytes:
    """Canonical JSON encoding (sorted keys, no insignificant whitespace)"""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return canonicaljson.encode_canonical_json(payload)
