"""Robustness benchmark: seal once, attack, extract, score."""

import csv
import math
from dataclasses import dataclass

from . import attacks
from .metrics import UndefinedCorrelationError, ncc, psnr
from .watermark import EmbedParams, seal, unseal

DEFAULT_SUITE = ("median:3", "average:3", "gauss:10:42", "resize:512x512", "rotate:80", "none")
SUITES = {"default": DEFAULT_SUITE}
REPORT_COLUMNS = ("attack", "ncc_primary", "ncc_secondary", "psnr_db")


@dataclass
class AttackRow:
    attack: str
    ncc_primary: float
    ncc_secondary: float
    psnr_db: float


def safe_ncc(a, b):
    try:
        return ncc(a, b)
    except UndefinedCorrelationError:
        return math.nan


def score_attack(sealed, host, primary, secondary, key, spec):
    """Attack the watermarked host and compare recovered marks with the originals.

    ``psnr_db`` compares the host with the attacked watermarked image.
    """
    attacked = attacks.apply(sealed.watermarked_host, spec)
    rec_primary, rec_secondary = unseal(attacked, host, primary, key, sealed.side_info)
    return AttackRow(
        attack=str(spec),
        ncc_primary=safe_ncc(primary, rec_primary),
        ncc_secondary=safe_ncc(secondary, rec_secondary),
        psnr_db=psnr(host, attacked),
    )


def evaluate(host, primary, secondary, key, params=EmbedParams(), suite=DEFAULT_SUITE):
    if isinstance(suite, str):
        suite = SUITES[suite]
    specs = [attacks.parse(s) if isinstance(s, str) else s for s in suite]
    sealed = seal(host, primary, secondary, key, params)
    return [score_attack(sealed, host, primary, secondary, key, spec) for spec in specs]


def fmt(x):
    return format(x, ".6g")


def write_report(rows, path):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(REPORT_COLUMNS)
        for r in rows:
            writer.writerow([r.attack, fmt(r.ncc_primary), fmt(r.ncc_secondary), fmt(r.psnr_db)])
