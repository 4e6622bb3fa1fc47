"""Tolerant extraction of the ten decision fields from free-form agent text.

Accepts labeled key/value lines ("Your order in units (required): 5,000"),
markdown table rows, currency symbols, thousands separators, and the dash
convention where a bare "-" means zero while "- 20,000" means minus 20,000.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from ..engine import DecisionVector

CANONICAL_LABELS = {
    "order_units": "Your order in units (required)",
    "price": "Price $ (required)",
    "workers_hired": "Workers hired",
    "workers_dismissed": "Workers dismissed",
    "marketing_expense": "Marketing expense $",
    "loans": "Loans $",
    "training_expense": "Training expense $",
    "rnd_expense": "R&D expense $",
    "sales_forecast_next": "Sales forecast next period $",
    "net_income_forecast": "Net income forecast $",
}

_ALIASES = {
    "order_units": ("your order in units", "order in units", "order units",
                    "order size", "production order size", "production order", "order"),
    "price": ("price",),
    "workers_hired": ("workers hired", "workers to hire", "hired", "hires", "hiring"),
    "workers_dismissed": ("workers dismissed", "workers to dismiss", "dismissed",
                          "dismissals", "layoffs"),
    "marketing_expense": ("marketing expense", "marketing budget", "marketing"),
    "loans": ("loans", "loan", "new loans", "bank loan"),
    "training_expense": ("training expense", "training budget", "training"),
    "rnd_expense": ("r&d expense", "rnd expense", "r&d budget", "r&d",
                    "research and development", "rd expense"),
    "sales_forecast_next": ("sales forecast next period", "sales forecast",
                            "revenue forecast"),
    "net_income_forecast": ("net income forecast", "profit forecast",
                            "income forecast", "net profit forecast"),
    "dividend_rate": ("dividends %", "dividend rate", "dividend %", "dividends"),
}

REQUIRED_FIELDS = ("order_units", "price")

_DASHES = {"-", "--", "–", "—", "−", "n/a", "na", "none", "nil"}
_LEADING_NUMBER_RE = re.compile(
    r"\(?\s*[-–—−+]?\s*\$?\s*\d(?:[\d,]|\s(?=\d))*(?:\.\d+)?\)?")


@dataclass
class DecisionParseResult:
    decision: Optional[DecisionVector]
    diagnostics: list[tuple[str, str]] = field(default_factory=list)
    raw_text: str = ""
    attempts: int = 1

    @property
    def ok(self) -> bool:
        return self.decision is not None


def parse_number(token: str) -> Optional[float]:
    """Normalize one numeric cell; bare dashes mean zero; None if unparseable."""
    text = token.strip()
    if not text:
        return None
    if text.lower() in _DASHES:
        return 0.0
    negative = text.startswith("(") and text.endswith(")")
    if negative:
        text = text[1:-1].strip()
    text = text.replace("$", "").replace("%", "").strip()
    text = re.sub(r"^[–—−]", "-", text)
    text = re.sub(r"^([-+])\s+", r"\1", text)       # "- 20,000" -> "-20,000"
    text = text.replace(",", "").replace(" ", "")
    if not re.fullmatch(r"[-+]?\d+(\.\d+)?", text):
        return None
    value = float(text)
    return -value if negative else value


def _leading_number(value_text: str) -> Optional[float]:
    """Parse the leading numeric token of a value string, tolerating trailing prose."""
    text = value_text.strip().lstrip("*").strip()
    if not text:
        return None
    first_word = text.split()[0]
    if first_word.lower() in _DASHES and not _LEADING_NUMBER_RE.match(text):
        return 0.0
    match = _LEADING_NUMBER_RE.match(text)
    if match:
        return parse_number(match.group(0))
    return parse_number(first_word)


def _match_field(label: str) -> Optional[str]:
    cleaned = re.sub(r"\(required\)", "", label.lower())
    cleaned = re.sub(r"[^a-z&% ]", " ", cleaned)
    cleaned = re.sub(r"\s+", " ", cleaned).strip()
    if not cleaned:
        return None
    for name, aliases in _ALIASES.items():
        for alias in aliases:
            if cleaned == alias or cleaned.startswith(alias + " ") or cleaned.endswith(" " + alias):
                return name
    return None


def _labeled_pairs(text: str) -> dict[str, float]:
    """Scan for 'label: value' (or 'label = value') pairs; first hit per field wins."""
    found: dict[str, float] = {}
    chunks = re.split(r"[\n;]|(?<=\d)\s*/\s*(?=[A-Za-z])|\s/\s(?=[A-Za-z])", text)
    for chunk in chunks:
        m = re.match(r"\s*[-*•]?\s*\**\s*([^:=|]{2,60}?)\s*\**\s*[:=]\s*(.*)$", chunk)
        if not m:
            continue
        name = _match_field(m.group(1))
        if name is None or name in found:
            continue
        value = _leading_number(m.group(2))
        if value is not None:
            found[name] = value
    return found


def _table_row(text: str) -> Optional[dict[str, float]]:
    """Fallback: a pipe-delimited row of ten numeric cells in canonical column order."""
    for line in text.splitlines():
        if line.count("|") < 9:
            continue
        cells = [c.strip() for c in line.strip().strip("|").split("|")]
        values = [parse_number(c) for c in cells]
        if values and values[0] is None:           # leading month-name cell
            values = values[1:]
        if len(values) >= 10 and all(v is not None for v in values[:10]):
            order = list(CANONICAL_LABELS)
            return {order[i]: values[i] for i in range(10)}
    return None


def parse_decision_block(text: str) -> DecisionParseResult:
    """Extract a DecisionVector from agent output, or diagnostics on failure."""
    raw = text or ""
    found = _labeled_pairs(raw)
    if len(found) < 10:
        row = _table_row(raw)
        if row:
            for name, value in row.items():
                found.setdefault(name, value)

    diagnostics = [(name, "required field missing")
                   for name in REQUIRED_FIELDS if name not in found]
    if diagnostics:
        return DecisionParseResult(decision=None, diagnostics=diagnostics, raw_text=raw)

    values = {name: found.get(name, 0.0) for name in DecisionVector.FIELD_ORDER}
    # the field is labeled "Dividends %", so the answer is a percentage
    values["dividend_rate"] = found.get("dividend_rate", 0.0) / 100.0
    return DecisionParseResult(decision=DecisionVector(**values), raw_text=raw)


def serialize_decision_block(decision: DecisionVector,
                             include_dividend: bool = False) -> str:
    """Canonical labeled block; parse_decision_block round-trips it exactly
    for values at cent precision."""
    def fmt(v: float) -> str:
        return str(int(v)) if float(v) == int(v) else f"{v:.12g}"

    lines = [f"{CANONICAL_LABELS[name]}: {fmt(getattr(decision, name))}"
             for name in DecisionVector.FIELD_ORDER]
    if include_dividend or decision.dividend_rate:
        lines.append(f"Dividends %: {fmt(decision.dividend_rate * 100.0)}")
    return "\n".join(lines)
