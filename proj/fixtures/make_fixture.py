#!/usr/bin/env python3
"""Regenerates the bundled fixture CSVs.

The series are synthetic. Each one is pinned at three anchor quarters
(2003Q1, 2014Q3, 2017Q2) and follows a geometric path with a small
sinusoidal wiggle in between. The 2014Q3 and 2017Q2 anchors are chosen so
that the end-of-window growth rates and the 2017Q2 shares of banking total
assets equal the published figures; see README.md in this directory.

Usage: python3 fixtures/make_fixture.py   (writes next to this script)
"""

from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
import math

HERE = Path(__file__).resolve().parent
CENT = Decimal("0.01")

HEADER = "series_id,kind,programme,creditor,debtor,unit,adjustment,freq,period,value"


def cents(x):
    return Decimal(x).quantize(CENT, rounding=ROUND_HALF_UP)


def quarters(y0, q0, y1, q1):
    out = []
    y, q = y0, q0
    while (y, q) <= (y1, q1):
        out.append((y, q))
        y, q = (y + 1, 1) if q == 4 else (y, q + 1)
    return out


ALL_Q = quarters(2003, 1, 2017, 2)
BASE_I = ALL_Q.index((2014, 3))
END_I = ALL_Q.index((2017, 2))

# Share base at 2017Q2 and end-of-window loan stocks (EUR millions).
TOTAL_ASSETS_END = Decimal("31000000.00")
END = {
    "MFI": Decimal("6200000.00"),    # 20.00 %
    "IC_PF": Decimal("124000.00"),   #  0.40 %
    "FC_EXCL": Decimal("923800.00"), #  2.98 %   -> intra-financial 23.38 %
    "HH_NPISH": Decimal("5549000.00"),  # 17.90 %
    "NFC": Decimal("4234600.00"),    # 13.66 %   -> real sector 31.56 %
    "GG": Decimal("1023000.00"),
}
# Growth since 2014Q3 for the three loan series with a published figure.
GROWTH = {"MFI": Decimal("19.19"), "HH_NPISH": Decimal("5.48"), "NFC": Decimal("0.27")}

LOANS = {
    # debtor: (2003Q1, 2014Q3 or None when derived from GROWTH)
    "MFI": (Decimal("4300000.00"), None),
    "HH_NPISH": (Decimal("3900000.00"), None),
    "NFC": (Decimal("3300000.00"), None),
    "GG": (Decimal("800000.00"), Decimal("1080000.00")),
    "IC_PF": (Decimal("80000.00"), Decimal("105000.00")),
    "FC_EXCL": (Decimal("600000.00"), Decimal("880000.00")),
}

INDICATORS = {
    # id: (unit, adjustment, 2003Q1, 2014Q3, 2017Q2)
    "GDP": ("CHAIN_LINKED_VOLUME", "SWDA", Decimal("1950000.00"), Decimal("2500000.00"),
            Decimal("2734500.00")),  # +9.38 %
    "HICP": ("INDEX_2015_100", "SWDA", Decimal("80.50"), Decimal("100.00"),
             Decimal("101.44")),  # +1.44 %
    "TOTAL_ASSETS:MFI_EXCL": ("EUR_MILLIONS", "NSA", Decimal("20000000.00"),
                              Decimal("30500000.00"), TOTAL_ASSETS_END),
}


def path(start, base, end, wiggle):
    """Geometric path through the anchors; the wiggle vanishes at anchors."""
    out = []
    for i in range(len(ALL_Q)):
        if i <= BASE_I:
            a, b, s, k = float(start), float(base), i / BASE_I, 3
        else:
            a, b, s, k = float(base), float(end), (i - BASE_I) / (END_I - BASE_I), 2
        v = a * (b / a) ** s * (1.0 + wiggle * math.sin(math.pi * k * s))
        out.append(cents(v))
    out[0], out[BASE_I], out[END_I] = start, base, end
    return out


def write_quarterly():
    rows = [HEADER]
    for debtor, (start, base) in LOANS.items():
        end = END[debtor]
        if base is None:
            base = cents(end / (1 + GROWTH[debtor] / 100))
        for (y, q), v in zip(ALL_Q, path(start, base, end, 0.015)):
            rows.append(f"LOANS_MFI_EXCL_{debtor},LOANS,,MFI_EXCL_ECB_NCB,{debtor},"
                        f"EUR_MILLIONS,SWDA,Q,{y}Q{q},{v}")
    for name, (unit, adj, start, base, end) in INDICATORS.items():
        for (y, q), v in zip(ALL_Q, path(start, base, end, 0.01)):
            rows.append(f"{name},INDICATOR,,,,{unit},{adj},Q,{y}Q{q},{v}")
    (HERE / "paper_2017q2.csv").write_text("\n".join(rows) + "\n")


# APP holdings at end-June 2017 sum to 6.00 % of TOTAL_ASSETS_END.
APP = {
    # programme: (first month, first value, 2017-06 value)
    "CBPP3": ((2014, 10), Decimal("4800.00"), Decimal("225000.00")),
    "ABSPP": ((2014, 11), Decimal("370.00"), Decimal("24000.00")),
    "PSPP": ((2015, 3), Decimal("47000.00"), Decimal("1511000.00")),
    "CSPP": ((2016, 6), Decimal("10400.00"), Decimal("100000.00")),
}


def write_app():
    rows = [HEADER]
    for prog, ((y, m), first, last) in APP.items():
        months = []
        while (y, m) <= (2017, 6):
            months.append((y, m))
            y, m = (y + 1, 1) if m == 12 else (y, m + 1)
        n = len(months) - 1
        for i, (yy, mm) in enumerate(months):
            v = last if i == n else cents(first + (last - first) * Decimal(i) / Decimal(n))
            rows.append(f"APP_{prog},APP,{prog},ECB_NCB,MFI_EXCL_ECB_NCB,EUR_MILLIONS,NSA,M,"
                        f"{yy}-{mm:02d},{v}")
    (HERE / "app_holdings.csv").write_text("\n".join(rows) + "\n")


if __name__ == "__main__":
    assert sum(v for _, _, v in APP.values()) == TOTAL_ASSETS_END * Decimal("0.06")
    write_quarterly()
    write_app()
