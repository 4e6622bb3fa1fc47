"""Reference-year ("year 0") tables of the simulated retailer.

These twelve months of statements and KPIs are the anchor data set: the demand
calendar is calibrated against the unit series hidden in them, the initial
prompt reproduces them for the agent, and the calibration tests assert the
engine replays their January column to the cent.

Unit sales are implied by revenue at the effective selling price of 110 (the
inventory movements confirm it); receipts of 4,000/3,000 units reconstruct the
order stream at the 2-month lead time.
"""

from __future__ import annotations

EFFECTIVE_PRICE = 110.0

# Units sold each month (revenue / 110, confirmed by the inventory roll-forward).
UNIT_SALES = (3228, 146, 3247, 3245, 3774, 3431, 3292, 4817, 2217, 2849, 6022, 4732)

# Orders placed each month (arrive two months later; Nov/Dec orders are in
# transit at year end).
ORDER_STREAM = (4000, 4000, 4000, 4000, 4000, 4000, 3000, 3000, 3000, 3000, 3000, 3000)

# Units received each month (pipeline arrivals).
RECEIPTS = (0, 0, 4000, 4000, 4000, 4000, 4000, 4000, 3000, 3000, 3000, 3000)

GDP_GROWTH = (-3.0, -1.0, 0.0, 1.0, 2.0, 2.0, 0.0, 3.0, 4.0, 5.0, 4.0, -5.0)

INCOME_STATEMENT = {
    "revenue": (355080, 16060, 357170, 356950, 415140, 377410, 362120, 529870,
                243870, 313390, 662420, 520520),
    "materials_expense": (250960, 19080, 255420, 259045, 299850, 276970, 270085,
                          380375, 189290, 237445, 460310, 354900),
    "staff_costs": (22560, 21206.4, 19934, 18738, 17613.7, 16556.9, 15563.5,
                    14629.6, 13751.9, 12926.8, 12151.2, 11422.1),
    "depreciation": (7000,) * 12,
    "other_opex": (60262.8, 59898.2, 60155.3, 60105.2, 60111.3, 60033, 57977.7,
                   58091.3, 57794.7, 57823.5, 58108.5, 57949.1),
    "total_costs": (340783, 107185, 342509, 344888, 384575, 360560, 350626,
                    460096, 267837, 315195, 537570, 431271),
    "operating_income": (14297.2, -91124.6, 14660.7, 12061.8, 30565, 16850.2,
                         11493.9, 69774.1, -23966.6, -1805.28, 124850, 89248.8),
    "interest": (5000,) * 12,
    "profit_before_tax": (9297.2, -96124.6, 9660.7, 7061.78, 25565, 11850.2,
                          6493.86, 64774.1, -28966.6, -6805.28, 119850, 84248.8),
    "tax": (1859.44, 0, 1932.14, 1412.36, 5113, 2370.03, 1298.77, 12954.8,
            0, 0, 23970.1, 16849.8),
    "net_income": (7437.76, -96124.60, 7728.56, 5649.42, 20452.00, 9480.12,
                   5195.09, 51819.26, -28966.57, -6805.28, 95880.28, 67399.03),
}

BALANCE_SHEET = {
    "cash": (887257.76, 1148256.76, 769995.90, 730796.07, 684971.98, 700041.97,
             678615.54, 627484.37, 837280.79, 757924.13, 723820.70, 1061835.66),
    "receivables": INCOME_STATEMENT["revenue"],
    "inventory_value": (124040, 113820, 166530, 219380, 235200, 275030, 324590,
                        267400, 322210, 332780, 121240, 0),
    "accumulated_depr_buildings": tuple(2000 * m for m in range(1, 13)),
    "accumulated_depr_equipment": tuple(5000 * m for m in range(1, 13)),
    "total_assets": (2959377.76, 2864136.76, 2872695.90, 2879126.07, 2900311.98,
                     2910481.97, 2916325.54, 2968754.37, 2940360.79, 2934094.13,
                     3030480.70, 3098355.66),
    "provisions": (1940.00, 2823.60, 3654.18, 4434.93, 5168.84, 5858.71, 6507.18,
                   7116.75, 7689.75, 8228.36, 8734.66, 9210.58),
    "retained_earnings": (7437.76, -88686.84, -80958.28, -75308.86, -54856.86,
                          -45376.74, -40181.65, 11637.61, -17328.96, -24134.23,
                          71746.04, 139145.08),
    "total_equity": (2855437.76, 2759313.16, 2767041.72, 2772691.14, 2793143.14,
                     2802623.26, 2807818.35, 2859637.61, 2830671.04, 2823865.77,
                     2919746.04, 2987145.08),
}

CASH_FLOW = {
    "net_income": INCOME_STATEMENT["net_income"],
    "depreciation_addback": (7000,) * 12,
    "inventory_change": (-225960, -10220, 52710, 52850, 15820, 39830, 49560,
                         -57190, 54810, 10570, -211540, -121240),
    "provisions_change": (940.00, 883.60, 830.58, 780.75, 733.90, 689.87, 648.48,
                          609.57, 572.99, 538.62, 506.30, 475.92),
    "receivables_change": (355080, -339020, 341110, -220, 58190, -37730, -15290,
                           167750, -286000, 69520, 349030, -141900),
    "net_cash_change": (-113742.24, 260999.00, -378260.86, -39199.83, -45824.10,
                        15069.99, -21426.43, -51131.17, 209796.42, -79356.66,
                        -34103.43, 338014.95),
    "cash_begin": (1001000, 887257.76, 1148256.76, 769995.90, 730796.07,
                   684971.98, 700041.97, 678615.54, 627484.37, 837280.79,
                   757924.13, 723820.70),
    "cash_end": BALANCE_SHEET["cash"],
}

KPI_ROWS = {
    "roi_pct": (0.26, -3.42, 0.28, 0.20, 0.73, 0.34, 0.19, 1.83, -1.02, -0.24,
                3.34, 2.28),
    "roa_pct": (0.25, -3.30, 0.27, 0.20, 0.71, 0.33, 0.18, 1.76, -0.98, -0.23,
                3.21, 2.20),
    "leverage_pct": (3.64, 3.73, 3.82, 3.84, 3.85, 3.86, 3.87, 3.85, 3.86, 3.90,
                     3.86, 3.77),
    "gross_margin": (0.06, -5.34, 0.06, 0.05, 0.08, 0.06, 0.04, 0.14, -0.08,
                     0.01, 0.19, 0.18),
    "share_price": (94.05, 56.43, 69.52, 78.69, 80.92, 84.11, 86.37, 67.10,
                    40.26, 70.85, 42.51, 75.98),
    "sales_forecast_error_pct": (100.0,) * 12,
    "profit_forecast_error_pct": (100.0,) * 12,
    "market_share": (0.44, 0.13, 0.45, 0.45, 0.45, 0.45, 0.45, 0.46, 0.42, 0.44,
                     0.47, 0.30),
    "total_staff": (9.40, 8.84, 8.31, 7.81, 7.34, 6.90, 6.48, 6.10, 5.73, 5.39,
                    5.06, 4.76),
    "worker_wages": (18800.00, 17672.00, 16611.68, 15614.98, 14678.08, 13797.40,
                     12969.55, 12191.38, 11459.90, 10772.30, 10125.96, 9518.41),
    "sa_wages": (3760.00, 3534.40, 3322.34, 3123.00, 2935.62, 2759.48, 2593.91,
                 2438.28, 2291.98, 2154.46, 2025.19, 1903.68),
    "productivity": (9.90, 9.80, 9.70, 9.61, 9.51, 9.41, 9.32, 9.23, 9.14, 9.04,
                     8.95, 8.86),
    "capacity_utilization_pct": (24.78, 1.20, 28.78, 30.91, 38.62, 37.73, 38.90,
                                 61.17, 30.25, 41.78, 94.89, 80.12),
    "carbon_tons": (42.28, 11.46, 42.47, 42.45, 47.74, 44.31, 42.92, 58.17,
                    32.17, 38.49, 70.22, 57.32),
}

# Opening balance sheet implied by the January cash-flow and balance columns.
OPENING = {
    "cash": 1_001_000.0,
    "receivables": 0.0,
    "inventory_units": 5000,
    "provisions": 1000.0,
    "long_term_debt": 100_000.0,
    "retained_earnings": 0.0,
    "total_equity": 2_848_000.0,
    "total_assets": 2_951_000.0,
}

MEAN_MONTHLY_REVENUE = sum(INCOME_STATEMENT["revenue"]) / 12.0   # 375,833.33


def equity_begin(month: int) -> float:
    """Total equity at the start of a month (1..12)."""
    return OPENING["total_equity"] if month == 1 else BALANCE_SHEET["total_equity"][month - 2]


def assets_begin(month: int) -> float:
    return OPENING["total_assets"] if month == 1 else BALANCE_SHEET["total_assets"][month - 2]


def total_liabilities(month: int) -> float:
    """Payables + debt + provisions at the end of a month (1..12)."""
    return 2000.0 + 100_000.0 + BALANCE_SHEET["provisions"][month - 1]
