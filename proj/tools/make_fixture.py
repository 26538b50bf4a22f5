#!/usr/bin/env python3
"""Generates the bundled synthetic 9-country x 20-year fixture panel.

Deterministic (fixed RNG seed); rerunning reproduces data/fixture_panel.csv
byte for byte.
"""

import numpy as np

YEARS = list(range(2005, 2025))

# iso3, name, pi_mean, pi_vol, g_mean, u_mean, m3gdp_start, m3gdp_drift, gdppc0
COUNTRIES = [
    ("GEO", "Georgia", 5.0, 3.0, 5.0, 15.0, 30.0, 1.2, 1800.0),
    ("USA", "United States", 2.5, 1.5, 2.2, 6.0, 85.0, 0.4, 44000.0),
    ("CHN", "China", 2.5, 1.8, 8.0, 4.5, 150.0, 2.0, 1750.0),
    ("RUS", "Russian Federation", 9.0, 4.0, 2.0, 6.5, 35.0, 1.5, 5300.0),
    ("ARM", "Armenia", 4.0, 3.0, 5.5, 17.0, 25.0, 1.0, 1600.0),
    ("AZE", "Azerbaijan", 6.0, 4.5, 4.5, 5.5, 28.0, 0.8, 1600.0),
    ("TUR", "Turkiye", 15.0, 12.0, 4.8, 10.5, 50.0, 0.9, 7400.0),
    ("UKR", "Ukraine", 10.0, 8.0, 1.5, 8.5, 40.0, 0.6, 1800.0),
    ("ROU", "Romania", 4.5, 2.5, 3.5, 6.0, 35.0, 0.7, 4600.0),
]

# Gini coverage: ARM has none, AZE too few to fit, others sparse but usable.
GINI_YEARS = {
    "GEO": [y for y in YEARS if y not in (2008, 2013, 2020)],
    "USA": [y for y in YEARS if y % 2 == 1 or y >= 2014],
    "CHN": [y for y in YEARS if y not in (2006, 2010, 2017)],
    "RUS": YEARS,
    "ARM": [],
    "AZE": [2005, 2008, 2011, 2014, 2019],
    "TUR": [y for y in YEARS if y != 2012],
    "UKR": [y for y in YEARS if y not in (2014, 2015, 2022)],
    "ROU": YEARS,
}

# Countries reporting broad money growth directly vs only a level series.
GROWTH_DIRECT = {"USA", "CHN", "TUR", "ROU"}


def main():
    rng = np.random.default_rng(20240817)
    rows = []

    def add(iso, name, year, code, value):
        rows.append((iso, name, year, code, value))

    for iso, name, pim, piv, gm, um, m3s, m3d, gdppc0 in COUNTRIES:
        n = len(YEARS)
        pi = np.empty(n)
        pi[0] = pim + piv * rng.standard_normal()
        for t in range(1, n):
            pi[t] = pim + 0.6 * (pi[t - 1] - pim) + piv * rng.standard_normal()
        g = gm + 1.8 * rng.standard_normal(n)
        if iso == "UKR":
            g[YEARS.index(2009)] = -15.0
            g[YEARS.index(2022)] = -29.0
        u = np.clip(um + np.cumsum(0.5 * rng.standard_normal(n)), 2.0, 30.0)
        m3gdp = np.clip(m3s + m3d * np.arange(n) + 2.0 * rng.standard_normal(n), 5.0, None)
        gdppc = gdppc0 * np.exp(np.cumsum((g + pi * 0.3) / 100.0 + 0.01 * rng.standard_normal(n)))
        money = 100.0 * np.exp(np.cumsum((pi + g) / 100.0 + 0.02 * rng.standard_normal(n)))

        gini = 38.0 + 0.15 * pi - 0.3 * u + 2.0 * np.log(gdppc) / np.log(10) \
            + 0.8 * rng.standard_normal(n)

        for t, year in enumerate(YEARS):
            add(iso, name, year, "FP.CPI.TOTL.ZG", pi[t])
            add(iso, name, year, "NY.GDP.MKTP.KD.ZG", g[t])
            add(iso, name, year, "SL.UEM.TOTL.ZS", u[t])
            add(iso, name, year, "FM.LBL.BMNY.GD.ZS", m3gdp[t])
            add(iso, name, year, "NY.GDP.PCAP.CD", gdppc[t])
            if year in GINI_YEARS[iso]:
                add(iso, name, year, "SI.POV.GINI", gini[t])
            if iso in GROWTH_DIRECT:
                if t > 0:
                    growth = 100.0 * (money[t] / money[t - 1] - 1.0)
                    add(iso, name, year, "BROAD_MONEY_GROWTH", growth)
            else:
                add(iso, name, year, "BROAD_MONEY_LEVEL", money[t])

    rows.sort(key=lambda r: (r[0], r[3], r[2]))
    with open("data/fixture_panel.csv", "w", newline="\n") as f:
        f.write("country_iso3,country_name,year,indicator,value\n")
        for iso, name, year, code, value in rows:
            f.write(f"{iso},{name},{year},{code},{value:.10g}\n")
    print(f"wrote {len(rows)} observations")


if __name__ == "__main__":
    main()
