"""Regenerate the tables behind the three figures as CSV files in ./figure_data.

Equivalent to calling ``entsep scan`` three times; nothing is plotted.
"""

from pathlib import Path

from entropic_separability.cli import main

out = Path("figure_data")
out.mkdir(exist_ok=True)

# singlet mixed with |uu>: every entropy changes sign at x = 2/3
main(["scan", "--family", "singlet-polarized", "--out", str(out / "singlet_polarized.csv")])

# a|ud> + b|du> mixed with (|uu><uu| + |dd><dd|)/2, |a|^2 = 0.8
main(["scan", "--family", "psi-mixture", "--a2", "0.8", "--entropy", "tsallis",
      "--q", "2", "--q", "5", "--q", "10", "--q", "30", "--out", str(out / "psi_mixture.csv")])

# Werner state with growing q
main(["scan", "--family", "werner", "--entropy", "tsallis", "--entropy", "exp",
      "--q", "1", "--q", "5", "--q", "20", "--q", "100", "--out", str(out / "werner.csv")])

for path in sorted(out.glob("*.csv")):
    print(path, len(path.read_text().splitlines()) - 1, "rows")
