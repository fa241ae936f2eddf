#!/usr/bin/env python3
"""Export the Wisconsin diagnostic breast cancer table (569 x 30) to CSV.

Uses the copy bundled with scikit-learn, so no download is needed.
The first line holds the feature names; labels are not written.
"""
import argparse
import csv
import sys


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out", help="output CSV path")
    args = parser.parse_args()
    try:
        from sklearn.datasets import load_breast_cancer
    except ImportError:
        print("scikit-learn is not installed", file=sys.stderr)
        return 1
    data = load_breast_cancer()
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([name.replace(" ", "_") for name in data.feature_names])
        for row in data.data:
            writer.writerow([repr(float(v)) for v in row])
    return 0


if __name__ == "__main__":
    sys.exit(main())
