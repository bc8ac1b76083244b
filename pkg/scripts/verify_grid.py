"""Run the CLI verification over the standard grids and summarize exit codes.

    python scripts/verify_grid.py
"""
import sys

from zalcman.cli import main as cli

GRIDS = [
    ["--class", "coc", "--lambda", "2,3,5,10", "--pairs", "2:2,2:3,3:3,3:4"],
    ["--class", "coc", "--lambda", "0.5,1,1.5,2", "--n", "2,3"],
    ["--class", "R", "--beta", "0", "--lambda", "threshold,2*threshold", "--pairs", "2:2,2:3"],
    ["--class", "R", "--beta", "0.25", "--lambda", "threshold,2*threshold", "--pairs", "2:2,2:3"],
    ["--class", "R", "--beta", "0.5", "--lambda", "threshold,2*threshold,1", "--pairs", "2:2,2:3"],
    ["--class", "H", "--profile", "hurwitz", "--n", "2,3,4", "--lambda", "0.5,tie,2"],
    ["--class", "H", "--profile", "ucv", "--n", "2,3", "--lambda", "0.5,tie,2*tie"],
    ["--class", "H", "--profile", "spiral", "--nu", "0.785398", "--n", "2,3", "--lambda", "0.5,tie"],
]


if __name__ == "__main__":
    codes = []
    for args in GRIDS:
        print("$ zalcman verify " + " ".join(args))
        codes.append(cli(["verify", *args]))
    print("exit codes:", codes)
    sys.exit(max(codes))
