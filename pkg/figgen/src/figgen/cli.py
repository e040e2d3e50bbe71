import argparse
import sys
from typing import Optional, Sequence

from figgen.io import ScanFileError
from figgen.render import render_f_scan, render_scaling

_COMMANDS = {
    "f-scan": render_f_scan,
    "scaling": render_scaling,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="figgen", description="render figures from scan CSV files")
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("infile")
    parser.add_argument("outfile")
    args = parser.parse_args(argv)
    try:
        _COMMANDS[args.command](args.infile, args.outfile)
    except ScanFileError as exc:
        print(f"figgen: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
