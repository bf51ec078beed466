"""``render_figs <csv_dir> <out_dir> [--t3-slice F]``: render all three panels."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .panels import DEFAULT_T3_SLICE, IoError, PanelSpec, SchemaError, render

PANELS = (
    ("fig1a.csv", "d1_surface", "fig1a.png"),
    ("fig1b.csv", "d2_surface", "fig1b.png"),
    ("fig1c.csv", "sphere_scatter", "fig1c.png"),
)


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="render_figs", description=__doc__)
    parser.add_argument("csv_dir", help="directory holding fig1a.csv, fig1b.csv, fig1c.csv")
    parser.add_argument("out_dir", help="directory for the rendered images")
    parser.add_argument("--t3-slice", type=float, default=DEFAULT_T3_SLICE, dest="t3_slice")
    args = parser.parse_args(argv)

    csv_dir = Path(args.csv_dir)
    out_dir = Path(args.out_dir)
    try:
        for csv_name, kind, image_name in PANELS:
            spec = PanelSpec(
                input_csv=str(csv_dir / csv_name),
                kind=kind,
                output_image=str(out_dir / image_name),
                t3_slice=args.t3_slice,
            )
            result = render(spec)
            extra = "" if result.max_radius is None else f"  max radius = {result.max_radius:.9f}"
            print(f"render_figs: wrote {result.output_image} ({result.rows} rows){extra}")
    except (SchemaError, IoError) as exc:
        print(f"render_figs: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
