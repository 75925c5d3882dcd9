#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Planar Algebra Command Line

Entry point for the Yang-Baxter planar algebra toolkit. Parses a verb with its
flags, builds the settings, runs the command through the PlanarService and
prints the resulting report.
"""

import json
import logging
import argparse
from typing import List, Optional

from dotenv import load_dotenv

from config.settings import AppSettings
from planar_algebra.errors import PlanarAlgebraError
from planar_algebra.service import ACTIONS, PlanarService, build_command

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler(),
        logging.FileHandler("planar.log"),
    ]
)

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Yang-Baxter planar algebra toolkit")
    parser.add_argument("verb", choices=sorted(ACTIONS), help="What to compute")
    parser.add_argument("action", nargs="?", help="Sub-command of the verb")
    parser.add_argument("argument", nargs="?", help="Element, braid word, diagram file or Young diagram")
    parser.add_argument("--N", type=int, help="Root of unity parameter (q = e^{iπ/(2N+2)})")
    parser.add_argument("--boxes", type=int, default=2, help="Number of boxes m")
    parser.add_argument("--k", type=int, default=1, help="Power of the generating invertible")
    parser.add_argument("--l", type=int, default=0, help="Power of the grading generator")
    parser.add_argument("--m", type=int, help="Staircase parameter for indices")
    parser.add_argument("--depth", type=int, help="Lattice depth")
    parser.add_argument("--max-cells", type=int, default=6, help="Largest diagram size in tables")
    parser.add_argument("--seed", type=int, help="Seed for randomized steps")
    parser.add_argument("--jobs", type=int, help="Worker processes for trace sweeps")
    parser.add_argument("--float", type=int, dest="float_digits", help="Digits of float columns (0 = exact only)")
    parser.add_argument("--dot", action="store_true", help="Emit DOT instead of JSON")
    parser.add_argument("--json", action="store_true", dest="as_json", help="Emit JSON instead of CSV")
    parser.add_argument(
        "--config",
        type=str,
        default=".env",
        help="Path to configuration file"
    )
    parser.add_argument(
        "--debug",
        action="store_true",
        help="Enable debug mode"
    )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)

    # Load environment variables
    load_dotenv(args.config)

    settings = AppSettings()
    logging.getLogger().setLevel(settings.get_log_level())
    if args.debug:
        logging.getLogger().setLevel(logging.DEBUG)
        logger.debug("Debug mode enabled")

    if args.seed is not None:
        settings.runtime.seed = args.seed
    if args.jobs is not None:
        settings.runtime.jobs = args.jobs
    if args.float_digits is not None:
        settings.report.float_digits = args.float_digits
    logger.info(f"{settings.app_name} v{settings.version}: {args.verb} {args.action or ''}".rstrip())

    try:
        command = build_command(
            verb=args.verb, action=args.action, argument=args.argument, N=args.N, boxes=args.boxes,
            k=args.k, l=args.l, m=args.m, depth=args.depth, max_cells=args.max_cells,
            float_digits=settings.report.float_digits, dot=args.dot, as_json=args.as_json,
        )
        report = PlanarService(settings).run(command)
        print(report.render())
        report.save(settings.report.output_dir)
    except PlanarAlgebraError as e:
        logger.error(f"{e.code}: {e}")
        print(json.dumps(e.to_dict(), ensure_ascii=False, default=str))
        return 2
    except Exception as e:
        logger.exception(f"Unexpected failure in '{args.verb}': {e}")
        return 1

    return 0 if report.ok else 1


if __name__ == "__main__":
    exit(main())
