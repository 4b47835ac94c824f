#!/usr/bin/env python3
"""
E7,3 restriction toolkit - Main Entry Point
"""

import sys

from loguru import logger

from cli import main as cli_main


def main() -> int:
    """Run the CLI; an uncaught self-check failure is logged before it propagates"""
    try:
        return cli_main()
    except KeyboardInterrupt:
        logger.info("Interrupted")
        return 130
    except ArithmeticError as e:
        logger.error(f"Internal consistency check failed: {e}")
        raise


if __name__ == "__main__":
    sys.exit(main())
