# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""
Script to print an overview of the twist tables shipped with twistforge.

For every table it prints the title, the number of rows and the digest of its
canonical text form. With ``--rows`` the rows of the selected tables are printed too.
"""

import argparse
import textwrap

from prettytable import PrettyTable

from twistforge.twist import TABLE_NAMES, table_digest, twist_tables
from twistforge.twist.tables import table_columns


def main():
    """Print the tables loaded by :func:`twistforge.twist.twist_tables`."""
    parser = argparse.ArgumentParser(description="List the twist tables.")
    parser.add_argument("names", nargs="*", help=f"Tables to show, from {', '.join(TABLE_NAMES)} (default: all).")
    parser.add_argument("--rows", action="store_true", default=False, help="Also print the rows of each table.")
    args = parser.parse_args()
    names = args.names or list(TABLE_NAMES)
    unknown = [name for name in names if name not in TABLE_NAMES]
    if unknown:
        parser.error(f"unknown table(s): {', '.join(unknown)}")

    tables = twist_tables()
    overview = PrettyTable(["S. No.", "Table", "Title", "Rows", "Digest"])
    overview.title = "Twist tables"
    overview.align["Title"] = "l"
    overview.hrules = 1

    # set max width for text wrapping
    max_width = 50

    for index, name in enumerate(names):
        _, rows = table_columns(name)
        title = textwrap.fill(tables.raw[name]["meta"].get("title", name), max_width)
        overview.add_row([index + 1, name, title, len(rows), table_digest(name)[:16]])
    print(overview)

    if args.rows:
        for name in names:
            header, rows = table_columns(name)
            table = PrettyTable(list(header))
            table.title = name
            table.align = "l"
            for row in rows:
                table.add_row([textwrap.fill(cell, max_width) for cell in row])
            print(table)


if __name__ == "__main__":
    main()
