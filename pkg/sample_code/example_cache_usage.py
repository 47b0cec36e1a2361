#!/usr/bin/env python3
"""
Example usage of the Drinfeld Double Toolkit with result caching.

The second run of each command is served from the sqlite cache.
"""

import os
import sys
import time

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from drinfeld_double import DoubleAnalyzer  # noqa: E402


def main():
    analyzer = DoubleAnalyzer(cache_db=os.path.join(".dgd_cache", "example.db"), cache_max_age=90, log_level=20)

    print("=== Demonstrating Cache Functionality ===\n")
    print(f"Initial cache stats: {analyzer.get_cache_stats()}\n")

    for spec in ("S3", "dihedral:4", "S3"):
        start = time.time()
        result = analyzer.fusion(spec)
        elapsed = time.time() - start
        source = "cache" if result.get("cached") else "computed"
        print(f"fusion {spec}: {source} in {elapsed:.2f}s, success={result['success']}")

    stats = analyzer.get_cache_stats()
    print(f"\nFinal cache stats: {stats['total_entries']} entries, {stats['total_uses']} uses")
    for entry in stats['top_results']:
        print(f"  {entry['group']} {entry['command']}: used {entry['uses']} times")

    print(f"\nPruned {analyzer.cleanup_cache(30)} results unused for 30 days")
    print(f"Cleared {analyzer.clear_cache('dihedral:4')} results of D4")


if __name__ == "__main__":
    main()
