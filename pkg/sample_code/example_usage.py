#!/usr/bin/env python3
"""
Example usage of the Drinfeld Double Toolkit
"""

import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from drinfeld_double import DoubleAnalyzer, analyze  # noqa: E402
from group_core import build_group  # noqa: E402
from modular_fusion import ModularAnalyzer  # noqa: E402


def example_basic_usage():
    """Verify the Hopf structure of D(S3) and list its simple modules"""
    print("=== Basic Usage Example ===")

    analyzer = DoubleAnalyzer(use_cache=False)

    result = analyzer.verify("S3", suites=["hopf", "quasitriangular", "ybe"])
    if result['success']:
        print(f"✅ All suites pass, max deviation {result['payload']['max_deviation']:.2e}")
    else:
        print(f"❌ Verification failed: {result.get('error', result['payload'].get('suites'))}")

    irreps = analyzer.irreps("S3")['payload']
    print(f"📊 {irreps['num_labels']} irreducible modules, dimensions "
          f"{[row['dim'] for row in irreps['rows']]}")


def example_convenience_function():
    """Using the convenience function"""
    print("\n=== Convenience Function Example ===")

    result = analyze("verlinde", "q8")
    print(f"Verlinde formula matches brute force: {result['payload']['match']}")


def example_modular_data():
    """Work with the modular data directly"""
    print("\n=== Modular Data Example ===")

    analyzer = ModularAnalyzer(build_group("dihedral:4"))
    data = analyzer.modular_data()
    print(f"Twists: {[complex(round(t.real, 6), round(t.imag, 6)) for t in data.twists]}")
    print(f"First row of S: {[round(x.real, 4) for x in data.S[0]]}")


def example_nichols():
    """Degree dimensions of Nichols algebras"""
    print("\n=== Nichols Algebra Example ===")

    analyzer = DoubleAnalyzer(use_cache=False)
    for fixture in ("flip", "-flip"):
        dims = analyzer.nichols(fixture=fixture, dim=3)['payload']['degree_dims']
        print(f"{fixture:>5} on C^3: {dims}")


if __name__ == "__main__":
    example_basic_usage()
    example_convenience_function()
    example_modular_data()
    example_nichols()
