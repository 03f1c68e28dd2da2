"""Exact computations for exact zero divisors and Eisenbud operators."""
