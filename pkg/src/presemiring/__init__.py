"""Finitely additive, modular and probability functions on pre-semirings."""
