"""Exact Gromov-Witten / Gopakumar-Vafa invariants and their large-order asymptotics."""

__version__ = "0.1.0"
