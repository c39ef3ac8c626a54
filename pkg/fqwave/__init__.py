"""fqwave - Tight wavelet frame sets over the finite field F_q^d."""

__version__ = "0.3.0"
