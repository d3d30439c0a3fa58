"""coverforge – exact Gröbner bases, syzygies and cover-homomorphism relations over QQ."""

__version__ = "0.1.0"
