from zmlp.utils.comb_cache import CombCache

__all__ = ["CombCache"]
