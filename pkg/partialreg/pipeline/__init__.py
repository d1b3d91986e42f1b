from partialreg.pipeline.pipeline import run_decomposition

__all__ = ["run_decomposition"]
