from partialreg.models.dataset import Dataset
from partialreg.models.decomposition import PartialDecomposition
from partialreg.models.fit import RegressionFit
from partialreg.models.pearson import PearsonScenario
from partialreg.models.simulation import SimulationResult, SimulationSpec, TruthRecord

__all__ = [
    "Dataset",
    "PartialDecomposition",
    "PearsonScenario",
    "RegressionFit",
    "SimulationResult",
    "SimulationSpec",
    "TruthRecord",
]
