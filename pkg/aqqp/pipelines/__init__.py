"""Processing pipelines for AQQP analyses."""

from aqqp.pipelines.analysis_pipeline import AnalysisPipeline, EstimateResult
from aqqp.pipelines.presets import Preset, get_preset, list_presets

__all__ = ["AnalysisPipeline", "EstimateResult", "Preset", "get_preset", "list_presets"]
