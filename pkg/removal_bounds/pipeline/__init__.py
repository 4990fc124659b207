from removal_bounds.pipeline.settings import PipelineConfig, PipelineResult
from removal_bounds.pipeline.common import StreamedClass, assemble, certify_corner_set, stream_color_extraction
from removal_bounds.pipeline.box import run_box_pipeline
from removal_bounds.pipeline.ball import TrimOutcome, run_ball_pipeline, trim_to_size
from removal_bounds.pipeline.abstract import TranslateScan, abstract_base_set, run_abstract_pipeline, scan_translates
from removal_bounds.pipeline.sweep import SWEEP_COLUMNS, SweepRow, SweepTable, run_pipeline, sweep, sweep_cells

__all__ = ['PipelineConfig', 'PipelineResult', 'StreamedClass', 'assemble', 'certify_corner_set',
           'stream_color_extraction', 'run_box_pipeline', 'TrimOutcome', 'run_ball_pipeline', 'trim_to_size',
           'TranslateScan', 'abstract_base_set', 'run_abstract_pipeline', 'scan_translates', 'SWEEP_COLUMNS',
           'SweepRow', 'SweepTable', 'run_pipeline', 'sweep', 'sweep_cells']
