from .jackson_params import JacksonParams
from .hypothesis_report import HypothesisReport
from .run_config import RunConfig
