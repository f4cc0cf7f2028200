from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from app_config import settings


class RunConfig(BaseModel):
    presets: List[str] = []
    params_file: Optional[Path] = None
    matrix_files: Optional[List[Path]] = None
    tol: float = Field(default=settings.CR_TOL, gt=0, le=1e-2)
    max_iter: int = Field(default=settings.CR_MAX_ITER, ge=1)
    right: bool = False
    output: Optional[Path] = None
    emit_solution: bool = False
    solution_dir: Path = Path('.')

    @model_validator(mode='after')
    def check_single_source(self):
        sources = [len(self.presets) > 0, self.params_file is not None, self.matrix_files is not None]
        if sum(sources) != 1:
            raise ValueError("exactly one of presets, params_file or matrix_files must be given")
        if self.matrix_files is not None and len(self.matrix_files) != 3:
            raise ValueError(f"matrix_files needs the three blocks A-1, A0, A1, got {len(self.matrix_files)} files")
        return self
