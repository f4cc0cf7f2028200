from pydantic import BaseModel


class HypothesisReport(BaseModel):
    tridiagonal: bool
    zero_sum: bool
    center_negative: bool
    off_center_nonnegative: bool
    constant_term_positive: bool    # a_-1,0 > 0 or a_1,0 > 0
    has_phase_transitions: bool     # some a_i,j != 0 with j != 0

    @property
    def all_passed(self) -> bool:
        return all(self.model_dump().values())

    def failures(self):
        return [name for name, passed in self.model_dump().items() if not passed]
