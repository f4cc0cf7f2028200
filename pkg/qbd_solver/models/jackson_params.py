from pydantic import BaseModel, Field


class JacksonParams(BaseModel):
    """
    Two-node Jackson tandem network: external arrivals lambda1, lambda2 and service rates mu1, mu2
    (1/time); a customer leaving node 1 joins node 2 with probability p, one leaving node 2 joins
    node 1 with probability q.
    """
    lambda1: float = Field(gt=0)
    lambda2: float = Field(gt=0)
    mu1: float = Field(gt=0)
    mu2: float = Field(gt=0)
    p: float = Field(ge=0, le=1)
    q: float = Field(ge=0, le=1)
