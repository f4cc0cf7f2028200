from qbd_solver.models import JacksonParams

# synthetic test cases for the two-node tandem network. Every case is stable (both traffic
# intensities below 1), keeps lambda2 != p*mu1 and has mu2 > lambda2 + p*mu1: node 2 drains faster
# than it fills even while node 1 is saturated, otherwise cyclic reduction on the level process
# diverges. These are not a reproduction of any published parameter table.
JACKSON_PRESETS = {
    'jackson1': JacksonParams(lambda1=1, lambda2=1, mu1=4, mu2=4, p=0, q=0),
    'jackson2': JacksonParams(lambda1=1, lambda2=1, mu1=4, mu2=4, p=0.5, q=0),
    'jackson3': JacksonParams(lambda1=1, lambda2=1, mu1=4, mu2=4, p=0.5, q=0.5),
    'jackson4': JacksonParams(lambda1=1, lambda2=1, mu1=4, mu2=7, p=1, q=0),
    'jackson5': JacksonParams(lambda1=1, lambda2=1, mu1=4, mu2=4, p=0, q=1),
    'jackson6': JacksonParams(lambda1=2, lambda2=0.5, mu1=4, mu2=5, p=0, q=0.5),
    'jackson7': JacksonParams(lambda1=2, lambda2=0.5, mu1=4, mu2=5, p=0.5, q=0.5),
    'jackson8': JacksonParams(lambda1=0.5, lambda2=2, mu1=5, mu2=6, p=0.5, q=0),
    'jackson9': JacksonParams(lambda1=0.5, lambda2=2, mu1=5, mu2=9, p=1, q=0),
    'jackson10': JacksonParams(lambda1=2, lambda2=0.5, mu1=4, mu2=5, p=0, q=1),
}

# constant blocks (a-1, a0, a1): x^2 - 2.5x + 1 has roots 0.5 and 2
SCALAR_PRESET = (1.0, -2.5, 1.0)
SCALAR_PRESET_NAME = 'scalar'

PRESET_NAMES = list(JACKSON_PRESETS) + [SCALAR_PRESET_NAME]
