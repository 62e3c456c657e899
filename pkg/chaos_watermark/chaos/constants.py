# Logistic map band where the dynamics are chaotic.
CHAOTIC_R_MIN = 3.57
CHAOTIC_R_MAX = 4.0

# Accepted by the permissive check used for GA search boxes.
PERMISSIVE_R_MIN = 0.0

DEFAULT_R = 3.9
DEFAULT_X0 = 0.5
DEFAULT_EPSILON = 0.01
