from model_utils import Choices

DECISIONS = Choices(
    ("confirmed", "Ownership confirmed"),
    ("rejected", "Ownership rejected"),
    ("inconclusive", "Inconclusive"),
)

# Search box
R_RANGE = (3.57, 4.0)
X0_RANGE = (0.01, 0.99)
EPSILON_RANGE = (0.001, 0.05)

# Fitness weighting
W_CORR = 0.03
W_MSE = 0.97

# Search hyperparameters
POPULATION = 200
GENERATIONS = 300
TOURNAMENT_SIZE = 5
ALPHA_RANGE = (0.3, 0.7)
MUTATION_PROBABILITY = 0.3
MUTATION_SCALE = (0.02, 0.02, 0.002)
ELITE_COUNT = 4
IMPROVEMENT_THRESHOLD = 1e-12
PATIENCE = 40
TARGET_LENGTH = 4096
WINDOW_SCHEDULE = (4, 8, 16, 32)

# Ownership decision
TOLERANCE_R = 0.05
TOLERANCE_X0 = 0.05
TOLERANCE_EPSILON = 0.005
REJECTION_FACTOR = 2.0
