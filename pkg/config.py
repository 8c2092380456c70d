import os

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Config:
    # Brute-force bound for verify_theorem callers that pass none; the verify command uses --brute
    BRUTE_MAX = 13
    # Hard ceiling for brute force; n = 14 already means ~5.7e5 candidates
    BRUTE_MAX_LIMIT = 14
    BRUTE_PREFILTER = 'star'  # star, none

    # The only setting read from the environment
    WORKERS = int(os.environ.get('KNN_WORKERS', '1'))

    # Structural isomorphism cross-checks run up to this n
    ISOMORPHISM_BUDGET = 34
    # Above this n records carry formula invariants instead of a built flag map
    DERIVE_MAX = 64

    LOG_LEVEL = 'WARNING'
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    JSON_INDENT = 2
