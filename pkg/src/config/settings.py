import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv(override=True)


class Settings:

    PROJECT_NAME = os.getenv("PROJECT_NAME", "3-sort NFA toolkit")

    # logging
    LOG_FILE = os.getenv("LOG_FILE", "grammar.log")
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

    # automata / solving
    PATH_BUDGET = int(os.getenv("PATH_BUDGET", "100000"))
    SOLVE_TIMEOUT = float(os.getenv("SOLVE_TIMEOUT", "900"))
    SOLVER_BACKEND = os.getenv("SOLVER_BACKEND", "cdcl")
    SAT_SOLVER_PATH = os.getenv("SAT_SOLVER_PATH")
    SAT_SOLVER_ARGS = os.getenv("SAT_SOLVER_ARGS", "")

    # splitting
    ILS_MAX_ITERATIONS = int(os.getenv("ILS_MAX_ITERATIONS", "500"))

    # experiments
    DATABASE_URL = os.getenv("DATABASE_URL", "sqlite:///grammar_runs.db")
    BENCH_JOBS = int(os.getenv("BENCH_JOBS", "1"))
