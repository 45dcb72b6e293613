from fractions import Fraction

# finder modes
mainstronger = "mainstronger"
nonstar = "nonstar"
nonstarex = "nonstarex"

all_modes = [mainstronger, nonstar, nonstarex]

# edge choosers
canonical_first = "canonical-first"
seeded_uniform = "seeded-uniform"

all_choosers = [canonical_first, seeded_uniform]

# finder branches
branch_sampling = "sampling"
branch_matching = "matching"
branch_triangle = "triangle"
branch_representative = "representative"

# lower-bound events
event_a = "A"  # |G0| >= 3Ln
event_b = "B"  # Y <= Ln
event_c = "C"  # removed2 <= Ln

all_events = [event_a, event_b, event_c]

# dense sequence kinds
cycles = "cycles"
berge = "berge"

all_families = [cycles, berge]

# exact search outcomes
found = "found"
none_below_cutoff = "none_below_cutoff"
infinite = "infinite"

# sweep row status
status_ok = "ok"
status_below_threshold = "below_threshold"
status_infeasible = "infeasible"
status_exhausted = "exhausted"

# sweep instance kinds
instance_random = "random"
instance_tight = "tight"

DEFAULT_MAX_TRIALS = 64
DEFAULT_CHOOSER = canonical_first
DEFAULT_CALIBRATION_N_MAX = 10**6
DEFAULT_COLLISION_RETRIES = 200
DEFAULT_FALLBACK_T = Fraction(1, 40)
# C(n, t) above this is sampled through a binomial draw instead of enumeration
TGRAPH_ENUMERATION_LIMIT = 2_000_000

CSV_SCHEMA_VERSION = 1


MODE_HYPOTHESES = {
    mainstronger: ["alpha", "beta"],
    nonstar: ["alpha"],
    nonstarex: ["c", "L"],
}
