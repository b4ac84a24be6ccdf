from . import __version__ as app_version

app_name = "hypchroma"
app_title = "Hyperbolic Chromatic Bounds"
app_publisher = "hypchroma contributors"
app_description = "Constructive bounds for chromatic numbers of hyperbolic surfaces"
app_license = "MIT"

# Numeric tolerances
# ------------------

# drift allowed on x0^2 - x1^2 - x2^2 = 1
hyperboloid_tol = 1e-12
# dist(p, point_at(p, theta, r)) versus r
roundtrip_tol = 1e-10
# endpoint mismatch of a developed shared side
develop_tol = 1e-10
# closed forms against their defining relations
formula_tol = 1e-12
# closed forms against kernel constructions
oracle_tol = 1e-9

# cosh overflow policy
max_distance = 50.0

# Net construction
# ----------------

net_dart_failure_streak = 5000
net_coverage_samples = 10_000
validation_shard_size = 10_000

# Colorings
# ---------

exact_chromatic_limit = 40
# "natural" or "dsatur"
default_color_order = "dsatur"

# Glued surfaces
# --------------

certify_default_depth = 4
# sinh(t/6) for holed triangle blocks
default_hole_sinh = 0.25

# Collar slicing
# --------------

slicer_d_prime_factor = 1 - 1e-6

# Rotation systems
# ----------------

search_default_budget = 200_000
shipped_blueprints = ["k4", "k7", "k19"]

# Concurrency
# -----------

threads_env_var = "HYPCHROMA_THREADS"
