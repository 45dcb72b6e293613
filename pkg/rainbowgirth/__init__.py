from .container import (
    ColorClass, ColoredGraph, ColorClassProfile, ClassPartition, RainbowCycleCertificate,
    read_colored_graph, write_colored_graph
)
from .core import classify_class, excess, partition_classes, verify_certificate
from .errors import InfeasibleHypothesisError, ParameterError, RainbowGirthError, TrialBudgetExhausted
from .exact import girth, rainbow_girth_exact, representative_girth
from .finder import RainbowFinder
from .generators import gen_random_family, gen_star_cycle, gen_tight_example
from .lower_bound import LBParams, build_lb_instance, min_rainbow_family_size
