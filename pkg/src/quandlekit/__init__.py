"""Finite and finitely presented quandles: census, colorings, associated groups and the word problem."""
from .associated_group import (GroupPresentation, abelianization_rank, act, as_free_product_check,
                               associated_group, presentation_of, psi_image)
from .errors import AxiomViolation, BoundExceeded, QuandleError
from .finite_quandle import (FiniteGroup, FiniteQuandle, PermutationGroup, canonical_form, catalog, conj,
                             coset_quandle, cyclic_group, dihedral, disjoint_union_coset, dual_op,
                             enumerate_quandles, group_from_permutations, inner_group, is_isomorphic,
                             quotient_group, symmetric_group, trivial, validate)
from .homomorphism import (Budget, Homomorphism, SeparationWitness, TraceStep, WpVerdict, count_colorings,
                           enumerate_homs, prove_equal, quotient_coset_hom, replay_trace, second_axiom_shift,
                           separate, word_problem)
from .link import (BraidWord, LinkDiagram, braid_closure, link_group, parse_braid, parse_pd, split_union,
                   unknot, wirtinger_quandle)
from .presentation import (GeneratorSymbol, GroupWord, QuandlePresentation, QuandleWord, eta, evaluate,
                           free_product, free_quandle, free_quandle_equal, normalize_left_normed,
                           parse_word, presentation, reduce)

__version__ = "0.1.0"
