"""Finite groups as Cayley tables: subgroup lattices, P-subnormal chains,
widely supersoluble classification and formation residuals."""

from .chains import (ChainWitness, is_p_subnormal, is_subnormal, mutually_sn_permutable,
                     p_subnormal_witness)
from .classify import (ClassificationReport, Formation, classification_report,
                       has_supersoluble_sylow_tower, in_formation, is_siding, p_predicate,
                       primitive_decomposition)
from .corpus import (FactorizationRecord, PaperGroupId, corpus_generate, factorization_scan,
                     paper_group)
from .errors import *  # noqa: F401,F403
from .group import (ActionSpec, GroupTable, Permutation, direct_product, from_cayley_table,
                    from_permutation_generators, is_isomorphic, named_group, quotient_group,
                    semidirect_product)
from .lattice import (LatticeCache, Subgroup, all_subgroups, characteristic_subgroup,
                      complex_product, is_normal, relative_subgroup, select_subgroups,
                      subgroup_generated, sylow)
from .residuals import ResidualResult, residual, theorem1_identity_check

__version__ = "0.1.0"
