#pragma once

namespace qmono {

/// Enumeration caps. Exceeding one is a ResourceLimitError, never a silent
/// truncation.
struct Caps {
    int max_derangement_length = 8; // length of μ when enumerating C_μ
    int max_permutation_n = 8;      // S_n sums in the power-sum oracle
    int max_symmetrized_n = 5;      // S_n symmetrizations in rational identities
    int max_subset_length = 6;      // P_μ has 2^l − 1 factors
    int max_operator_N = 3;         // alphabet size for the difference operator
    int max_partial_fraction_N = 6; // alphabet size for the A_i sums
};

} // namespace qmono
