// Resource caps. Every potentially explosive computation checks one of these
// and raises ResourceLimit instead of running away.

#ifndef DH_CONFIG_HPP
#define DH_CONFIG_HPP

#include <cstddef>

namespace dh {

struct Limits {
    std::size_t memo_cap = 10'000'000;   // word-problem memo entries
    std::size_t max_cells = 2'000'000;   // simplices per complex / matrix cells
    std::size_t max_chambers = 100'000;  // chambers per ball
    std::size_t max_rank = 24;           // generators (subset masks fit a word)

    // DH_MAX_CELLS in the environment overrides max_cells.
    static Limits from_env();
};

} // namespace dh

#endif
