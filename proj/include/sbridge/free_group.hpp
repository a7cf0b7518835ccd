#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sbridge/braid.hpp"

namespace sbridge::braid {

// Free group words: letter k > 0 is generator k, -k its inverse.
using FreeWord = std::vector<int>;

FreeWord free_reduce(FreeWord w);
FreeWord free_inverse(const FreeWord& w);
FreeWord free_concat(const FreeWord& a, const FreeWord& b);

// Artin's (faithful) action of B_width on the free group of rank width.
// Returns the images of generators 1..width under the automorphism of the
// word; two braid words are equal in B_width iff the images agree.
std::vector<FreeWord> artin_images(const BraidWord& word);
bool braid_equal(const BraidWord& a, const BraidWord& b);

// The caps (1,2),(3,4),... bound a trivial tangle whose complement has free
// fundamental group on t_1..t_n; the meridian a_{2k-1} maps to t_k and a_{2k}
// to t_k^-1. Returns the images of a_1..a_width after pushing through the
// word, i.e. what the capped braid looks like from below.
std::vector<FreeWord> tangle_images(const BraidWord& word);

// True iff caps * word is the same tangle as the caps alone, so the word can
// be dropped from the top of any plat (odd letters, cup exchanges, a cap
// dragged around a leg, ...). Needs an even width.
bool preserves_caps(const BraidWord& word);

// Searches for a braid d on strings 2..width with preserves_caps(word * d).
// Then the plat on `word` equals the plat on d^-1, whose first string is
// untouched. Best-first on the total length of the tangle images, at most
// `budget` expansions.
std::optional<std::vector<int>> untangle_caps(const BraidWord& word,
                                              std::size_t budget);

}  // namespace sbridge::braid
